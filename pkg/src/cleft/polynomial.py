"""Sparse multivariate polynomials over the prime field F_p.

A polynomial keeps an ordered tuple of variable names and a dict from
exponent tuples to coefficients in ``range(1, p)``.  Polynomials with
different variable tuples are aligned to the union on the fly, so callers
rarely have to think about it; inside a ring every element shares the same
tuple and alignment is free.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .errors import InvalidPrime, NotDivisible, ParseError, ZeroDivisor


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidPrime(f"{p!r} is not a prime")
    return p


def _order_key(exps):
    # graded lex: total degree first, then lex on the declared variable order
    return (sum(exps), exps)


@lru_cache(maxsize=4096)
def _index_map(src: tuple, dst: tuple) -> tuple:
    return tuple(dst.index(v) if v in dst else -1 for v in src)


def merge_vars(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    return a + tuple(v for v in b if v not in a)


class Poly:
    __slots__ = ("vars", "terms", "p")

    def __init__(self, vars, terms, p):
        self.vars = tuple(vars)
        self.p = p
        self.terms = {e: c % p for e, c in terms.items() if c % p}

    @classmethod
    def _raw(cls, vars, terms, p):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj.p = p
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, vars, p):
        return cls._raw(tuple(vars), {}, p)

    @classmethod
    def const(cls, c, vars, p):
        vars = tuple(vars)
        c %= p
        return cls._raw(vars, {(0,) * len(vars): c} if c else {}, p)

    @classmethod
    def var(cls, name, vars, p, exp=1):
        vars = tuple(vars)
        if name not in vars:
            raise KeyError(name)
        e = [0] * len(vars)
        e[vars.index(name)] = exp
        return cls._raw(vars, {tuple(e): 1}, p)

    # -- structure --------------------------------------------------------
    def align(self, vars) -> "Poly":
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = _index_map(self.vars, vars)
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in zip(idx, e):
                if i < 0:
                    if k:
                        raise ValueError(f"variable missing from {vars} is used")
                    continue
                ne[i] = k
            out[tuple(ne)] = c
        return Poly._raw(vars, out, self.p)

    def rename(self, mapping: dict, vars=None) -> "Poly":
        """Rename variables (names absent from ``mapping`` are kept)."""
        renamed = tuple(mapping.get(v, v) for v in self.vars)
        poly = Poly._raw(renamed, self.terms, self.p)
        return poly.align(vars) if vars is not None else poly

    def used_vars(self) -> tuple:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def degree_in(self, name) -> int:
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> int:
        for e, c in self.terms.items():
            if not any(e):
                return c
        return 0

    def leading(self):
        e = max(self.terms, key=_order_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError("characteristic mismatch")
            if other.vars == self.vars:
                return self, other
            vars = merge_vars(self.vars, other.vars)
            return self.align(vars), other.align(vars)
        if isinstance(other, int):
            return self, Poly.const(other, self.vars, self.p)
        return NotImplemented

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        p = self.p
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(a.vars, out, p)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Poly._raw(self.vars, {e: p - c for e, c in self.terms.items()}, p)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.p
            if not c:
                return Poly.zero(self.vars, self.p)
            return Poly._raw(self.vars, {e: v * c % self.p for e, v in self.terms.items()}, self.p)
        pair = self._coerce(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b = pair
        p = self.p
        out: dict = {}
        bt = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bt:
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = (out.get(e, 0) + ca * cb) % p
        return Poly._raw(a.vars, {e: c for e, c in out.items() if c}, p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1, self.vars, self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other, self.vars, self.p)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.p != other.p:
            return False
        if self.vars != other.vars:
            a, b = self._coerce(other)
            return a.terms == b.terms
        return self.terms == other.terms

    def __hash__(self):
        # variable-order independent
        items = []
        for e, c in self.terms.items():
            items.append((tuple(sorted((v, k) for v, k in zip(self.vars, e) if k)), c))
        return hash((self.p, frozenset(items)))

    def scale(self, c: int) -> "Poly":
        return self * c

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, p={self.p})"


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        factors = []
        for v, k in zip(f.vars, e):
            if k == 1:
                factors.append(v)
            elif k > 1:
                factors.append(f"{v}^{k}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)


def exact_divide(f: Poly, g: Poly) -> Poly:
    """Return q with f = q*g, or raise NotDivisible.

    Division by leading terms in graded-lex order; in a polynomial ring over
    a field every leading term of f must be divisible by that of g whenever
    g divides f, so the first failure is conclusive.
    """
    if g.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    f, g = f._coerce(g)
    p = f.p
    if f.is_zero():
        return Poly.zero(f.vars, p)
    lg, cg = g.leading()
    inv = pow(cg, p - 2, p)
    rest = [(e, c) for e, c in g.terms.items() if e != lg]
    # cheap degree screen
    for i in range(len(f.vars)):
        if lg[i] > max(e[i] for e in f.terms):
            raise NotDivisible(f"{format_poly(f)} / {format_poly(g)}")
    r = dict(f.terms)
    q = {}
    while r:
        lt = max(r, key=_order_key)
        c = r.pop(lt)
        m = tuple(a - b for a, b in zip(lt, lg))
        if any(k < 0 for k in m):
            raise NotDivisible(f"{format_poly(f)} / {format_poly(g)}")
        qc = c * inv % p
        q[m] = qc
        for e, gc in rest:
            t = tuple(a + b for a, b in zip(m, e))
            v = (r.get(t, 0) - qc * gc) % p
            if v:
                r[t] = v
            else:
                r.pop(t, None)
    return Poly._raw(f.vars, q, p)


def divides(g: Poly, f: Poly) -> bool:
    try:
        exact_divide(f, g)
    except NotDivisible:
        return False
    return True


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*'*(?:\|\d+)?'*)|(.))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot tokenize {text!r} at {pos}")
        pos = m.end()
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif op is not None and not op.isspace():
            if op not in "+-*^()":
                raise ParseError(f"unexpected character {op!r} in {text!r}")
            out.append(("op", op))
    return out


def scan_names(text: str) -> list:
    seen = []
    for kind, val in _tokenize(text):
        if kind == "name" and val not in seen:
            seen.append(val)
    return seen


def parse_poly(text: str, p: int, vars=None) -> Poly:
    """Parse the canonical text syntax (``2*X_1^2*X_T + 1``), also accepting
    ``-`` and parentheses."""
    tokens = _tokenize(text)
    if vars is None:
        vars = tuple(scan_names(text))
    vars = tuple(vars)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = factor()
        while peek() == ("op", "*"):
            take()
            val = val * factor()
        return val

    def factor():
        if peek() == ("op", "-"):
            take()
            return -factor()
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, k = take()
            if kind != "num":
                raise ParseError(f"exponent must be an integer in {text!r}")
            base = base ** k
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return Poly.const(val, vars, p)
        if kind == "name":
            if val not in vars:
                raise ParseError(f"unknown variable {val!r}")
            return Poly.var(val, vars, p)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {text!r}")
            return inner
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    if not tokens:
        raise ParseError("empty expression")
    result = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return result
