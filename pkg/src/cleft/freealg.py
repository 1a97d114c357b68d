"""Finite free algebras: tensor products of monogenic factors ``x^N = r(x)``
over a localized scalar ring."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DeterminantZero, NotFiniteFree, NotInvertible, NoInverseFound, ZeroElement
from .linalg import solve_linear
from .localized import Frac, LocalizedRing


@dataclass(frozen=True)
class Factor:
    """One generator ``name`` with ``name^degree = sum relation[i] name^i``.

    ``augmentation`` is the value of the generator under the counit, when
    there is one.
    """

    name: str
    degree: int
    relation: tuple
    augmentation: object = None

    def renamed(self, name):
        return Factor(name, self.degree, self.relation, self.augmentation)


def truncated(name, degree, augmentation=0):
    """``x^degree = 0``."""
    return Factor(name, degree, (0,) * degree, augmentation)


def roots_of_unity(name, degree, augmentation=1):
    """``x^degree = 1``."""
    return Factor(name, degree, (1,) + (0,) * (degree - 1), augmentation)


def pure_power(name, degree, value, augmentation=None):
    """``x^degree = value``."""
    return Factor(name, degree, (value,) + (0,) * (degree - 1), augmentation)


def scalar_ring(p):
    return LocalizedRing((), (), p)


class FiniteFreeAlgebra:
    def __init__(self, factors, scalars: LocalizedRing, name=None):
        self.scalars = scalars
        self.p = scalars.p
        fixed = []
        for f in factors:
            if f.degree < 1:
                raise NotFiniteFree(f"factor {f.name} has degree {f.degree}")
            if len(f.relation) != f.degree:
                raise NotFiniteFree(f"relation of {f.name} needs {f.degree} coefficients")
            rel = tuple(scalars.coerce(c) for c in f.relation)
            aug = None if f.augmentation is None else scalars.coerce(f.augmentation)
            fixed.append(Factor(f.name, f.degree, rel, aug))
        names = [f.name for f in fixed]
        if len(set(names)) != len(names):
            raise ValueError(f"repeated factor name in {names}")
        self.factors = tuple(fixed)
        self.names = tuple(names)
        self.degrees = tuple(f.degree for f in fixed)
        self.name = name
        self._tables = [self._power_table(f) for f in fixed]
        self._mono_cache = {}
        self._tensor_cache = {}

    # -- structure --------------------------------------------------------
    def _power_table(self, f: Factor):
        """Reduced coordinates of x^k for 0 <= k <= 2N-2, as lists with int
        entries when possible."""
        n = f.degree
        p = self.p
        rel = [_simplify(c) for c in f.relation]
        rows = []
        cur = [1] + [0] * (n - 1)
        for _ in range(2 * n - 1):
            rows.append(cur)
            top = cur[-1]
            nxt = [0] + cur[:-1]
            if not _is_zero(top):
                nxt = [_reduce(_add(a, _mul(top, r)), p) for a, r in zip(nxt, rel)]
            cur = nxt
        return rows

    def basis(self):
        return list(itertools.product(*(range(n) for n in self.degrees)))

    @property
    def rank(self) -> int:
        out = 1
        for n in self.degrees:
            out *= n
        return out

    def basis_label(self, exps) -> str:
        parts = []
        for f, k in zip(self.factors, exps):
            if k == 1:
                parts.append(f.name)
            elif k > 1:
                parts.append(f"{f.name}{k}")
        return "".join(parts) if parts else "1"

    def has_augmentation(self) -> bool:
        return all(f.augmentation is not None for f in self.factors)

    def signature(self):
        return (self.names, self.degrees,
                tuple(tuple(str(c) for c in f.relation) for f in self.factors),
                self.scalars.signature())

    def same_as(self, other) -> bool:
        return self is other or (isinstance(other, FiniteFreeAlgebra)
                                 and self.signature() == other.signature())

    def __repr__(self):
        rels = ", ".join(f"{f.name}^{f.degree}={_relation_text(f)}" for f in self.factors)
        return f"{self.scalars!r}[{rels}]"

    # -- elements ---------------------------------------------------------
    def element(self, coeffs) -> "FreeElement":
        out = {}
        for e, c in coeffs.items():
            c = self.scalars.coerce(c)
            if not c.is_zero():
                out[tuple(e)] = c
        return FreeElement(self, out)

    def zero(self):
        return FreeElement(self, {})

    def one(self):
        return self.scalar(1)

    def scalar(self, c):
        c = self.scalars.coerce(c)
        if c.is_zero():
            return self.zero()
        return FreeElement(self, {(0,) * len(self.factors): c})

    def monomial(self, exps, coeff=1):
        """Any exponent vector; exponents beyond the degree are reduced."""
        result = self.scalar(coeff)
        for name, k in zip(self.names, exps):
            if k:
                result = result * self.gen(name) ** k
        return result

    def gen(self, name):
        i = self.names.index(name)
        if self.degrees[i] == 1:
            return self.scalar(self.factors[i].relation[0])
        e = [0] * len(self.factors)
        e[i] = 1
        return FreeElement(self, {tuple(e): self.scalars.one()})

    def gens(self):
        return {n: self.gen(n) for n in self.names}

    def coerce(self, x) -> "FreeElement":
        if isinstance(x, FreeElement):
            if x.alg is self:
                return x
            if x.alg.names == self.names and x.alg.degrees == self.degrees:
                return self.element(x.coeffs)
            # embed a sub-tensor factor
            pos = [self.names.index(n) for n in x.alg.names]
            out = {}
            for e, c in x.coeffs.items():
                ne = [0] * len(self.names)
                for i, k in zip(pos, e):
                    ne[i] = k
                out[tuple(ne)] = c
            return self.element(out)
        return self.scalar(x)

    def _mono_mul(self, a, b):
        key = (a, b)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        acc = {(): 1}
        for table, i, j in zip(self._tables, a, b):
            row = table[i + j]
            nxt = {}
            for e, c in acc.items():
                for k, v in enumerate(row):
                    if _is_zero(v):
                        continue
                    cv = _reduce(_mul(c, v), self.p)
                    if not _is_zero(cv):
                        nxt[e + (k,)] = cv
            acc = nxt
        self._mono_cache[key] = acc
        return acc

    # -- constructions ----------------------------------------------------
    def base_change(self, scalars: LocalizedRing) -> "FiniteFreeAlgebra":
        """Same factors over a larger scalar ring (``S`` tensor this)."""
        if scalars is self.scalars:
            return self
        key = ("base", id(scalars))
        if key not in self._tensor_cache:
            self._tensor_cache[key] = (scalars, FiniteFreeAlgebra(self.factors, scalars, self.name))
        return self._tensor_cache[key][1]

    def tensor(self, other: "FiniteFreeAlgebra") -> "FiniteFreeAlgebra":
        key = ("tensor", id(other))
        if key not in self._tensor_cache:
            if not self.scalars.same_as(other.scalars):
                raise ValueError("tensor factors must share the scalar ring")
            alg = FiniteFreeAlgebra(self.factors + other.factors, self.scalars)
            self._tensor_cache[key] = (other, alg)
        return self._tensor_cache[key][1]

    def tensor_power(self, k: int) -> "FiniteFreeAlgebra":
        if k not in self._tensor_cache:
            factors = [f.renamed(f"{f.name}|{i}") for i in range(1, k + 1) for f in self.factors]
            self._tensor_cache[k] = FiniteFreeAlgebra(factors, self.scalars)
        return self._tensor_cache[k]

    def renamed(self, mapping) -> "FiniteFreeAlgebra":
        return FiniteFreeAlgebra([f.renamed(mapping.get(f.name, f.name)) for f in self.factors],
                                 self.scalars)


class FreeElement:
    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: FiniteFreeAlgebra, coeffs: dict):
        self.alg = alg
        self.coeffs = coeffs

    def _other(self, other):
        if isinstance(other, FreeElement):
            return other if other.alg is self.alg else self.alg.coerce(other)
        if isinstance(other, (int, Frac)):
            return self.alg.scalar(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in o.coeffs.items():
            if e in out:
                v = out[e] + c
                if v.is_zero():
                    del out[e]
                else:
                    out[e] = v
            else:
                out[e] = c
        return FreeElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return FreeElement(self.alg, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Frac)):
            c = self.alg.scalars.coerce(other)
            if c.is_zero():
                return self.alg.zero()
            return FreeElement(self.alg, {e: v * c for e, v in self.coeffs.items()})
        o = self._other(other)
        if o is None:
            return NotImplemented
        alg = self.alg
        out: dict = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in o.coeffs.items():
                cab = ca * cb
                for e, s in alg._mono_mul(ea, eb).items():
                    term = cab * s
                    out[e] = out[e] + term if e in out else term
        return FreeElement(alg, {e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        result = self.alg.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.invert()

    def __rtruediv__(self, other):
        return self.alg.coerce(other) * self.invert()

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        keys = set(self.coeffs) | set(o.coeffs)
        zero = self.alg.scalars.zero()
        return all(self.coeffs.get(e, zero) == o.coeffs.get(e, zero) for e in keys)

    __hash__ = None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def coefficient(self, exps) -> Frac:
        return self.coeffs.get(tuple(exps), self.alg.scalars.zero())

    def coordinates(self):
        return [self.coefficient(e) for e in self.alg.basis()]

    def augmentation(self) -> Frac:
        """Value under the factorwise augmentation (the counit on the group
        algebra or truncated coordinate ring)."""
        alg = self.alg
        if not alg.has_augmentation():
            raise ValueError("algebra has no augmentation")
        total = alg.scalars.zero()
        for e, c in self.coeffs.items():
            term = c
            for f, k in zip(alg.factors, e):
                if k:
                    term = term * f.augmentation ** k
            total = total + term
        return total

    def invert(self, kmax: int = 8) -> "FreeElement":
        if self.is_zero():
            raise ZeroElement("zero has no inverse")
        if self.alg.has_augmentation():
            try:
                return nilpotent_split_invert(self, kmax)
            except NotInvertible:
                pass
        return cramer_invert(self, kmax)

    def __str__(self):
        return format_free(self)

    def __repr__(self):
        return f"FreeElement({format_free(self)!r})"


def format_free(x: FreeElement) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for e in sorted(x.coeffs, key=lambda e: (sum(e), e), reverse=True):
        c = x.coeffs[e].normalized()
        mono = "*".join(f"{n}^{k}" if k > 1 else n
                        for n, k in zip(x.alg.names, e) if k)
        cs = str(c)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"({cs})*{mono}")
    return " + ".join(parts)


def nilpotent_split_invert(x: FreeElement, kmax: int = 8) -> FreeElement:
    """Write x = x0 + nu with x0 the augmentation scalar; then nu lies in the
    augmentation ideal, which is nilpotent, and the geometric series
    terminates.  The product is verified before returning."""
    alg = x.alg
    x0 = x.augmentation()
    try:
        inv0 = alg.scalars.invert(x0, kmax)
    except (NoInverseFound, ZeroElement) as exc:
        raise NotInvertible(f"augmentation {x0} is not a unit") from exc
    nu = x - alg.scalar(x0)
    step = -(nu * inv0)
    bound = sum(n - 1 for n in alg.degrees) + 1
    total = alg.one()
    power = alg.one()
    for _ in range(bound):
        power = power * step
        if power.is_zero():
            break
        total = total + power
    inv = total * inv0
    if not (inv * x == alg.one()):
        raise NotInvertible("augmentation ideal is not nilpotent here")
    return inv


def multiplication_matrix(x: FreeElement):
    alg = x.alg
    basis = alg.basis()
    cols = []
    for b in basis:
        prod = x * FreeElement(alg, {b: alg.scalars.one()})
        cols.append([prod.coefficient(e) for e in basis])
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def cramer_invert(x: FreeElement, kmax: int = 8) -> FreeElement:
    alg = x.alg
    basis = alg.basis()
    m = multiplication_matrix(x)
    rhs = [alg.scalars.one() if not any(e) else alg.scalars.zero() for e in basis]
    try:
        sol = solve_linear(alg.scalars, m, rhs, kmax)
    except (NotInvertible, NoInverseFound, DeterminantZero) as exc:
        raise NotInvertible(f"{x} is not invertible") from exc
    return alg.element(dict(zip(basis, sol)))


# scalar helpers: table entries are ints when possible, else Fracs

def _simplify(c: Frac):
    c = c.normalized()
    if c.is_polynomial() and c.num.is_constant():
        return c.num.constant_value()
    return c


def _reduce(v, p):
    return v % p if isinstance(v, int) else v


def _is_zero(v) -> bool:
    return v == 0 if isinstance(v, int) else v.is_zero()


def _mul(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a * b
    if isinstance(a, int):
        return b * a
    return a * b


def _add(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return a + b
    if isinstance(a, int):
        return b + a
    return a + b


def _relation_text(f: Factor) -> str:
    terms = []
    for i, c in enumerate(f.relation):
        if c.is_zero():
            continue
        cs = str(c)
        mono = "" if i == 0 else (f.name if i == 1 else f"{f.name}^{i}")
        if not mono:
            terms.append(cs)
        else:
            terms.append(mono if cs == "1" else f"({cs})*{mono}")
    return " + ".join(terms) if terms else "0"
