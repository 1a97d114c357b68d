"""Localizations F_p[vars][1/d_1, ..., 1/d_m] at designated denominators.

Elements are stored as ``num / (d_1^e_1 ... d_m^e_m)``.  Since the ambient
polynomial ring is a domain, equality is decided by cross multiplication.
"""

from __future__ import annotations

from .errors import DenominatorNotUnit, NoInverseFound, NotDivisible, ZeroElement
from .polynomial import Poly, check_prime, exact_divide, format_poly

DEFAULT_KMAX = 8


class LocalizedRing:
    """Polynomial ring over F_p in ``variables`` with designated denominators.

    ``base_variables`` are the scalar symbols (for instance ``lam``) that are
    shared, not duplicated, when the ring is tensored with itself.
    """

    def __init__(self, variables, denominators=(), p=2, base_variables=(), name=None):
        self.p = check_prime(p)
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable in {self.variables}")
        self.base_variables = tuple(v for v in self.variables if v in set(base_variables))
        dens = []
        for d in denominators:
            if not isinstance(d, Poly):
                raise TypeError("denominators must be polynomials")
            d = d.align(self.variables)
            if d.is_zero():
                raise ZeroElement("a designated denominator is zero")
            if d.is_constant():
                continue
            d = _monic(d)
            if any(d == e for e in dens):
                continue
            dens.append(d)
        self.denominators = tuple(dens)
        self.name = name
        self._pow_cache = {}
        self._tensor_cache = {}
        self._match_cache = {}
        self._inv_cache = {}

    # -- identity ---------------------------------------------------------
    def signature(self):
        return (self.p, self.variables, self.base_variables,
                tuple(format_poly(d) for d in self.denominators))

    def same_as(self, other) -> bool:
        return self is other or (isinstance(other, LocalizedRing)
                                 and self.signature() == other.signature())

    def __repr__(self):
        dens = ", ".join(f"1/({format_poly(d)})" for d in self.denominators)
        inner = ", ".join(self.variables) + (", " + dens if dens else "")
        return f"F_{self.p}[{inner}]"

    @property
    def coordinate_variables(self):
        return tuple(v for v in self.variables if v not in self.base_variables)

    # -- element constructors --------------------------------------------
    def poly(self, f) -> Poly:
        if isinstance(f, int):
            return Poly.const(f, self.variables, self.p)
        return f.align(self.variables)

    def frac(self, num, exps=None) -> "Frac":
        num = self.poly(num)
        if exps is None:
            exps = (0,) * len(self.denominators)
        return Frac(self, num, tuple(exps))

    def zero(self):
        return self.frac(0)

    def one(self):
        return self.frac(1)

    def const(self, c):
        return self.frac(c)

    def var(self, name):
        return self.frac(Poly.var(name, self.variables, self.p))

    def gens(self):
        return {v: self.var(v) for v in self.variables}

    def den_power(self, i, k) -> Poly:
        key = (i, k)
        if key not in self._pow_cache:
            self._pow_cache[key] = self.denominators[i] ** k
        return self._pow_cache[key]

    def parse(self, text):
        from .polynomial import parse_poly
        return self.frac(parse_poly(text, self.p, self.variables))

    # -- coercion ---------------------------------------------------------
    def coerce(self, x) -> "Frac":
        if isinstance(x, Frac):
            if x.ring is self:
                return x
            return self._coerce_frac(x)
        if isinstance(x, (int, Poly)):
            if isinstance(x, Poly):
                missing = set(x.used_vars()) - set(self.variables)
                if missing:
                    raise ValueError(f"variables {sorted(missing)} not in {self!r}")
            return self.frac(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def _coerce_frac(self, x: "Frac") -> "Frac":
        src = x.ring
        missing = set(x.num.used_vars()) - set(self.variables)
        if missing:
            raise ValueError(f"variables {sorted(missing)} not in {self!r}")
        key = id(src)
        if key not in self._match_cache:
            self._match_cache[key] = (src, [self._find_denominator(d) for d in src.denominators])
        matches = self._match_cache[key][1]
        out = Frac(self, self.poly(x.num), (0,) * len(self.denominators))
        exps = [0] * len(self.denominators)
        for i, (idx, e) in enumerate(zip(matches, x.exps)):
            if not e:
                continue
            if idx is None:
                # not designated here; it may still be a unit (a product of ours)
                d = src.denominators[i]
                if not set(d.used_vars()) <= set(self.variables):
                    raise DenominatorNotUnit(f"cannot embed {src!r} into {self!r}")
                try:
                    out = out * localized_invert(self.frac(d)) ** e
                except NoInverseFound as exc:
                    raise DenominatorNotUnit(
                        f"{format_poly(d)} is not a unit in {self!r}") from exc
            else:
                exps[idx] += e
        return Frac(self, out.num, tuple(a + b for a, b in zip(out.exps, exps)))

    def _find_denominator(self, d: Poly):
        if not set(d.used_vars()) <= set(self.variables):
            return None
        d = d.align(self.variables)
        for i, mine in enumerate(self.denominators):
            if mine == d:
                return i
        return None

    # -- tensor constructions ---------------------------------------------
    def tensor_power(self, k: int) -> "LocalizedRing":
        """Ring of the k-fold tensor power over the base; coordinate variable
        ``v`` of factor i is renamed ``v|i``."""
        if k in self._tensor_cache:
            return self._tensor_cache[k]
        base = self.base_variables
        coords = self.coordinate_variables
        variables = list(base)
        for i in range(1, k + 1):
            variables += [f"{v}|{i}" for v in coords]
        variables = tuple(variables)
        dens = []
        for d in self.denominators:
            if set(d.used_vars()) <= set(base):
                dens.append(d.align(variables))
            else:
                for i in range(1, k + 1):
                    dens.append(d.rename({v: f"{v}|{i}" for v in coords}, variables))
        ring = LocalizedRing(variables, dens, self.p, base, name=f"({self.name})^{k}" if self.name else None)
        self._tensor_cache[k] = ring
        return ring

    def tensor(self, other: "LocalizedRing") -> "LocalizedRing":
        """Tensor product over the shared base, for rings with disjoint coordinates."""
        key = ("tensor", id(other))
        if key in self._tensor_cache:
            return self._tensor_cache[key][1]
        if set(self.coordinate_variables) & set(other.coordinate_variables):
            raise ValueError("coordinate variables must be disjoint")
        variables = self.variables + tuple(v for v in other.variables if v not in self.variables)
        base = tuple(dict.fromkeys(self.base_variables + other.base_variables))
        dens = [d.align(variables) for d in self.denominators + other.denominators]
        ring = LocalizedRing(variables, dens, self.p, base)
        self._tensor_cache[key] = (other, ring)
        return ring

    def base_ring(self) -> "LocalizedRing":
        base = self.base_variables
        dens = [d for d in self.denominators if set(d.used_vars()) <= set(base)]
        return _cached_base(self.p, base, tuple(format_poly(d.align(base)) for d in dens),
                            tuple(d.align(base) for d in dens))

    # -- units ------------------------------------------------------------
    def invert(self, u, kmax: int = DEFAULT_KMAX) -> "Frac":
        return localized_invert(self.coerce(u), kmax)

    def is_unit(self, u, kmax: int = DEFAULT_KMAX) -> bool:
        try:
            self.invert(u, kmax)
        except (NoInverseFound, ZeroElement):
            return False
        return True


_BASE_RINGS: dict = {}


def _cached_base(p, base, dens_text, dens):
    key = (p, base, dens_text)
    if key not in _BASE_RINGS:
        _BASE_RINGS[key] = LocalizedRing(base, dens, p, base)
    return _BASE_RINGS[key]


def _monic(d: Poly) -> Poly:
    _, c = d.leading()
    if c == 1:
        return d
    return d * pow(c, d.p - 2, d.p)


class Frac:
    """An element ``num / prod(d_i^exps_i)`` of a LocalizedRing."""

    __slots__ = ("ring", "num", "exps")

    def __init__(self, ring: LocalizedRing, num: Poly, exps: tuple):
        self.ring = ring
        self.num = num
        self.exps = exps

    # -- helpers ----------------------------------------------------------
    def _other(self, other):
        if isinstance(other, Frac) and other.ring is self.ring:
            return other
        if isinstance(other, (int, Poly, Frac)):
            return self.ring.coerce(other)
        return None

    def _lift(self, exps):
        """Numerator rewritten over the (larger) denominator exponents."""
        num = self.num
        for i, (have, want) in enumerate(zip(self.exps, exps)):
            if want > have:
                num = num * self.ring.den_power(i, want - have)
        return num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not any(self.exps)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.exps == self.exps:
            return Frac(self.ring, self.num + o.num, self.exps)
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        exps = tuple(max(a, b) for a, b in zip(self.exps, o.exps))
        return Frac(self.ring, self._lift(exps) + o._lift(exps), exps)

    __radd__ = __add__

    def __neg__(self):
        return Frac(self.ring, -self.num, self.exps)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Frac(self.ring, self.num * other, self.exps)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Frac(self.ring, self.num * o.num, tuple(a + b for a, b in zip(self.exps, o.exps)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.ring.invert(self) ** (-k)
        return Frac(self.ring, self.num ** k, tuple(a * k for a in self.exps))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * self.ring.invert(o)

    def __rtruediv__(self, other):
        return self.ring.coerce(other) * self.ring.invert(self)

    def __eq__(self, other):
        if isinstance(other, Frac) and other.ring is not self.ring:
            try:
                o = self.ring.coerce(other)
            except (ValueError, DenominatorNotUnit):
                return False
        elif isinstance(other, (int, Poly, Frac)):
            o = self.ring.coerce(other)
        else:
            return NotImplemented
        if o.exps == self.exps:
            return self.num == o.num
        exps = tuple(max(a, b) for a, b in zip(self.exps, o.exps))
        return self._lift(exps) == o._lift(exps)

    __hash__ = None

    # -- normal form ------------------------------------------------------
    def normalized(self) -> "Frac":
        """Cancel designated denominators that divide the numerator."""
        if self.num.is_zero():
            return Frac(self.ring, self.num, (0,) * len(self.exps))
        num = self.num
        exps = list(self.exps)
        for i, d in enumerate(self.ring.denominators):
            while exps[i] > 0:
                try:
                    num = exact_divide(num, d)
                except NotDivisible:
                    break
                exps[i] -= 1
        return Frac(self.ring, num, tuple(exps))

    def denominator_poly(self) -> Poly:
        out = Poly.const(1, self.ring.variables, self.ring.p)
        for i, e in enumerate(self.exps):
            if e:
                out = out * self.ring.den_power(i, e)
        return out

    def used_vars(self) -> set:
        f = self.normalized()
        used = set(f.num.used_vars())
        for d, e in zip(self.ring.denominators, f.exps):
            if e:
                used |= set(d.used_vars())
        return used

    def __str__(self):
        return format_frac(self)

    def __repr__(self):
        return f"Frac({format_frac(self)!r})"


def format_frac(x: Frac, normalize: bool = True) -> str:
    if normalize:
        x = x.normalized()
    num = format_poly(x.num)
    if not any(x.exps):
        return num
    dens = []
    for d, e in zip(x.ring.denominators, x.exps):
        if e:
            s = f"({format_poly(d)})"
            dens.append(s if e == 1 else f"{s}^{e}")
    return f"({num}) / (" + "*".join(dens) + ")"


def localized_invert(u: Frac, kmax: int = DEFAULT_KMAX) -> Frac:
    """Inverse of ``u`` in its localized ring, found by bounded divisibility.

    The numerator is stripped of designated-denominator factors; if a nonzero
    constant remains the inverse is explicit.  Otherwise the remainder is
    tested against powers D^k (k <= kmax) of the product of all designated
    denominators.  Raises NoInverseFound when no witness exists up to kmax.
    """
    ring = u.ring
    if u.num.is_zero():
        raise ZeroElement("zero has no inverse")
    key = (format_poly(u.num), u.exps, kmax)
    cached = ring._inv_cache.get(key)
    if cached is not None:
        return cached
    p = ring.p
    rem = u.num
    counts = [0] * len(ring.denominators)
    for i, d in enumerate(ring.denominators):
        while True:
            try:
                rem = exact_divide(rem, d)
            except NotDivisible:
                break
            counts[i] += 1
    # u = rem * prod d^counts / prod d^exps ;  1/u = prod d^exps / (rem * prod d^counts)
    top = ring.frac(1)
    for i, e in enumerate(u.exps):
        if e:
            top = top * ring.frac(ring.den_power(i, e))
    if rem.is_constant():
        c = rem.constant_value()
        inv = Frac(ring, top.num * pow(c, p - 2, p), tuple(counts))
        inv = inv.normalized()
        ring._inv_cache[key] = inv
        return inv
    if ring.denominators:
        D = Poly.const(1, ring.variables, p)
        for d in ring.denominators:
            D = D * d
        Dk = Poly.const(1, ring.variables, p)
        for k in range(1, kmax + 1):
            Dk = Dk * D
            try:
                q = exact_divide(Dk, rem)
            except NotDivisible:
                continue
            exps = tuple(c + k for c in counts)
            inv = Frac(ring, top.num * q, exps).normalized()
            ring._inv_cache[key] = inv
            return inv
    raise NoInverseFound(f"no inverse of {format_frac(u)} found with kMax={kmax}")
