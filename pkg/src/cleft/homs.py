"""Ring homomorphisms given by the images of generators."""

from __future__ import annotations

from .errors import (DenominatorNotUnit, NoInverseFound, NotInvertible, UnboundGenerator,
                     ZeroElement, AxiomFailure)
from .freealg import FiniteFreeAlgebra
from .localized import Frac
from .polynomial import Poly


def invert_in(ring, x, kmax=8):
    """Inverse in a LocalizedRing or a FiniteFreeAlgebra."""
    if isinstance(ring, FiniteFreeAlgebra):
        return ring.coerce(x).invert(kmax)
    return ring.invert(x, kmax)


class RingHom:
    """A homomorphism determined by generator images.

    Variables of a localized source that are not assigned map to the
    variable of the same name in the target, when it has one (this is how
    base scalars such as ``lam`` pass through).  Using any other unassigned
    variable raises UnboundGenerator.  Images of designated denominators must
    be units; this is checked eagerly unless ``check=False``.

    For a finite free source, ``scalar_hom`` maps the scalar ring (default:
    coercion into the target) and the factor relations are checked.
    """

    def __init__(self, source, target, images, scalar_hom=None, check=True, kmax=8, name=None):
        self.source = source
        self.target = target
        self.kmax = kmax
        self.name = name
        self.images = {k: target.coerce(v) for k, v in images.items()}
        self.scalar_hom = scalar_hom
        self._den_inv = {}
        if isinstance(source, FiniteFreeAlgebra):
            unknown = set(self.images) - set(source.names)
            if unknown:
                raise UnboundGenerator(f"{sorted(unknown)} are not generators of the source")
            missing = [n for n in source.names if n not in self.images]
            if missing:
                raise UnboundGenerator(f"no image for {missing}")
            if check:
                self.check_relations()
        else:
            unknown = set(self.images) - set(source.variables)
            if unknown:
                raise UnboundGenerator(f"{sorted(unknown)} are not variables of the source")
            if check:
                self.check_denominators()

    # -- generator images -------------------------------------------------
    def image_of_var(self, name):
        if name in self.images:
            return self.images[name]
        target = self.target
        try:
            if isinstance(target, FiniteFreeAlgebra):
                scalars = target.scalars
                if name in scalars.variables:
                    return target.scalar(scalars.var(name))
            elif name in target.variables:
                return target.var(name)
        except KeyError:
            pass
        raise UnboundGenerator(f"no image for generator {name!r}")

    def _eval_poly(self, f: Poly):
        target = self.target
        out = target.zero()
        if f.is_zero():
            return out
        cache = {}
        names = f.vars
        for e, c in f.terms.items():
            term = None
            for name, k in zip(names, e):
                if not k:
                    continue
                key = (name, k)
                if key not in cache:
                    cache[key] = self.image_of_var(name) ** k
                term = cache[key] if term is None else term * cache[key]
            if term is None:
                out = out + target.coerce(c)
            else:
                out = out + (term * c if c != 1 else term)
        return out

    def denominator_inverse(self, i):
        if i not in self._den_inv:
            d = self.source.denominators[i]
            img = self._eval_poly(d)
            try:
                self._den_inv[i] = invert_in(self.target, img, self.kmax)
            except (NoInverseFound, NotInvertible, ZeroElement) as exc:
                raise DenominatorNotUnit(
                    f"image of {d} is not a unit in the target") from exc
        return self._den_inv[i]

    def check_denominators(self):
        for i, d in enumerate(self.source.denominators):
            try:
                self.denominator_inverse(i)
            except UnboundGenerator:
                continue

    def check_relations(self):
        src = self.source
        for f in src.factors:
            x = self.images[f.name]
            lhs = x ** f.degree
            rhs = self.target.zero()
            for i, c in enumerate(f.relation):
                if not c.is_zero():
                    rhs = rhs + self._map_scalar(c) * x ** i
            if not (lhs == rhs):
                raise AxiomFailure(f"relation of {f.name} is not respected")

    def _map_scalar(self, c):
        if self.scalar_hom is not None:
            return self.target.coerce(self.scalar_hom(c))
        return self.target.coerce(c)

    # -- evaluation -------------------------------------------------------
    def __call__(self, x):
        src = self.source
        if isinstance(src, FiniteFreeAlgebra):
            x = src.coerce(x)
            out = self.target.zero()
            for e, c in x.coeffs.items():
                term = self._map_scalar(c)
                for name, k in zip(src.names, e):
                    if k:
                        term = term * self.images[name] ** k
                out = out + term
            return out
        if not isinstance(x, Frac) or x.ring is not src:
            x = src.coerce(x)
        out = self._eval_poly(x.num)
        for i, e in enumerate(x.exps):
            if e:
                out = out * self.denominator_inverse(i) ** e
        return out

    def compose_after(self, inner: "RingHom", check=False) -> "RingHom":
        """``self o inner`` as a hom with explicit generator images."""
        src = inner.source
        images = {}
        names = src.names if isinstance(src, FiniteFreeAlgebra) else src.variables
        for n in names:
            try:
                images[n] = self(inner.image_of_var(n) if not isinstance(src, FiniteFreeAlgebra)
                                 else inner.images[n])
            except UnboundGenerator:
                continue
        scalar = None
        if isinstance(src, FiniteFreeAlgebra):
            scalar = lambda c: self(inner._map_scalar(c))  # noqa: E731
        return RingHom(src, self.target, images, scalar_hom=scalar, check=check, kmax=self.kmax)

    def __repr__(self):
        imgs = ", ".join(f"{k} -> {v}" for k, v in self.images.items())
        return f"RingHom({imgs})"


def identity(ring):
    if isinstance(ring, FiniteFreeAlgebra):
        return RingHom(ring, ring, ring.gens(), check=False)
    return RingHom(ring, ring, {}, check=False)


def compose(outer: RingHom, inner: RingHom, check=False) -> RingHom:
    return outer.compose_after(inner, check=check)


def homs_agree(f: RingHom, g: RingHom, generators=None):
    """Compare on generators; returns the list of disagreeing generator names."""
    src = f.source
    if generators is None:
        generators = src.names if isinstance(src, FiniteFreeAlgebra) else src.variables
    bad = []
    for n in generators:
        x = src.gen(n) if isinstance(src, FiniteFreeAlgebra) else src.var(n)
        if not (f(x) == g(x)):
            bad.append(n)
    return bad
