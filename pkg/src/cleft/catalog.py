"""Named group schemes over a base ring, Frobenius maps, the comparison maps
between the deformed and multiplicative groups, and the exact-sequence
proxies."""

from __future__ import annotations

from dataclasses import dataclass, field

from .checks import compare, failed, verdict
from .errors import UnsupportedScheme
from .freealg import FiniteFreeAlgebra, roots_of_unity, truncated
from .homs import RingHom
from .hopf import HopfPresentation, check_hopf_axioms, check_hopf_hom
from .localized import Frac, LocalizedRing
from .polynomial import check_prime

LAMBDA = "lam"
TAGS = ("Ga", "Gm", "Mu", "GLambda", "GammaLambda")


@dataclass
class Base:
    """Scalar ring together with the chosen deformation parameter."""

    ring: LocalizedRing
    lam: Frac
    label: str

    @property
    def p(self):
        return self.ring.p


def base_ring(p: int, lam="sym") -> Base:
    """``lam="sym"``: F_p[lam] with lam a variable; an int: F_p with that value."""
    check_prime(p)
    if lam in ("sym", None):
        ring = LocalizedRing((LAMBDA,), (), p, (LAMBDA,), name=f"F_{p}[{LAMBDA}]")
        return Base(ring, ring.var(LAMBDA), "sym")
    ring = LocalizedRing((), (), p, (), name=f"F_{p}")
    return Base(ring, ring.const(int(lam)), str(int(lam) % p))


def base_from(ring: LocalizedRing, lam, label=None) -> Base:
    return Base(ring, ring.coerce(lam), label or str(lam))


@dataclass
class GroupScheme:
    tag: str
    hopf: HopfPresentation
    p: int
    n: int
    base: Base
    lam: Frac
    coord: str
    relation: object = field(default=None, repr=False)

    @property
    def name(self):
        return self.hopf.name

    @property
    def order(self):
        return self.p ** self.n


def _local_carrier(base: Base, coord: str, dens):
    ring = base.ring
    variables = ring.variables + (coord,)
    scratch = LocalizedRing(variables, ring.denominators, ring.p, ring.variables)
    polys = []
    for d in dens:
        d = scratch.coerce(d(scratch)).normalized()
        if not d.is_polynomial():
            raise ValueError("denominators must be polynomial")
        polys.append(d.num)
    return LocalizedRing(variables, tuple(ring.denominators) + tuple(polys), ring.p, ring.variables)


def _lam_in(ring, lam):
    return ring.coerce(lam)


def _name(tag, p, n, base, lam_label, coord):
    if tag == "Ga":
        return "Ga"
    if tag == "Gm":
        return "Gm" if coord == "U" else f"Gm[{coord}]"
    if tag == "Mu":
        return f"mu_{p}^{n}"
    if tag == "GLambda":
        return f"G^({lam_label})" + ("" if coord == "T" else f"[{coord}]")
    return f"Gamma^({lam_label})_{p}^{n}"


def make_scheme(tag, p, n=1, lam="sym", base: Base = None, coord=None, antipode=None,
                lam_label=None) -> GroupScheme:
    """Build one of Ga, Gm, Mu, GLambda, GammaLambda.

    ``lam`` overrides the parameter of ``base`` (both may be omitted for the
    symbolic default).  ``antipode`` replaces the antipode on the generator,
    as a function of (carrier, generator, lam); it exists to exercise the
    axiom checker on incorrect data.
    """
    if tag not in TAGS:
        raise UnsupportedScheme(f"unknown scheme tag {tag!r}")
    check_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    if base is None:
        base = base_ring(p, lam)
        lam_value = base.lam
    else:
        lam_value = base.lam if lam in ("sym", None) else base.ring.coerce(lam)
    label = lam_label or (base.label if lam in ("sym", None) else str(lam))
    q = p ** n
    if tag == "Ga":
        coord = coord or "T"
        carrier = _local_carrier(base, coord, [])
        t2 = carrier.tensor_power(2)
        x = carrier.var(coord)
        comult = {coord: t2.var(f"{coord}|1") + t2.var(f"{coord}|2")}
        counit = {coord: 0}
        anti = {coord: -x}
        relation = None
    elif tag == "Gm":
        coord = coord or "U"
        carrier = _local_carrier(base, coord, [lambda r: r.var(coord)])
        t2 = carrier.tensor_power(2)
        x = carrier.var(coord)
        comult = {coord: t2.var(f"{coord}|1") * t2.var(f"{coord}|2")}
        counit = {coord: 1}
        anti = {coord: carrier.invert(x)}
        relation = None
    elif tag == "GLambda":
        coord = coord or "T"
        carrier = _local_carrier(base, coord, [lambda r: 1 + _lam_in(r, lam_value) * r.var(coord)])
        t2 = carrier.tensor_power(2)
        x = carrier.var(coord)
        a, b = t2.var(f"{coord}|1"), t2.var(f"{coord}|2")
        lam_c = _lam_in(carrier, lam_value)
        comult = {coord: a + b + _lam_in(t2, lam_value) * a * b}
        counit = {coord: 0}
        anti = {coord: -x * carrier.invert(1 + lam_c * x)}
        relation = None
    elif tag == "Mu":
        coord = coord or "U"
        carrier = FiniteFreeAlgebra([roots_of_unity(coord, q)], base.ring)
        t2 = carrier.tensor_power(2)
        x = carrier.gen(coord)
        comult = {coord: t2.gen(f"{coord}|1") * t2.gen(f"{coord}|2")}
        counit = {coord: 1}
        anti = {coord: x ** (q - 1)}
        relation = None
    else:
        coord = coord or "T"
        carrier = FiniteFreeAlgebra([truncated(coord, q)], base.ring)
        t2 = carrier.tensor_power(2)
        x = carrier.gen(coord)
        a, b = t2.gen(f"{coord}|1"), t2.gen(f"{coord}|2")
        lam_c = carrier.scalars.coerce(lam_value)
        comult = {coord: a + b + a * b * lam_c}
        counit = {coord: 0}
        series = carrier.zero()
        step = -(x * lam_c)
        term = carrier.one()
        for _ in range(q):
            series = series + term
            term = term * step
        anti = {coord: -x * series}
        relation = None
    if antipode is not None:
        anti = {coord: antipode(carrier, coord, lam_value)}
    hopf = HopfPresentation(carrier, comult, counit, anti, name=_name(tag, p, n, base, label, coord))
    return GroupScheme(tag, hopf, p, n, base, lam_value, coord, relation)


def catalog(p, n, lam="sym") -> list:
    """Every scheme of the catalog at one grid point."""
    base = base_ring(p, lam)
    return [make_scheme(t, p, n, base=base) for t in TAGS]


# -- maps -----------------------------------------------------------------------

def frobenius_hom(G: GroupScheme, n=None):
    """Coordinate map of the p^n-power Frobenius out of G, with its target.

    Returns ``(hom, target_scheme)``; the hom goes from the coordinates of
    the target (named with a prime) into those of G.
    """
    n = G.n if n is None else n
    q = G.p ** n
    coord = G.coord + "'"
    if G.tag == "Gm":
        target = make_scheme("Gm", G.p, n, base=G.base, coord=coord)
    elif G.tag == "GLambda":
        lam_q = G.lam ** q
        label = G.base.label if G.base.label in ("0", "1") else f"{G.base.label}^{q}"
        target = make_scheme("GLambda", G.p, n, lam=lam_q, base=G.base, coord=coord,
                             lam_label=label)
    else:
        raise UnsupportedScheme(f"no Frobenius map for {G.tag}")
    hom = RingHom(target.hopf.carrier, G.hopf.carrier, {coord: G.hopf.carrier.var(G.coord) ** q})
    return hom, target


def kernel_scheme(G: GroupScheme) -> GroupScheme:
    if G.tag == "Gm":
        return make_scheme("Mu", G.p, G.n, base=G.base)
    if G.tag == "GLambda":
        return make_scheme("GammaLambda", G.p, G.n, lam="sym", base=G.base)
    raise UnsupportedScheme(f"no Frobenius kernel for {G.tag}")


def closed_immersion(G: GroupScheme, K: GroupScheme) -> RingHom:
    """Quotient map from the coordinates of G onto those of its kernel."""
    return RingHom(G.hopf.carrier, K.hopf.carrier, {G.coord: K.hopf.carrier.gen(K.coord)})


def relation_element(G: GroupScheme):
    """Generator of the kernel ideal of the closed immersion."""
    x = G.hopf.carrier.var(G.coord)
    q = G.p ** G.n
    return x ** q - 1 if G.tag == "Gm" else x ** q


@dataclass
class SequenceCheckReport:
    checks: list

    def _ok(self, key):
        return all(c.ok for c in self.checks if f".{key}" in c.check_id)

    @property
    def injection_ok(self):
        return self._ok("injection")

    @property
    def composition_trivial(self):
        return self._ok("composition-trivial")

    @property
    def kernel_ideal_ok(self):
        return self._ok("kernel-ideal")


def check_kernel_sequence(G: GroupScheme, frob=None, prefix=None) -> SequenceCheckReport:
    """Proxies for exactness of 0 -> kernel -> G -> G' -> 0.  ``frob`` may be
    a replacement (hom, target) pair, used for negative controls."""
    K = kernel_scheme(G)
    hom, target = frob if frob is not None else frobenius_hom(G)
    prefix = prefix or f"sequence.{G.name}"
    claim_seq = f"0 -> {K.name} -> {G.name} -> {target.name} -> 0"
    out = []
    try:
        e = closed_immersion(G, K)
    except Exception as exc:
        out.append(failed(f"{prefix}.injection.well-defined", claim_seq, exc))
        return SequenceCheckReport(out)
    hom_checks = check_hopf_hom(e, G.hopf, K.hopf, name=f"{prefix}.injection")
    out.extend(hom_checks)
    img = e(G.hopf.carrier.var(G.coord))
    out.append(compare(f"{prefix}.injection.surjective",
                       f"quotient onto {K.name} hits its generator", img, K.hopf.carrier.gen(K.coord)))
    for g in target.hopf.generators:
        x = target.hopf.gen(g)
        eps = target.hopf.counit(x)
        out.append(compare(f"{prefix}.composition-trivial.{g}",
                           f"{K.name} -> {G.name} -> {target.name} is trivial",
                           e(hom(x)), K.hopf.carrier.scalar(eps)))
        rel = relation_element(G)
        out.append(compare(f"{prefix}.kernel-ideal.{g}",
                           f"Frobenius image minus counit generates the kernel ideal of {K.name}",
                           hom(x) - G.hopf.carrier.coerce(eps), rel))
    out.append(compare(f"{prefix}.kernel-ideal.relation-killed",
                       f"the kernel ideal generator maps to zero in {K.name}",
                       e(relation_element(G)), K.hopf.carrier.zero()))
    return SequenceCheckReport(out)


def wrong_frobenius(G: GroupScheme):
    """T -> T^(p^n - 1): a deliberately wrong map for negative controls."""
    _, target = frobenius_hom(G)
    q = G.p ** G.n
    hom = RingHom(target.hopf.carrier, G.hopf.carrier,
                  {target.coord: G.hopf.carrier.var(G.coord) ** (q - 1)}, check=False)
    return hom, target


def alpha_hom(GL: GroupScheme, Gm: GroupScheme) -> RingHom:
    """U -> 1 + lam T, coordinates of Gm into those of G^(lam)."""
    c = GL.hopf.carrier
    return RingHom(Gm.hopf.carrier, c, {Gm.coord: 1 + c.coerce(GL.lam) * c.var(GL.coord)})


def alpha_tilde(Gamma: GroupScheme, Mu: GroupScheme) -> RingHom:
    """The same assignment between the finite kernels."""
    c = Gamma.hopf.carrier
    return RingHom(Mu.hopf.carrier, c, {Mu.coord: c.gen(Gamma.coord) * c.scalars.coerce(Gamma.lam) + 1})


def alpha_tilde_inverse(Gamma: GroupScheme, Mu: GroupScheme) -> RingHom:
    """T -> (U - 1)/lam, defined when lam is a unit."""
    m = Mu.hopf.carrier
    inv = m.scalars.invert(Gamma.lam)
    return RingHom(Gamma.hopf.carrier, m, {Gamma.coord: (m.gen(Mu.coord) - 1) * inv})


def check_scheme(G: GroupScheme) -> list:
    out = check_hopf_axioms(G.hopf)
    if G.tag == "GammaLambda":
        rank = G.hopf.carrier.rank
        out.append(verdict(f"{G.name}.rank", f"{G.name} is free of rank p^n",
                           rank == G.p ** G.n, f"rank {rank}"))
    return out
