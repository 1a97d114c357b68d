"""Torsors under G^(lam) and Gamma^(lam) with coordinate X' (the base ring may
itself use a variable called X), their Galois maps, the contracted-product
comparison and the bounded search for a cleaving witness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .catalog import Base, GroupScheme, make_scheme
from .checks import Check, EVIDENCE, compare, failed, guarded, passed
from .errors import CleftError, DenominatorNotUnit, HypothesisUnverified
from .freealg import FiniteFreeAlgebra, pure_power, truncated
from .homs import RingHom
from .localized import DEFAULT_KMAX, Frac, LocalizedRing
from .polynomial import Poly, parse_poly

COORD = "X'"
GROUP_COORD = "T"
LEFT_COORD = "Tg"


def _gen(ring, name):
    return ring.gen(name) if isinstance(ring, FiniteFreeAlgebra) else ring.var(name)


@dataclass
class Torsor:
    kind: str
    base: LocalizedRing
    lam: Frac
    a: Frac
    c: Frac
    coordinate: object
    group: GroupScheme
    comodule: object
    comodule2: object
    coaction: RingHom
    hypothesis: str

    @property
    def p(self):
        return self.base.p


def _base_of(base: LocalizedRing, lam):
    return Base(base, base.coerce(lam), "lam")


def make_torsor(kind, base: LocalizedRing, lam, a, c=None, kmax=DEFAULT_KMAX) -> Torsor:
    """``kind`` is "full" (coordinate ring R[X', 1/(a+lam X')] under G^(lam))
    or "finite" (R[X']/(X'^p - c) under Gamma^(lam) with n = 1)."""
    p = base.p
    lam, a = base.coerce(lam), base.coerce(a)
    if kind == "finite":
        if c is None:
            raise ValueError("the finite torsor needs c")
        c = base.coerce(c)
        key = a ** p + lam ** p * c
        if not base.is_unit(key, kmax):
            raise HypothesisUnverified(f"a^p + lam^p c = {key} is not a verified unit")
        hypothesis = f"a^p + lam^p c = {key.normalized()} is a unit"
        group = make_scheme("GammaLambda", p, 1, base=_base_of(base, lam), coord=GROUP_COORD)
        coordinate = FiniteFreeAlgebra([pure_power(COORD, p, c)], base)
    elif kind == "full":
        c = base.coerce(c) if c is not None else base.zero()
        hypothesis = _check_unit_mod_lam(base, lam, a, kmax)
        group = make_scheme("GLambda", p, 1, base=_base_of(base, lam), coord=GROUP_COORD)
        variables = base.variables + (COORD,)
        scratch = LocalizedRing(variables, base.denominators, p, base.variables)
        den = (scratch.coerce(a) + scratch.coerce(lam) * scratch.var(COORD)).normalized()
        coordinate = LocalizedRing(variables, tuple(base.denominators) + (den.num,), p, base.variables,
                                   name="C")
    else:
        raise ValueError(f"unknown torsor kind {kind!r}")
    H = group.hopf.carrier
    comodule = coordinate.tensor(H)
    comodule2 = coordinate.tensor(H.tensor_power(2))
    x = _gen(comodule, COORD)
    t = _gen(comodule, GROUP_COORD)
    lam_m = _scalar(comodule, lam)
    a_m = _scalar(comodule, a)
    coaction = RingHom(coordinate, comodule, {COORD: x + a_m * t + lam_m * x * t})
    return Torsor(kind, base, lam, a, c, coordinate, group, comodule, comodule2, coaction, hypothesis)


def _scalar(ring, x):
    return ring.scalar(x) if isinstance(ring, FiniteFreeAlgebra) else ring.coerce(x)


def _check_unit_mod_lam(base: LocalizedRing, lam: Frac, a: Frac, kmax) -> str:
    """Decide that a is a unit modulo lam, by an explicit witness."""
    if base.is_unit(lam, kmax):
        return f"lam = {lam} is a unit"
    if base.is_unit(a, kmax):
        return f"a = {a} is a unit"
    if lam.is_zero():
        raise HypothesisUnverified("lam = 0 and a is not a verified unit")
    lam_n = lam.normalized()
    if not lam_n.is_polynomial():
        raise HypothesisUnverified("lam is not a polynomial")
    f = lam_n.num
    for v in f.used_vars():
        if f.degree_in(v) != 1:
            continue
        lead = Poly.zero(f.vars, f.p)
        rest = Poly.zero(f.vars, f.p)
        i = f.vars.index(v)
        for e, coef in f.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] = 0
                lead = lead + Poly._raw(f.vars, {tuple(ne): coef}, f.p)
            else:
                rest = rest + Poly._raw(f.vars, {e: coef}, f.p)
        if not lead.is_constant():
            continue
        inv = pow(lead.constant_value(), f.p - 2, f.p)
        remaining = tuple(w for w in base.variables if w != v)
        substitute = (-rest * inv).align(remaining)
        dens = []
        for d in base.denominators:
            img = d.align(base.variables)
            dd = _substitute(img, v, substitute, remaining)
            if dd.is_zero():
                break
            dens.append(dd)
        else:
            quotient = LocalizedRing(remaining, dens, f.p, remaining, name="R/(lam)")
            images = {w: quotient.var(w) for w in remaining}
            images[v] = quotient.frac(substitute)
            image = RingHom(base, quotient, images, check=False)(a)
            if quotient.is_unit(image, kmax):
                return f"a = {a} is a unit modulo lam: its image {image} in R/(lam) is invertible"
    raise HypothesisUnverified(f"could not verify that a = {a} is a unit modulo lam = {lam}")


def _substitute(f: Poly, v: str, value: Poly, remaining) -> Poly:
    i = f.vars.index(v)
    out = Poly.zero(remaining, f.p)
    for e, coef in f.terms.items():
        ne = list(e)
        k = ne[i]
        ne[i] = 0
        out = out + Poly._raw(f.vars, {tuple(ne): coef}, f.p).align(remaining) * value ** k
    return out


# -- verification -------------------------------------------------------------------

def check_coaction(t: Torsor, prefix) -> list:
    H = t.group.hopf
    cm, cm2 = t.comodule, t.comodule2
    out = []
    to_first = RingHom(cm, cm2, {COORD: _gen(cm2, COORD), GROUP_COORD: _gen(cm2, f"{GROUP_COORD}|1")},
                       check=False)
    rho_id = RingHom(cm, cm2, {COORD: to_first(t.coaction(_gen(t.coordinate, COORD))),
                               GROUP_COORD: _gen(cm2, f"{GROUP_COORD}|2")}, check=False)
    id_delta = RingHom(cm, cm2, {COORD: _gen(cm2, COORD),
                                 GROUP_COORD: cm2.coerce(H.comult(H.gen(GROUP_COORD)))}, check=False)
    counit = RingHom(cm, t.coordinate, {COORD: _gen(t.coordinate, COORD), GROUP_COORD: 0}, check=False)
    x = _gen(t.coordinate, COORD)
    out.append(_law(f"{prefix}.coaction.coassociativity", "coaction is coassociative",
                    lambda: (rho_id(t.coaction(x)), id_delta(t.coaction(x)))))
    out.append(_law(f"{prefix}.coaction.counit", "coaction satisfies the counit law",
                    lambda: (counit(t.coaction(x)), x)))
    return out


def _law(cid, claim, thunk) -> Check:
    try:
        lhs, rhs = thunk()
    except Exception as exc:
        return failed(cid, claim, f"{type(exc).__name__}: {exc}")
    return compare(cid, claim, lhs, rhs)


def galois_maps(t: Torsor):
    """(r, r_inverse) between C (x) C and C (x) H."""
    C = t.coordinate
    CC = C.tensor_power(2)
    cm = t.comodule
    x, tt = _gen(cm, COORD), _gen(cm, GROUP_COORD)
    lam_m, a_m = _scalar(cm, t.lam), _scalar(cm, t.a)
    r = RingHom(CC, cm, {f"{COORD}|1": x, f"{COORD}|2": lam_m * x * tt + x + a_m * tt})
    x1, x2 = _gen(CC, f"{COORD}|1"), _gen(CC, f"{COORD}|2")
    unit = _scalar(CC, t.a) + _scalar(CC, t.lam) * x1
    inv_unit = unit.invert() if isinstance(CC, FiniteFreeAlgebra) else CC.invert(unit)
    r_inv = RingHom(cm, CC, {COORD: x1, GROUP_COORD: (x2 - x1) * inv_unit})
    return r, r_inv


def verify_galois_map(t: Torsor, prefix) -> list:
    out = []
    try:
        r, r_inv = galois_maps(t)
    except (DenominatorNotUnit, CleftError) as exc:
        return [failed(f"{prefix}.galois.well-defined", "the Galois map and its inverse are defined", exc)]
    out.append(passed(f"{prefix}.galois.well-defined", "the Galois map and its inverse are defined"))
    CC = t.coordinate.tensor_power(2)
    cm = t.comodule
    for name in (f"{COORD}|1", f"{COORD}|2"):
        g = _gen(CC, name)
        out.append(_law(f"{prefix}.galois.inverse-after.{name}", "r^-1 o r = id",
                        lambda: (r_inv(r(g)), g)))
    for name in (COORD, GROUP_COORD):
        g = _gen(cm, name)
        out.append(_law(f"{prefix}.galois.after-inverse.{name}", "r o r^-1 = id",
                        lambda: (r(r_inv(g)), g)))
    if t.kind == "finite":
        C = t.coordinate
        p = t.p
        lhs = (C.scalar(t.a) + C.scalar(t.lam) * C.gen(COORD)) ** p
        out.append(compare(f"{prefix}.frobenius-identity", "(a + lam X')^p = a^p + lam^p c",
                           lhs, C.scalar(t.a ** p + t.lam ** p * t.c)))
    return out


def contracted_product_check(finite: Torsor, full: Torsor, prefix) -> list:
    """phi: C -> C~ (x) B, X' -> X' + aT + lam X'T, and its properties."""
    out = []
    B = full.group.hopf.carrier
    Ct = finite.coordinate
    CtB = Ct.base_change(B)
    B2 = full.group.hopf.tensor2
    CtB2 = Ct.base_change(B2)
    x = CtB.gen(COORD)
    T = CtB.scalar(B.var(GROUP_COORD))
    lam, a = CtB.scalar(full.lam), CtB.scalar(full.a)
    try:
        phi = RingHom(full.coordinate, CtB, {COORD: x + a * T + lam * x * T})
    except (DenominatorNotUnit, CleftError) as exc:
        return [failed(f"{prefix}.phi.well-defined", "phi extends to the localization", exc)]
    out.append(passed(f"{prefix}.phi.well-defined", "phi sends a + lam X' to a unit"))
    C = full.coordinate
    unit = C.coerce(full.a) + C.coerce(full.lam) * C.var(COORD)
    out.append(_law(f"{prefix}.phi.unit", "phi(a + lam X') = (a + lam X')(1 + lam T)",
                    lambda: (phi(unit), (a + lam * x) * (1 + lam * T))))
    # product compatibility on a sample of elements
    y = C.var(COORD)
    out.append(_law(f"{prefix}.phi.ring-hom", "phi respects products",
                    lambda: (phi(y * y * C.invert(unit)), phi(y) * phi(y) * phi(C.invert(unit)))))
    # comodule square: (phi x id) o rho_C = (id x Delta_B) o phi
    delta_b = full.group.hopf.comult
    id_delta = RingHom(CtB, CtB2, {COORD: CtB2.gen(COORD)}, scalar_hom=delta_b, check=False)
    first = RingHom(B, B2, {GROUP_COORD: B2.var(f"{GROUP_COORD}|1")}, check=False)
    phi_first = lambda v: RingHom(CtB, CtB2, {COORD: CtB2.gen(COORD)}, scalar_hom=first,
                                  check=False)(phi(v))
    phi_id = RingHom(full.comodule, CtB2, {COORD: phi_first(y),
                                           GROUP_COORD: CtB2.scalar(B2.var(f"{GROUP_COORD}|2"))},
                     check=False)
    out.append(_law(f"{prefix}.phi.comodule-hom", "phi is a map of right comodules",
                    lambda: (phi_id(full.coaction(y)), id_delta(phi(y)))))
    # left coaction of the finite group on C~ (x) B
    left_alg = FiniteFreeAlgebra([truncated(LEFT_COORD, finite.p), Ct.factors[0]], B)
    tg = left_alg.gen(LEFT_COORD)
    lam_l, a_l = left_alg.scalar(full.lam), left_alg.scalar(full.a)
    one_plus = 1 + lam_l * tg
    on_scalars = RingHom(B, left_alg, {GROUP_COORD: tg + left_alg.scalar(B.var(GROUP_COORD))
                                       + lam_l * tg * left_alg.scalar(B.var(GROUP_COORD))})
    left = RingHom(CtB, left_alg,
                   {COORD: left_alg.gen(COORD) + (-tg) * one_plus.invert() * (a_l + lam_l * left_alg.gen(COORD))},
                   scalar_hom=on_scalars, check=False)
    out.append(_law(f"{prefix}.phi.left-invariant", "phi(X') is invariant under the left coaction",
                    lambda: (left(phi(y)), left_alg.coerce(phi(y)))))
    out.append(_law(f"{prefix}.left-coaction.relation", "the left coaction respects X'^p = c",
                    lambda: (left(CtB.gen(COORD)) ** finite.p, left_alg.scalar(finite.c))))
    return out


# -- cleftness search ---------------------------------------------------------------

@dataclass(frozen=True)
class CleftWitness:
    b: Poly

    def __str__(self):
        return f"CleftWitness({self.b})"


@dataclass(frozen=True)
class NoWitnessUpTo:
    degree: int

    def __str__(self):
        return f"NoWitnessUpTo({self.degree})"


def candidate_monomials(variables, degree_bound):
    monos = []
    n = len(variables)
    for d in range(degree_bound + 1):
        for e in itertools.product(range(d + 1), repeat=n):
            if sum(e) == d:
                monos.append(e)
    monos.sort(key=lambda e: (sum(e), tuple(-k for k in e)))
    return monos


def cleft_obstruction_search(t: Torsor, degree_bound: int, kmax: int = 4):
    """Look for b with a + lam b invertible, over all F_p-combinations of
    monomials of total degree at most degree_bound in the base variables."""
    base = t.base
    p = base.p
    variables = base.variables
    monos = candidate_monomials(variables, degree_bound)
    basis = [Poly._raw(variables, {e: 1}, p) for e in monos]
    # lower-degree supports first, so a witness found at bound d is found again at larger bounds
    for coeffs in sorted(itertools.product(range(p), repeat=len(basis)),
                         key=lambda cs: (max((sum(monos[i]) for i, c in enumerate(cs) if c), default=-1), cs[::-1])):
        b = Poly.zero(variables, p)
        for c, m in zip(coeffs, basis):
            if c:
                b = b + m * c
        if base.is_unit(t.a + t.lam * base.frac(b), kmax):
            return CleftWitness(b)
    return NoWitnessUpTo(degree_bound)


# -- instances ------------------------------------------------------------------------

def xy_instance(p=2):
    """R = F_p[X, Y, 1/(X^p + Y^p + (X+1)^p Y)], lam = X+1, a = X+Y, c = Y."""
    variables = ("X", "Y")
    D = parse_poly(f"X^{p} + Y^{p} + (X+1)^{p}*Y", p, variables)
    R = LocalizedRing(variables, [D], p, variables, name="R")
    lam = R.frac(parse_poly("X + 1", p, variables))
    a = R.frac(parse_poly("X + Y", p, variables))
    c = R.frac(parse_poly("Y", p, variables))
    return R, lam, a, c


def torsor_suite(base, lam, a, c, prefix, search_degree=2, kmax=4, label_instance=None) -> list:
    """Everything checkable for one (R, lam, a, c)."""
    out = []
    try:
        finite = make_torsor("finite", base, lam, a, c)
    except HypothesisUnverified as exc:
        return [failed(f"{prefix}.finite.hypothesis", "a^p + lam^p c is a unit", exc)]
    out.append(passed(f"{prefix}.finite.hypothesis", "a^p + lam^p c is a unit", finite.hypothesis))
    out.extend(guarded(f"{prefix}.finite.coaction", "coaction axioms",
                       lambda: check_coaction(finite, f"{prefix}.finite")))
    out.extend(guarded(f"{prefix}.finite.galois", "Galois map", lambda: verify_galois_map(finite, f"{prefix}.finite")))
    try:
        full = make_torsor("full", base, lam, a, c)
    except HypothesisUnverified as exc:
        out.append(failed(f"{prefix}.full.hypothesis", "a is a unit modulo lam", exc))
        full = None
    if full is not None:
        out.append(passed(f"{prefix}.full.hypothesis", "a is a unit modulo lam", full.hypothesis))
        out.extend(guarded(f"{prefix}.full.coaction", "coaction axioms",
                           lambda: check_coaction(full, f"{prefix}.full")))
        out.extend(guarded(f"{prefix}.full.galois", "Galois map", lambda: verify_galois_map(full, f"{prefix}.full")))
        out.extend(guarded(f"{prefix}.contracted", "contracted product",
                           lambda: contracted_product_check(finite, full, f"{prefix}.contracted")))
    result = cleft_obstruction_search(finite, search_degree, kmax)
    claim = f"search for b with a + lam b invertible, degree <= {search_degree}, kMax = {kmax}"
    if label_instance:
        claim += f"; {label_instance}"
    out.append(Check(f"{prefix}.cleft-search", claim, EVIDENCE, str(result)))
    return out
