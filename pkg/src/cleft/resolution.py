"""Cleaving maps, the P polynomials, coinvariant presentations, the maps
chi, xi, omega and the diagram maps sigma/tau relating the unit group of
Gamma^(lam) with G^(lam)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .catalog import (Base, GroupScheme, LAMBDA, base_ring, check_kernel_sequence, closed_immersion,
                      frobenius_hom, make_scheme)
from .checks import Check, compare, failed, guarded, passed, verdict
from .errors import ClearingFailed, RewriteFailed
from .freealg import FreeElement
from .homs import RingHom
from .hopf import (Coaction, ConvolutionMap, UnitGroup, basis_element,
                   check_hopf_hom, convolution_inverse, convolve, doi_takeuchi_project,
                   phi_inverse_expand, reconstruct_from_expansion, unit_map)
from .localized import Frac, LocalizedRing
from .polynomial import Poly


# -- cleft structures -----------------------------------------------------------

@dataclass
class CleftStructure:
    scheme: GroupScheme
    unit_group: UnitGroup
    cleaving: ConvolutionMap
    inverse: ConvolutionMap
    coaction: Coaction

    @property
    def ring(self):
        return self.unit_group.ring

    def coordinate(self, label):
        return self.unit_group.coordinate(label)


def build_cleft_structure(G: GroupScheme, prefix=None) -> CleftStructure:
    """Unit group of a finite scheme, cleaving e -> X_e and its inverse."""
    if prefix is None:
        prefix = "Y" if G.tag == "Mu" else "X"
    U = UnitGroup(G.hopf, prefix=prefix, name=f"U({G.name})")
    cleaving = ConvolutionMap(G.hopf, U.ring, {e: U.ring.var(v) for e, v in zip(U.basis, U.coords)})
    inverse = convolution_inverse(cleaving)
    return CleftStructure(G, U, cleaving, inverse, Coaction(U))


def check_cleft_structure(cs: CleftStructure, prefix) -> list:
    H = cs.scheme.hopf
    U = cs.unit_group
    rho = cs.coaction
    out = []
    eta = unit_map(H, U.ring)
    left = convolve(cs.cleaving, cs.inverse)
    right = convolve(cs.inverse, cs.cleaving)
    table = _comult_pairs(H)
    for e in U.basis:
        lab = H.carrier.basis_label(e)
        out.append(compare(f"{prefix}.convolution-inverse.right.{lab}",
                           "cleaving * inverse = unit o counit", left.values[e], eta.values[e]))
        out.append(compare(f"{prefix}.convolution-inverse.left.{lab}",
                           "inverse * cleaving = unit o counit", right.values[e], eta.values[e]))
        comod = rho.comodule
        expect = comod.zero()
        for a, b, c in table[e]:
            expect = expect + FreeElement(comod, {b: cs.cleaving.values[a] * comod.scalars.coerce(c)})
        out.append(compare(f"{prefix}.cleaving-comodule-map.{lab}",
                           "the cleaving map is a comodule map", rho(cs.cleaving.values[e]), expect))
    out.extend(rho.check_comodule_axioms(name=f"{prefix}.coaction"))
    return out


def _comult_pairs(H):
    alg = H.carrier
    width = len(alg.names)
    out = {}
    for e in alg.basis():
        d = H.comult(basis_element(alg, e))
        out[e] = [(ex[:width], ex[width:], c) for ex, c in d.coeffs.items()]
    return out


# -- Frobenius-type rewriting ----------------------------------------------------

def rewrite_poly(f: Poly, var: str, new_var: str, q: int, target: LocalizedRing) -> Poly:
    """Replace var^(q k) by new_var^k; fails if an exponent is not a multiple of q."""
    if new_var != var and new_var in f.vars and new_var in f.used_vars():
        raise RewriteFailed(f"{new_var} already occurs")
    i = f.vars.index(var) if var in f.vars else None
    pos = {v: k for k, v in enumerate(f.vars)}
    if i is not None:
        pos[new_var] = i
    used = {new_var if v == var else v for v in f.used_vars()}
    if not used <= set(target.variables):
        raise RewriteFailed(f"variables {sorted(used - set(target.variables))} are not in the target ring")
    terms = {}
    for e, c in f.terms.items():
        if i is not None and e[i] % q:
            raise RewriteFailed(f"exponent {e[i]} of {var} is not a multiple of {q}")
        ne = tuple((e[pos[v]] // q if pos[v] == i else e[pos[v]]) if v in pos else 0
                   for v in target.variables)
        terms[ne] = c
    return Poly._raw(target.variables, terms, f.p)


def frobenius_rewrite(x: Frac, var: str, new_var: str, q: int, target: LocalizedRing) -> Frac:
    """Express x as an element of ``target`` after var^q -> new_var.

    Denominators involving ``var`` are raised to a multiple of q first;
    in characteristic p their q-th powers are polynomials in var^q.
    """
    x = x.normalized()
    src = x.ring
    num = x.num
    result = target.one()
    for i, (d, e) in enumerate(zip(src.denominators, x.exps)):
        if not e:
            continue
        if var in d.used_vars():
            k = -(-e // q)
            if k * q > e:
                num = num * d ** (k * q - e)
            dq = target.frac(rewrite_poly(d ** q, var, new_var, q, target))
            result = result * target.invert(dq) ** k
        else:
            dd = target.frac(rewrite_poly(d, var, new_var, q, target))
            result = result * target.invert(dd) ** e
    return (result * target.frac(rewrite_poly(num, var, new_var, q, target))).normalized()


# -- P polynomials ----------------------------------------------------------------

def diagonal_factor(ring, s, lam, name=lambda k: "X_1" if k == 0 else ("X_T" if k == 1 else f"X_T{k}")):
    """sum_{k<=s} C(s,k) lam^k X_{T^k}."""
    lam = ring.coerce(lam)
    out = ring.zero()
    for k in range(s + 1):
        c = comb(s, k) % ring.p
        if c:
            out = out + ring.var(name(k)) * lam ** k * c
    return out


@dataclass
class PTable:
    p: int
    n: int
    lam_label: str
    structure: CleftStructure
    entries: dict
    Q: dict
    A: dict
    raw: dict = field(default_factory=dict)
    lam_exponent: dict = field(default_factory=dict)

    @property
    def ring(self):
        return self.structure.ring

    @property
    def lam(self):
        return self.structure.scheme.lam


def _p_recursion(ring, q, lam):
    """Return {s: P_s} computed in a ring where lam is inverted."""
    X1, XT = ring.var("X_1"), ring.var("X_T")
    lam = ring.coerce(lam)
    inv_lam = ring.invert(lam)
    entries = {}
    for s in range(2, q):
        d_s = diagonal_factor(ring, s, lam)
        val = (X1 + lam * XT) ** s * X1 * ring.invert(d_s) - X1 ** s
        for k in range(2, s):
            c = comb(s, k) % ring.p
            if c:
                val = val - lam ** k * X1 ** (s - k) * entries[k] * c
        entries[s] = (val * inv_lam ** s).normalized()
    return entries


def compute_P_table(p, n, lam="sym") -> PTable:
    """Run the recursion with lam inverted, clear the lam denominator and
    specialize.  Raises ClearingFailed if a power of lam survives."""
    q = p ** n
    lam_base = LocalizedRing((LAMBDA,), [Poly.var(LAMBDA, (LAMBDA,), p)], p, (LAMBDA,))
    G_inv = make_scheme("GammaLambda", p, n, base=Base(lam_base, lam_base.var(LAMBDA), "sym"))
    U_inv = UnitGroup(G_inv.hopf, prefix="X")
    raw = _p_recursion(U_inv.ring, q, U_inv.ring.var(LAMBDA))
    lam_idx = U_inv.ring.denominators.index(Poly.var(LAMBDA, U_inv.ring.variables, p))
    sym_cs = build_cleft_structure(make_scheme("GammaLambda", p, n, base=base_ring(p, "sym")))
    exps = {}
    cleared = {}
    for s, val in raw.items():
        exps[s] = val.exps[lam_idx]
        if exps[s]:
            raise ClearingFailed(f"P_{s} keeps lam^{exps[s]} in its denominator: {val}")
        cleared[s] = sym_cs.ring.coerce(val)
    if lam in ("sym", None):
        cs = sym_cs
        entries = cleared
    else:
        cs = build_cleft_structure(make_scheme("GammaLambda", p, n, base=base_ring(p, lam)))
        spec = specialization(sym_cs.unit_group, cs.unit_group, int(lam))
        entries = {s: spec(v).normalized() for s, v in cleared.items()}
    ring = cs.ring
    lam_v = cs.scheme.lam
    X1 = ring.var("X_1")
    A, Q = {}, {}
    for s in range(2, q):
        a_s = X1 ** s
        for k in range(2, s):
            c = comb(s, k) % p
            if c:
                a_s = a_s + ring.coerce(lam_v) ** k * X1 ** (s - k) * entries[k] * c
        A[s] = a_s.normalized()
        Q[s] = (entries[s] * diagonal_factor(ring, s, lam_v) + A[s] * ring.var(f"X_T{s}")).normalized()
    label = "sym" if lam in ("sym", None) else str(int(lam) % p)
    return PTable(p, n, label, cs, entries, Q, A, raw, exps)


def specialization(U_sym: UnitGroup, U_val: UnitGroup, value: int) -> RingHom:
    """lam -> value, coordinates fixed."""
    imgs = {v: U_val.ring.var(v) for v in U_sym.coords}
    imgs[LAMBDA] = U_val.ring.const(value)
    return RingHom(U_sym.ring, U_val.ring, imgs)


def check_P_table(t: PTable, prefix) -> list:
    cs = t.structure
    rho = cs.coaction
    out = []
    if not t.entries:
        out.append(passed(f"{prefix}.P.empty", "no P polynomials when p^n = 2"))
    for s, val in t.entries.items():
        out.append(verdict(f"{prefix}.P{s}.polynomial-in-lam",
                           "the lam-denominator of P clears exactly", t.lam_exponent.get(s, 0) == 0,
                           f"lam exponent {t.lam_exponent.get(s)}"))
        out.append(_coinvariant_check(f"{prefix}.P{s}.coinvariant", "P is coinvariant", rho, val))
        x = cs.ring.var("X_T") ** s
        proj = doi_takeuchi_project(x, cs.inverse, rho, cs.cleaving, normalized=True)
        out.append(compare(f"{prefix}.P{s}.projector",
                           "P equals the projector onto coinvariants applied to X_T^s", val, proj))
    return out


def _coinvariant_check(cid, claim, rho, x) -> Check:
    try:
        lhs = rho(x)
        rhs = rho.comodule.scalar(x)
    except Exception as exc:
        return failed(cid, claim, f"{type(exc).__name__}: {exc}")
    return compare(cid, claim, lhs, rhs)


# -- mu side ------------------------------------------------------------------------

def mu_generators(cs: CleftStructure) -> dict:
    ring = cs.ring
    q = cs.scheme.order
    Y1, YU = ring.var("Y_1"), ring.var("Y_U")
    gens = {"Y_1": Y1, "Y_1^-1": ring.invert(Y1)}
    for s in range(2, q):
        g = (YU ** s * ring.invert(ring.var(f"Y_U{s}"))).normalized()
        gens[f"Y_U^{s}/Y_U{s}"] = g
        gens[f"(Y_U^{s}/Y_U{s})^-1"] = ring.invert(g)
    gens[f"Y_U^{q}"] = YU ** q
    gens[f"Y_U^-{q}"] = ring.invert(YU ** q)
    return gens


def _grouplike(U: UnitGroup, x) -> tuple:
    H = U.hopf
    return H.comult(x), H.inclusion(2, 1)(x) * H.inclusion(2, 2)(x)


def mu_coordinate(ring, r):
    return ring.var("Y_1") if r == 0 else ring.var("Y_U" if r == 1 else f"Y_U{r}")


def mu_coinvariant_suite(p, n, lam="sym", bound=2, prefix=None) -> list:
    q = p ** n
    base = base_ring(p, lam)
    G = make_scheme("Mu", p, n, base=base)
    prefix = prefix or f"mu.p{p}n{n}.{base.label}"
    cs = build_cleft_structure(G)
    ring = cs.ring
    rho = cs.coaction
    U = cs.unit_group
    out = check_cleft_structure(cs, prefix)
    for name, g in mu_generators(cs).items():
        out.append(_coinvariant_check(f"{prefix}.generator.{name}.coinvariant",
                                      "listed generator is coinvariant", rho, g))
        out.extend(guarded(f"{prefix}.generator.{name}.grouplike", "listed generator is grouplike",
                           lambda: compare(f"{prefix}.generator.{name}.grouplike",
                                           "listed generator is grouplike", *_grouplike(U, g))))
    YU = ring.var("Y_U")
    for N in range(2 * q):
        m, r = divmod(N, q)
        expect = FreeElement(rho.comodule, {(r,): (YU ** q) ** m * YU ** r * ring.invert(mu_coordinate(ring, r))})
        out.extend(guarded(f"{prefix}.expansion.N{N}", "expansion of Y_U^N",
                           lambda: compare(f"{prefix}.expansion.N{N}",
                                           "expansion of Y_U^N through the cleaving inverse",
                                           phi_inverse_expand(YU ** N, cs.inverse, rho), expect)))
    out.extend(guarded(f"{prefix}.monomial-proxy", "monomial rewriting proxy",
                       lambda: _mu_monomial_proxy(cs, bound, prefix)))
    return out


def _mu_monomial_proxy(cs: CleftStructure, bound, prefix) -> list:
    """Every monomial in the Y coordinates with exponents in [-bound, bound]
    expands as (product of listed generators) (x) U^r."""
    ring = cs.ring
    rho = cs.coaction
    q = cs.scheme.order
    YU = ring.var("Y_U")
    coords = [mu_coordinate(ring, r) for r in range(q)]
    inv_coords = [ring.invert(c) for c in coords]
    ratios = {s: (YU ** s * inv_coords[s]) for s in range(2, q)}
    ratio_inv = {s: ring.invert(ratios[s]) for s in ratios}
    yq = YU ** q
    yq_inv = ring.invert(yq)
    bad = []
    count = 0
    for ms in itertools.product(range(-bound, bound + 1), repeat=q):
        count += 1
        mono = ring.one()
        for c, ic, k in zip(coords, inv_coords, ms):
            if k:
                mono = mono * (c ** k if k > 0 else ic ** (-k))
        total = sum(i * k for i, k in enumerate(ms) if i)
        m, r = divmod(total, q)
        coinv = (coords[0] ** ms[0] if ms[0] >= 0 else inv_coords[0] ** (-ms[0]))
        coinv = coinv * (yq ** m if m >= 0 else yq_inv ** (-m))
        for s in range(2, q):
            k = ms[s]
            if k:
                coinv = coinv * (ratio_inv[s] ** k if k > 0 else ratios[s] ** (-k))
        coinv = coinv * YU ** r * inv_coords[r]
        got = phi_inverse_expand(mono, cs.inverse, rho)
        if not (got == FreeElement(rho.comodule, {(r,): coinv})):
            bad.append(ms)
            if len(bad) > 3:
                break
    return [verdict(f"{prefix}.monomial-proxy",
                    f"all {count} monomials with exponents bounded by {bound} expand through the generators",
                    not bad, f"failing exponent vectors {bad}")]


# -- Gamma side ---------------------------------------------------------------------

def z_name(k):
    return "Z_1" if k == 0 else ("Z_T" if k == 1 else f"Z_T{k}")


def x_name(k):
    return "X_1" if k == 0 else ("X_T" if k == 1 else f"X_T{k}")


def e_denominator(ring, s, lam):
    """E_s = Z_1^s + sum_{2<=k<s} C(s,k) lam^k Z_1^(s-k) Z_{T^k} + lam^s Z_{T^s}; E_1 = Z_1 + lam Z_T."""
    lam = ring.coerce(lam)
    Z1 = ring.var("Z_1")
    if s == 1:
        return Z1 + lam * ring.var("Z_T")
    out = Z1 ** s + lam ** s * ring.var(z_name(s))
    for k in range(2, s):
        c = comb(s, k) % ring.p
        if c:
            out = out + lam ** k * Z1 ** (s - k) * ring.var(z_name(k)) * c
    return out


def _as_poly(x: Frac):
    x = x.normalized()
    if not x.is_polynomial():
        raise ValueError("expected a polynomial")
    return x.num


def z_rings(t: PTable):
    """(Z ring, Z' ring): the second has Z_1^q + lam^q Z_T in place of E_1."""
    p = t.p
    q = p ** t.n
    base = t.structure.scheme.base.ring
    variables = base.variables + tuple(z_name(k) for k in range(q))
    scratch = LocalizedRing(variables, base.denominators, p, base.variables)
    lam = scratch.coerce(t.lam)
    dens = [scratch.var("Z_1"), e_denominator(scratch, 1, lam)]
    dens += [e_denominator(scratch, s, lam) for s in range(2, q)]
    Z = LocalizedRing(variables, tuple(base.denominators) + tuple(_as_poly(d) for d in dens), p,
                      base.variables, name="Z")
    dens_prime = [scratch.var("Z_1"), scratch.var("Z_1") ** q + lam ** q * scratch.var("Z_T")]
    dens_prime += [e_denominator(scratch, s, lam) for s in range(2, q)]
    Zp = LocalizedRing(variables, tuple(base.denominators) + tuple(_as_poly(d) for d in dens_prime), p,
                       base.variables, name="Z'")
    return Z, Zp


def xi_hom(t: PTable, Z) -> RingHom:
    ring = t.ring
    imgs = {"Z_1": ring.var("X_1"), "Z_T": ring.var("X_T")}
    for s, v in t.entries.items():
        imgs[z_name(s)] = v
    return RingHom(Z, ring, imgs)


def chi_hom(t: PTable, Z) -> RingHom:
    """Built one coordinate at a time from the solve-back identities."""
    ring = t.ring
    q = t.p ** t.n
    lam = t.lam
    imgs = {"X_1": Z.var("Z_1"), "X_T": Z.var("Z_T")}
    for s in range(2, q):
        partial = RingHom(ring, Z, dict(imgs), check=False)
        d_rest = diagonal_factor(ring, s, lam) - ring.coerce(lam) ** s * ring.var(x_name(s))
        E_s = e_denominator(Z, s, Z.coerce(lam))
        imgs[x_name(s)] = ((partial(t.Q[s]) - partial(d_rest) * Z.var(z_name(s))) * Z.invert(E_s)).normalized()
    return RingHom(ring, Z, imgs)


def omega_hom(t: PTable, Z, Zp) -> RingHom:
    q = t.p ** t.n
    imgs = {z_name(k): Z.var(z_name(k)) for k in range(q)}
    imgs["Z_T"] = Z.var("Z_T") ** q
    return RingHom(Zp, Z, imgs)


def omega_preimage(z: Frac, t: PTable, Zp) -> Frac:
    return frobenius_rewrite(z, "Z_T", "Z_T", t.p ** t.n, Zp)


def gamma_generators(t: PTable) -> dict:
    ring = t.ring
    q = t.p ** t.n
    lam = ring.coerce(t.lam)
    X1, XT = ring.var("X_1"), ring.var("X_T")
    gens = {"X_1": X1, "X_1^-1": ring.invert(X1), f"X_T^{q}": XT ** q}
    for s, v in t.entries.items():
        gens[f"P{s}"] = v
    gens[f"1/(X_1^{q}+lam^{q}*X_T^{q})"] = ring.invert(X1 ** q + lam ** q * XT ** q)
    for r in range(2, q):
        gens[f"ratio{r}"] = (diagonal_factor(ring, r, lam) * ring.invert(X1 + lam * XT) ** r).normalized()
    return gens


def gamma_coinvariant_suite(p, n, lam="sym", prefix=None, table=None) -> list:
    q = p ** n
    prefix = prefix or f"gamma.p{p}n{n}.{'sym' if lam in ('sym', None) else lam}"
    try:
        t = table or compute_P_table(p, n, lam)
    except Exception as exc:
        return [failed(f"{prefix}.P-table", "P polynomials are computable with lam cleared", exc)]
    cs = t.structure
    ring = cs.ring
    rho = cs.coaction
    lam_r = ring.coerce(t.lam)
    out = check_cleft_structure(cs, prefix)
    out.extend(check_P_table(t, prefix))
    gens = gamma_generators(t)
    for name, g in gens.items():
        out.append(_coinvariant_check(f"{prefix}.generator.{name}.coinvariant",
                                      "listed generator is coinvariant", rho, g))
    allowed_base = set(ring.base_variables)
    for s in range(2, q):
        allowed = allowed_base | {x_name(k) for k in range(s)}
        used = t.Q[s].used_vars()
        out.append(verdict(f"{prefix}.Q{s}.occurrence",
                           "Q_s involves only X_1, X_T and lower coordinates", used <= allowed,
                           f"uses {sorted(used - allowed)}"))
        d_rest = diagonal_factor(ring, s, lam_r) - lam_r ** s * ring.var(x_name(s))
        out.extend(guarded(f"{prefix}.solve-back.{s}", "solve-back identity",
                           lambda: compare(f"{prefix}.solve-back.{s}",
                                           "X_{T^s} = (Q_s - d_s' P_s)/(A_s + lam^s P_s)",
                                           ring.var(x_name(s)),
                                           (t.Q[s] - d_rest * t.entries[s])
                                           * ring.invert(t.A[s] + lam_r ** s * t.entries[s]))))
    out.extend(guarded(f"{prefix}.chi-xi", "chi and xi are mutually inverse",
                       lambda: _chi_xi_checks(t, prefix)))
    out.extend(guarded(f"{prefix}.omega", "xi o omega realizes the generator list",
                       lambda: _omega_checks(t, gens, prefix)))
    out.extend(guarded(f"{prefix}.expansion", "expansion through the cleaving inverse",
                       lambda: _gamma_expansion_checks(t, prefix)))
    return out


def _chi_xi_checks(t: PTable, prefix) -> list:
    Z, _ = z_rings(t)
    xi = xi_hom(t, Z)
    chi = chi_hom(t, Z)
    out = []
    for v in t.structure.unit_group.coords:
        x = t.ring.var(v)
        out.append(compare(f"{prefix}.xi-chi.{v}", "xi o chi = id", xi(chi(x)), x))
    for v in Z.coordinate_variables:
        z = Z.var(v)
        out.append(compare(f"{prefix}.chi-xi.{v}", "chi o xi = id", chi(xi(z)), z))
    return out


def _omega_checks(t: PTable, gens, prefix) -> list:
    q = t.p ** t.n
    Z, Zp = z_rings(t)
    xi = xi_hom(t, Z)
    omega = omega_hom(t, Z, Zp)
    ring = t.ring
    lam = Zp.coerce(t.lam)
    out = []

    def xo(x):
        return xi(omega(x))

    expect = {"Z_1": gens["X_1"], "Z_T": gens[f"X_T^{q}"]}
    for s in range(2, q):
        expect[z_name(s)] = gens[f"P{s}"]
    for v, g in expect.items():
        out.append(compare(f"{prefix}.xi-omega.{v}", "xi o omega sends the Z generators onto the list",
                           xo(Zp.var(v)), g))
    Z1 = Zp.var("Z_1")
    out.append(compare(f"{prefix}.xi-omega.1/Z_1", "inverse of Z_1 maps to X_1^-1",
                       xo(Zp.invert(Z1)), gens["X_1^-1"]))
    e1 = Z1 ** q + lam ** q * Zp.var("Z_T")
    out.append(compare(f"{prefix}.xi-omega.1/E_1'", "inverse of Z_1^q + lam^q Z_T maps to the listed inverse",
                       xo(Zp.invert(e1)), gens[f"1/(X_1^{q}+lam^{q}*X_T^{q})"]))
    for s in range(2, q):
        es = e_denominator(Zp, s, lam)
        out.append(compare(f"{prefix}.xi-omega.Z_1/E_{s}", "Z_1 / E_s maps to the listed ratio",
                           xo(Z1 * Zp.invert(es)), gens[f"ratio{s}"]))
    # omega is injective: its image can be rewritten back
    items = [(v, Zp.var(v)) for v in Zp.coordinate_variables]
    items += [("1/E_1'", Zp.invert(e1))] + [(f"1/E_{s}", Zp.invert(e_denominator(Zp, s, lam)))
                                            for s in range(2, q)]
    for name, z in items:
        out.extend(guarded(f"{prefix}.omega-rewrite.{name}", "omega image rewrites back",
                           lambda: compare(f"{prefix}.omega-rewrite.{name}", "omega image rewrites back",
                                           omega_preimage(omega(z), t, Zp), z)))
    del ring
    return out


def _gamma_expansion_checks(t: PTable, prefix) -> list:
    """Each X_{T^s} is recovered from its expansion, and every left
    component lies in the image of xi o omega."""
    cs = t.structure
    ring = cs.ring
    q = t.p ** t.n
    Z, Zp = z_rings(t)
    xi = xi_hom(t, Z)
    chi = chi_hom(t, Z)
    omega = omega_hom(t, Z, Zp)
    out = []
    for s in range(1, q):
        x = ring.var(x_name(s))
        exp = phi_inverse_expand(x, cs.inverse, cs.coaction)
        out.append(compare(f"{prefix}.expansion.X_T{s}.reconstruct",
                           "multiplying back through the cleaving recovers the element",
                           reconstruct_from_expansion(exp, cs.cleaving), x))
        bad = []
        for e, c in exp.coeffs.items():
            try:
                pre = omega_preimage(chi(c), t, Zp)
                if not (xi(omega(pre)) == c):
                    bad.append(e)
            except Exception as exc:
                bad.append(f"{e}: {type(exc).__name__}")
        out.append(verdict(f"{prefix}.expansion.X_T{s}.components",
                           "every left component is expressed through the coinvariant generators",
                           not bad, f"components {bad}"))
    return out


# -- diagram maps -----------------------------------------------------------------

def comparison_diagram_suite(p, n, lam="sym", prefix=None, table=None) -> list:
    q = p ** n
    prefix = prefix or f"diagram.p{p}n{n}.{'sym' if lam in ('sym', None) else lam}"
    try:
        t = table or compute_P_table(p, n, lam)
    except Exception as exc:
        return [failed(f"{prefix}.P-table", "P polynomials are computable with lam cleared", exc)]
    cs = t.structure
    U = cs.unit_group
    ring = U.ring
    base = cs.scheme.base
    G = make_scheme("GLambda", p, n, base=base)
    frob, Gp = frobenius_hom(G)
    Gamma = cs.scheme
    B = G.hopf.carrier
    T = B.var(G.coord)
    lam_b = B.coerce(t.lam)
    out = []

    try:
        imgs = {x_name(k): T ** k if k else B.one() for k in range(q)}
        sigma1 = RingHom(ring, B, imgs)
    except Exception as exc:
        return out + [failed(f"{prefix}.sigma1.well-defined", "sigma1 is a ring homomorphism", exc)]
    out.append(passed(f"{prefix}.sigma1.well-defined", "sigma1 sends every determinant factor to a unit"))
    image_det = B.one()
    for r in range(q):
        image_det = image_det * sigma1(diagonal_factor(ring, r, t.lam))
    out.append(compare(f"{prefix}.sigma1.determinant", "sigma1 of the determinant is (1+lam T)^(0+1+...+(q-1))",
                       image_det, (1 + lam_b * T) ** (q * (q - 1) // 2)))
    out.extend(check_hopf_hom(sigma1, U.hopf, G.hopf, name=f"{prefix}.sigma1"))

    sigma2 = RingHom(B, ring, {G.coord: ring.var("X_T") * ring.invert(ring.var("X_1"))})
    out.extend(check_hopf_hom(sigma2, G.hopf, U.hopf, name=f"{prefix}.sigma2"))
    Cp = Gp.hopf.carrier
    tau2 = RingHom(Cp, ring, {Gp.coord: ring.var("X_T") ** q * ring.invert(ring.var("X_1") ** q)})
    out.extend(check_hopf_hom(tau2, Gp.hopf, U.hopf, name=f"{prefix}.tau2"))
    out.append(_coinvariant_check(f"{prefix}.tau2.coinvariant", "the image of tau2 is coinvariant",
                                  cs.coaction, tau2(Cp.var(Gp.coord))))
    out.append(compare(f"{prefix}.square2.{Gp.coord}", "inclusion o tau2 = sigma2 o Frobenius",
                       tau2(Cp.var(Gp.coord)), sigma2(frob(Cp.var(Gp.coord)))))

    # tau1: sigma1 on coinvariant generators, rewritten in T' = T^q
    ff = Gp.hopf.tensor_hom(2, [lambda x: G.hopf.inclusion(2, 1)(frob(x)),
                                lambda x: G.hopf.inclusion(2, 2)(frob(x))], G.hopf.tensor2)
    ss = U.hopf.tensor_hom(2, [lambda x: G.hopf.inclusion(2, 1)(sigma1(x)),
                               lambda x: G.hopf.inclusion(2, 2)(sigma1(x))], G.hopf.tensor2)
    for name, g in gamma_generators(t).items():
        cid = f"{prefix}.tau1.{name}"
        try:
            img = frobenius_rewrite(sigma1(g), G.coord, Gp.coord, q, Cp)
        except Exception as exc:
            out.append(failed(f"{cid}.rewrite", "sigma1 of a coinvariant lies in the Frobenius image", exc))
            continue
        out.append(passed(f"{cid}.rewrite", "sigma1 of a coinvariant lies in the Frobenius image"))
        out.append(compare(f"{prefix}.square1.{name}", "sigma1 o inclusion = Frobenius o tau1",
                           sigma1(g), frob(img)))
        out.append(_hom_law(f"{cid}.comultiplication", "tau1 intertwines comultiplications",
                            lambda: (ff(Gp.hopf.comult(img)), ss(U.hopf.comult(g)))))
        out.append(_hom_law(f"{cid}.counit", "tau1 intertwines counits",
                            lambda: (G.hopf.base.coerce(Gp.hopf.counit(img)),
                                     G.hopf.base.coerce(U.hopf.counit(g)))))

    A = Gamma.hopf.carrier
    incl = U.inclusion_hom()
    quot = closed_immersion(G, Gamma)
    for v in U.coords:
        x = ring.var(v)
        out.append(compare(f"{prefix}.left-edge1.{v}", "quotient o sigma1 = inclusion of the kernel",
                           quot(sigma1(x)), incl(x)))
    out.append(compare(f"{prefix}.left-edge2.{G.coord}", "inclusion o sigma2 = quotient",
                       incl(sigma2(T)), quot(T)))

    # first row: kernel -> unit group -> quotient
    out.extend(check_hopf_hom(incl, U.hopf, Gamma.hopf, name=f"{prefix}.row1.injection"))
    out.append(compare(f"{prefix}.row1.injection.surjective", "the inclusion hits the generator",
                       incl(ring.var("X_T")), A.gen(Gamma.coord)))
    for name, g in gamma_generators(t).items():
        out.append(_hom_law(f"{prefix}.row1.composition-trivial.{name}",
                            "coinvariants restrict to scalars on the kernel",
                            lambda: (incl(g), A.scalar(U.hopf.counit(g)))))
    for s in range(1, q):
        x = ring.var(x_name(s))
        out.append(_hom_law(f"{prefix}.row1.expansion.X_T{s}", "expansion reconstructs the coordinate",
                            lambda: (reconstruct_from_expansion(
                                phi_inverse_expand(x, cs.inverse, cs.coaction), cs.cleaving), x)))
    # second row
    out.extend(check_kernel_sequence(G, prefix=f"{prefix}.row2").checks)
    return out


def _hom_law(cid, claim, thunk) -> Check:
    try:
        lhs, rhs = thunk()
    except Exception as exc:
        return failed(cid, claim, f"{type(exc).__name__}: {exc}")
    return compare(cid, claim, lhs, rhs)
