"""Named verification suites, one grid point at a time."""

from __future__ import annotations

from math import comb

from .catalog import (alpha_hom, alpha_tilde, alpha_tilde_inverse, base_ring, catalog, check_kernel_sequence,
                      check_scheme, frobenius_hom, make_scheme, wrong_frobenius)
from .checks import Check, compare, failed, guarded, passed, prefixed, verdict
from .errors import HypothesisUnverified
from .homs import identity
from .hopf import UnitGroup, check_hopf_axioms, check_hopf_hom, induced_unit_group_hom
from .linalg import laplace_det
from .localized import LocalizedRing
from .polynomial import parse_poly
from .resolution import (build_cleft_structure, compute_P_table, gamma_coinvariant_suite, mu_coinvariant_suite,
                         comparison_diagram_suite)
from .torsors import make_torsor, xy_instance, torsor_suite

SUITES = ("axioms", "unitgroup", "kummer", "mu", "gamma", "diagram", "torsor")
DEFAULT_GRID = tuple((p, n, lam) for p, n in ((2, 1), (3, 1), (2, 2)) for lam in ("sym", 0, 1))


def lam_label(lam):
    return "sym" if lam in ("sym", None) else str(lam)


def negative_control(cid, claim, checks, key=None) -> Check:
    """Passes when at least one of ``checks`` (restricted to ids containing
    ``key``) fails; the first failure's witness is reported."""
    pool = [c for c in checks if key is None or key in c.check_id]
    for c in pool:
        if not c.ok:
            return passed(cid, claim, f"rejected at {c.check_id}: {c.witness}")
    return failed(cid, claim, "incorrect data was accepted")


# -- axioms ----------------------------------------------------------------------------

def axioms_suite(p, n, lam="sym", **_) -> list:
    prefix = f"axioms.p{p}n{n}.{lam_label(lam)}"
    out = []
    schemes = {G.tag: G for G in catalog(p, n, lam)}
    for G in schemes.values():
        out.extend(guarded(f"{prefix}.{G.name}", "Hopf axioms", lambda G=G: prefixed(prefix, check_scheme(G))))
    GL, Gm, Mu, Gamma = schemes["GLambda"], schemes["Gm"], schemes["Mu"], schemes["GammaLambda"]
    out.extend(guarded(f"{prefix}.alpha", "alpha is a Hopf map",
                       lambda: check_hopf_hom(alpha_hom(GL, Gm), Gm.hopf, GL.hopf, name=f"{prefix}.alpha")))
    out.extend(guarded(f"{prefix}.alpha-tilde", "alpha~ is a Hopf map",
                       lambda: check_hopf_hom(alpha_tilde(Gamma, Mu), Mu.hopf, Gamma.hopf,
                                              name=f"{prefix}.alpha-tilde")))
    if lam_label(lam) not in ("sym", "0"):
        out.extend(guarded(f"{prefix}.alpha-tilde-inverse", "alpha~ is invertible for a unit lam",
                           lambda: _alpha_tilde_inverse_checks(Gamma, Mu, prefix)))
    for G in (Gm, GL):
        def frob_checks(G=G):
            hom, target = frobenius_hom(G)
            return check_hopf_hom(hom, target.hopf, G.hopf, name=f"{prefix}.frobenius.{G.name}")
        out.extend(guarded(f"{prefix}.frobenius.{G.name}", "Frobenius is a Hopf map", frob_checks))
    out.extend(guarded(f"{prefix}.frobenius-identity", "Delta(T)^q expands termwise",
                       lambda: [_frobenius_identity(GL, prefix)]))
    out.extend(negative_controls(p, n, lam, prefix))
    return out


def _alpha_tilde_inverse_checks(Gamma, Mu, prefix):
    f = alpha_tilde(Gamma, Mu)
    g = alpha_tilde_inverse(Gamma, Mu)
    out = []
    u = Mu.hopf.gen(Mu.coord)
    t = Gamma.hopf.gen(Gamma.coord)
    out.append(compare(f"{prefix}.alpha-tilde-inverse.left", "alpha~ then its inverse is the identity",
                       g(f(u)), u))
    out.append(compare(f"{prefix}.alpha-tilde-inverse.right", "inverse then alpha~ is the identity",
                       f(g(t)), t))
    return out


def _frobenius_identity(GL, prefix) -> Check:
    H = GL.hopf
    q = GL.p ** GL.n
    t2 = H.tensor2
    a, b = t2.var(f"{GL.coord}|1"), t2.var(f"{GL.coord}|2")
    lam = t2.coerce(GL.lam)
    return compare(f"{prefix}.frobenius-identity", "Delta(T)^q = T^q(x)1 + 1(x)T^q + lam^q T^q(x)T^q",
                   H.comult(H.gen(GL.coord)) ** q, a ** q + b ** q + lam ** q * a ** q * b ** q)


def negative_controls(p, n, lam, prefix) -> list:
    out = []

    def gamma_printed(carrier, coord, lam_value):
        x = carrier.gen(coord)
        return -(1 + x * carrier.scalars.coerce(lam_value)).invert()

    bad = make_scheme("GammaLambda", p, n, lam=lam, antipode=gamma_printed)
    out.append(negative_control(f"{prefix}.negative.gamma-antipode",
                                "T -> -1/(1+lam T) is rejected as an antipode",
                                check_hopf_axioms(bad.hopf), ".antipode-left."))
    if p != 2:
        # at p = 2 the map U -> -1/U equals U -> 1/U and is a valid antipode
        def mu_printed(carrier, coord, lam_value):
            return -carrier.gen(coord).invert()

        bad = make_scheme("Mu", p, n, lam=lam, antipode=mu_printed)
        out.append(negative_control(f"{prefix}.negative.mu-antipode", "U -> -1/U is rejected as an antipode",
                                    check_hopf_axioms(bad.hopf), ".antipode-left."))
    for tag in ("Gm", "GLambda"):
        G = make_scheme(tag, p, n, lam=lam)
        report = check_kernel_sequence(G, frob=wrong_frobenius(G), prefix=f"{prefix}.wrong-frobenius.{G.name}")
        out.append(negative_control(f"{prefix}.negative.wrong-frobenius.{G.name}",
                                    "T -> T^(q-1) fails the composition-trivial proxy",
                                    report.checks, "composition-trivial"))
    return out


# -- unit groups -----------------------------------------------------------------------

def unitgroup_suite(p, n, lam="sym", **_) -> list:
    prefix = f"unitgroup.p{p}n{n}.{lam_label(lam)}"
    out = []
    base = base_ring(p, lam)
    Mu = make_scheme("Mu", p, n, base=base)
    Gamma = make_scheme("GammaLambda", p, n, base=base)
    try:
        UM = UnitGroup(Mu.hopf, prefix="Y")
        UG = UnitGroup(Gamma.hopf, prefix="X")
    except Exception as exc:
        return [failed(f"{prefix}.build", "unit groups can be built", f"{type(exc).__name__}: {exc}")]
    q = p ** n
    for U in (UM, UG):
        out.extend(prefixed(prefix, check_hopf_axioms(U.hopf, basis_too=False)))
        out.append(compare(f"{prefix}.{U.name}.cofactor-oracle", "determinant agrees with cofactor expansion",
                           U.determinant(), laplace_det(U.polynomial_matrix())))
    out.append(verdict(f"{prefix}.{UM.name}.diagonal", "regular representation of mu is diagonal",
                       all(not UM.rep.structure[j][i] or i == j for j in range(q) for i in range(q))))
    out.append(verdict(f"{prefix}.{UG.name}.triangular", "regular representation of Gamma is triangular",
                       UG.rep.is_triangular()))
    mu_formula = UM.ring.one()
    for v in UM.coords:
        mu_formula = mu_formula * UM.ring.var(v)
    out.append(compare(f"{prefix}.{UM.name}.determinant", "determinant = product of all Y coordinates",
                       UM.ring.frac(UM.determinant()), mu_formula))
    lam_r = UG.ring.coerce(Gamma.lam)
    gamma_formula = UG.ring.one()
    for r in range(q):
        gamma_formula = gamma_formula * d_factor(UG, r, lam_r)
    out.append(compare(f"{prefix}.{UG.name}.determinant",
                       "determinant = product over r of sum_k C(r,k) lam^k X_T^k",
                       UG.ring.frac(UG.determinant()), gamma_formula))
    # the induced map on unit groups
    try:
        ua = induced_unit_group_hom(alpha_tilde(Gamma, Mu), UG, UM)
    except Exception as exc:
        out.append(failed(f"{prefix}.U(alpha-tilde).well-defined", "U(alpha~) is defined", exc))
        return out
    out.append(passed(f"{prefix}.U(alpha-tilde).well-defined", "U(alpha~) is defined"))
    for s, v in enumerate(UM.coords):
        out.append(compare(f"{prefix}.U(alpha-tilde).{v}", "Y_U^s -> sum_k C(s,k) lam^k X_T^k",
                           ua(UM.ring.var(v)), d_factor(UG, s, lam_r)))
    out.extend(check_hopf_hom(ua, UM.hopf, UG.hopf, name=f"{prefix}.U(alpha-tilde)"))
    for U in (UM, UG):
        ident = induced_unit_group_hom(identity(U.source.carrier), U, U)
        for v in U.coords:
            x = U.ring.var(v)
            out.append(compare(f"{prefix}.{U.name}.functorial-identity.{v}", "U(id) = id", ident(x), x))
    if lam_label(lam) not in ("sym", "0"):
        ub = induced_unit_group_hom(alpha_tilde_inverse(Gamma, Mu), UM, UG)
        for U, f, g in ((UM, ua, ub), (UG, ub, ua)):
            for v in U.coords:
                x = U.ring.var(v)
                out.append(compare(f"{prefix}.{U.name}.inverse-round-trip.{v}",
                                   "U(alpha~) and U(alpha~^-1) are mutually inverse", g(f(x)), x))
    cs = build_cleft_structure(Gamma)
    one = cs.inverse.values[(0,)]
    out.append(compare(f"{prefix}.psi-inverse.1", "psi^-1(T^0) = 1/X_1", one, cs.ring.invert(cs.ring.var("X_1"))))
    return out


def d_factor(U: UnitGroup, s, lam):
    ring = U.ring
    acc = ring.zero()
    for k in range(s + 1):
        acc = acc + comb(s, k) * lam ** k * U.coordinate(k)
    return acc


# -- sequences ---------------------------------------------------------------------------

def kummer_suite(p, n, lam="sym", **_) -> list:
    prefix = f"kummer.p{p}n{n}.{lam_label(lam)}"
    out = []
    for tag in ("Gm", "GLambda"):
        def run(tag=tag):
            G = make_scheme(tag, p, n, lam=lam)
            return check_kernel_sequence(G, prefix=f"{prefix}.{G.name}").checks
        out.extend(guarded(f"{prefix}.{tag}", "exact sequence proxies", run))
    return out


# -- resolution --------------------------------------------------------------------------

def _table(cache, p, n, lam):
    key = (p, n, lam_label(lam))
    if cache is not None and key in cache:
        return cache[key]
    try:
        table = compute_P_table(p, n, lam)
    except Exception:
        table = None
    if cache is not None:
        cache[key] = table
    return table


def mu_suite(p, n, lam="sym", **_) -> list:
    return guarded(f"mu.p{p}n{n}.{lam_label(lam)}", "coinvariants of U(mu)",
                   lambda: mu_coinvariant_suite(p, n, lam))


def gamma_suite(p, n, lam="sym", cache=None, **_) -> list:
    return guarded(f"gamma.p{p}n{n}.{lam_label(lam)}", "coinvariants of U(Gamma)",
                   lambda: gamma_coinvariant_suite(p, n, lam, table=_table(cache, p, n, lam)))


def diagram_suite(p, n, lam="sym", cache=None, **_) -> list:
    return guarded(f"diagram.p{p}n{n}.{lam_label(lam)}", "comparison diagrams",
                   lambda: comparison_diagram_suite(p, n, lam, table=_table(cache, p, n, lam)))


# -- torsors -----------------------------------------------------------------------------

def grid_torsor_instance(p, lam):
    """a = 1 and c = lam for symbolic lam (localized at 1 + lam^(p+1)); c = 0 otherwise."""
    if lam_label(lam) == "sym":
        R = LocalizedRing(("lam",), [parse_poly(f"1 + lam^{p + 1}", p, ("lam",))], p, ("lam",))
        return R, R.var("lam"), R.one(), R.var("lam")
    R = LocalizedRing((), (), p, ())
    return R, R.const(int(lam)), R.one(), R.zero()


def torsor_grid_suite(p, n, lam="sym", search_degree=2, kmax=4, **_) -> list:
    prefix = f"torsor.p{p}.{lam_label(lam)}"
    R, lam_v, a, c = grid_torsor_instance(p, lam)
    out = guarded(prefix, "torsor checks", lambda: torsor_suite(R, lam_v, a, c, prefix, search_degree, kmax))
    if lam_label(lam) == "1":
        R1 = LocalizedRing((), (), p, ())
        cid = f"{prefix}.negative.hypothesis"
        claim = "lam = a = c = 1 is rejected when a^p + lam^p c = 2 vanishes" if p == 2 else \
            "lam = a = 1, c = -1 is rejected since a^p + lam^p c = 0"
        cval = 1 if p == 2 else p - 1
        try:
            make_torsor("finite", R1, 1, 1, cval)
        except HypothesisUnverified as exc:
            out.append(passed(cid, claim, str(exc)))
        else:
            out.append(failed(cid, claim, "the hypothesis was accepted"))
    return out


def xy_example_suite(search_degree=2, kmax=4) -> list:
    """The two-variable example over F_2 with lam = X+1, a = X+Y, c = Y."""
    prefix = "torsor.p2.xy-example"
    R, lam, a, c = xy_instance(2)
    out = [compare(f"{prefix}.designated-denominator", "a^p + lam^p c is the designated denominator",
                   a ** 2 + lam ** 2 * c, R.frac(R.denominators[0]))]
    out.extend(guarded(prefix, "torsor checks",
                       lambda: torsor_suite(R, lam, a, c, prefix, search_degree, kmax,
                                            label_instance="claimed non-cleft")))
    return out


RUNNERS = {
    "axioms": axioms_suite,
    "unitgroup": unitgroup_suite,
    "kummer": kummer_suite,
    "mu": mu_suite,
    "gamma": gamma_suite,
    "diagram": diagram_suite,
    "torsor": torsor_grid_suite,
}


def run_suite(name, p, n, lam, **options) -> list:
    return guarded(f"{name}.p{p}n{n}.{lam_label(lam)}", f"{name} suite",
                   lambda: RUNNERS[name](p, n, lam, **options))
