from math import comb

import pytest
import sympy

from cleft.catalog import make_scheme
from cleft.checks import all_ok
from cleft.errors import RewriteFailed
from cleft.localized import LocalizedRing
from cleft.resolution import (build_cleft_structure, comparison_diagram_suite, compute_P_table, frobenius_rewrite,
                              gamma_coinvariant_suite, mu_coinvariant_suite)

from oracle import to_sympy

GRID = [(p, n, lam) for p, n in ((2, 1), (3, 1), (2, 2)) for lam in ("sym", 0, 1)]

# values computed by the package and cross-checked against the rational-function
# recursion below (evaluated over Q with sympy, then reduced mod p)
FROZEN_P = {
    (3, 1, "sym", 2): "(2*X_1^2*X_T2 + X_1*X_T^2) / ((lam^2*X_T2 + 2*lam*X_T + X_1))",
    (3, 1, 0, 2): "2*X_1*X_T2 + X_T^2",
    (2, 2, "sym", 2): "(X_1^2*X_T2 + X_1*X_T^2) / ((lam^2*X_T2 + X_1))",
    (2, 2, "sym", 3): "(lam^2*X_1^2*X_T^2*X_T3 + lam^2*X_1*X_T^3*X_T2 + X_1^4*X_T3 + X_1^3*X_T*X_T2)"
                      " / ((lam^2*X_T2 + X_1)*(lam^3*X_T3 + lam^2*X_T2 + lam*X_T + X_1))",
}


def sympy_P_table(q):
    lam = sympy.Symbol("lam")
    X = [sympy.Symbol("X_1"), sympy.Symbol("X_T")] + [sympy.Symbol(f"X_T{k}") for k in range(2, q)]

    def d(s):
        return sum(comb(s, k) * lam ** k * X[k] for k in range(s + 1))

    P = {}
    for s in range(2, q):
        val = (X[0] + lam * X[1]) ** s * X[0] / d(s) - X[0] ** s
        for k in range(2, s):
            val -= comb(s, k) * lam ** k * X[0] ** (s - k) * P[k]
        P[s] = sympy.together(val / lam ** s)
    return P


@pytest.mark.parametrize("p,n", [(3, 1), (2, 2)])
def test_P_values_against_rational_recursion(p, n):
    table = compute_P_table(p, n, "sym")
    reference = sympy_P_table(p ** n)
    for s, value in table.entries.items():
        v = value.normalized()
        num, den = sympy.fraction(sympy.together(reference[s] * to_sympy(v.denominator_poly()) - to_sympy(v.num)))
        gens = sorted(num.free_symbols | den.free_symbols, key=str) or [sympy.Symbol("z")]
        assert sympy.Poly(sympy.expand(num), *gens, modulus=p).is_zero
        assert not sympy.Poly(sympy.expand(den), *gens, modulus=p).is_zero


@pytest.mark.parametrize("key", sorted(FROZEN_P, key=str))
def test_frozen_P_values(key):
    p, n, lam, s = key
    assert str(compute_P_table(p, n, lam).entries[s]) == FROZEN_P[key]


def test_Q_and_solve_back_at_p3():
    t = compute_P_table(3, 1, "sym")
    R = t.ring
    X1, XT, X2, lam = R.var("X_1"), R.var("X_T"), R.var("X_T2"), R.var("lam")
    assert t.Q[2] == X1 * XT ** 2
    d2 = X1 + 2 * lam * XT + lam ** 2 * X2
    assert X2 == (t.Q[2] - (X1 + 2 * lam * XT) * t.entries[2]) / (X1 ** 2 + lam ** 2 * t.entries[2])
    assert t.entries[2] == (-X1 ** 2 * X2 + t.Q[2]) / d2


@pytest.mark.parametrize("p,n", [(3, 1), (2, 2)])
def test_P_coinvariant_and_projector(p, n):
    t = compute_P_table(p, n, "sym")
    cs = t.structure
    for s, val in t.entries.items():
        assert cs.coaction.is_coinvariant(val)
        assert t.lam_exponent[s] == 0


def test_lam_zero_specialization_is_polynomial():
    t = compute_P_table(3, 1, 0)
    assert t.entries[2].is_polynomial()


def test_frobenius_rewrite():
    R = LocalizedRing(("lam", "T"), [], 2, ("lam",))
    S = LocalizedRing(("lam", "T'"), [], 2, ("lam",))
    x = R.parse("T^4 + lam*T^8 + 1")
    assert frobenius_rewrite(x, "T", "T'", 4, S) == S.parse("T' + lam*T'^2 + 1")
    with pytest.raises(RewriteFailed):
        frobenius_rewrite(R.parse("T^2"), "T", "T'", 4, S)


@pytest.mark.parametrize("p,n,lam", GRID)
def test_mu_suite(p, n, lam):
    checks = mu_coinvariant_suite(p, n, lam)
    assert checks and all_ok(checks), [c for c in checks if not c.ok]


@pytest.mark.parametrize("p,n,lam", GRID)
def test_gamma_suite(p, n, lam):
    checks = gamma_coinvariant_suite(p, n, lam)
    assert checks and all_ok(checks), [c for c in checks if not c.ok]
    ids = {c.check_id for c in checks}
    assert any(".xi-chi." in i for i in ids) and any(".chi-xi." in i for i in ids)


@pytest.mark.parametrize("p,n,lam", GRID)
def test_diagram_suite(p, n, lam):
    checks = comparison_diagram_suite(p, n, lam)
    assert checks and all_ok(checks), [c for c in checks if not c.ok]
    ids = " ".join(c.check_id for c in checks)
    for part in ("sigma1", "tau1", "sigma2", "tau2", "square1", "square2", "row1", "row2"):
        assert part in ids


def test_mu_expansion_formula():
    cs = build_cleft_structure(make_scheme("Mu", 2, 1))
    checks = [c for c in mu_coinvariant_suite(2, 1) if ".expansion." in c.check_id]
    assert len(checks) >= 3 and all_ok(checks)
    assert cs.unit_group.coords == ["Y_1", "Y_U"]
