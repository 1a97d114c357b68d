import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cleft.checks import all_ok
from cleft.errors import HypothesisUnverified
from cleft.localized import LocalizedRing
from cleft.polynomial import parse_poly
from cleft.suites import grid_torsor_instance, torsor_grid_suite, xy_example_suite
from cleft.torsors import (CleftWitness, NoWitnessUpTo, candidate_monomials, check_coaction,
                           cleft_obstruction_search, contracted_product_check, make_torsor, xy_instance,
                           verify_galois_map)


def constants(p):
    return LocalizedRing((), (), p, ())


def test_hypothesis_rejected_when_key_vanishes():
    R = constants(2)
    with pytest.raises(HypothesisUnverified):
        make_torsor("finite", R, 1, 1, 1)
    assert make_torsor("finite", R, 1, 1, 0).hypothesis.endswith("is a unit")


def test_full_torsor_needs_a_unit_mod_lam():
    R = LocalizedRing(("x",), [], 3, ("x",))
    with pytest.raises(HypothesisUnverified):
        make_torsor("full", R, R.var("x"), R.var("x"))
    t = make_torsor("full", R, R.var("x"), R.var("x") + 1)
    assert "unit modulo lam" in t.hypothesis


def test_trivial_witnesses():
    R = constants(3)
    t = make_torsor("finite", R, 1, 1, 0)
    assert str(cleft_obstruction_search(t, 2)) == "CleftWitness(0)"
    zero = make_torsor("finite", R, 0, 2, 0)
    result = cleft_obstruction_search(zero, 2)
    assert isinstance(result, CleftWitness) and result.b.is_zero()


def test_witness_appears_only_at_higher_degree():
    # over F_2[x, 1/D] with D = x^3 + x + 1: a^2 + lam^2 c = D^2, and a + lam*x = D
    v = ("x",)
    R = LocalizedRing(v, [parse_poly("x^3 + x + 1", 2, v)], 2, v)
    x = R.var("x")
    t = make_torsor("finite", R, x ** 2, x + 1, x ** 2)
    assert cleft_obstruction_search(t, 0) == NoWitnessUpTo(0)
    assert str(cleft_obstruction_search(t, 1)) == "CleftWitness(x)"


def test_candidate_monomials_are_graded():
    monos = candidate_monomials(("X", "Y"), 2)
    assert len(monos) == 6 and monos[0] == (0, 0)
    assert [sum(e) for e in monos] == sorted(sum(e) for e in monos)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2), st.integers(0, 1))
def test_search_is_monotone_in_the_degree(d, extra):
    R, lam, a, c = xy_instance(2)
    t = make_torsor("finite", R, lam, a, c)
    small = cleft_obstruction_search(t, d)
    large = cleft_obstruction_search(t, d + extra)
    if isinstance(small, CleftWitness):
        assert large == small


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("lam", ["sym", 0, 1])
def test_grid_instances(p, lam):
    checks = torsor_grid_suite(p, 1, lam)
    assert checks and all_ok(checks), [c for c in checks if not c.ok]
    R, lam_v, a, c = grid_torsor_instance(p, lam)
    finite = make_torsor("finite", R, lam_v, a, c)
    assert all_ok(check_coaction(finite, "f")) and all_ok(verify_galois_map(finite, "f"))


def test_xy_instance_structure():
    R, lam, a, c = xy_instance(2)
    finite = make_torsor("finite", R, lam, a, c)
    full = make_torsor("full", R, lam, a, c)
    assert a ** 2 + lam ** 2 * c == R.frac(R.denominators[0])
    for checks in (check_coaction(finite, "f"), check_coaction(full, "g"), verify_galois_map(finite, "f"),
                   verify_galois_map(full, "g"), contracted_product_check(finite, full, "c")):
        assert checks and all_ok(checks), [x for x in checks if not x.ok]
    assert "unit modulo lam" in full.hypothesis


def test_xy_denominator_factors_over_f2():
    X, Y = sympy.symbols("X Y")
    D = X ** 2 + Y ** 2 + (X + 1) ** 2 * Y
    assert sympy.Poly(D - (Y + 1) * (X ** 2 + Y), X, Y, modulus=2).is_zero
    # over Q the polynomial is irreducible; the splitting is special to characteristic 2
    assert len(sympy.factor_list(D)[1]) == 1


def test_xy_instance_has_a_constant_witness():
    # since D = (Y+1)(X^2+Y), b = 1 gives a + lam b = Y + 1, a unit of R
    R, lam, a, c = xy_instance(2)
    result = cleft_obstruction_search(make_torsor("finite", R, lam, a, c), 2)
    assert str(result) == "CleftWitness(1)"
    assert R.is_unit(a + lam)


def test_xy_suite_reports_evidence():
    checks = xy_example_suite()
    assert all_ok(checks)
    search = [c for c in checks if c.check_id.endswith("cleft-search")]
    assert len(search) == 1 and search[0].verdict == "evidence"
    assert "claimed non-cleft" in search[0].claim


def test_witness_rendering():
    assert str(NoWitnessUpTo(2)) == "NoWitnessUpTo(2)"
