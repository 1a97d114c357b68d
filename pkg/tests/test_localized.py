import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cleft.errors import DenominatorNotUnit, NoInverseFound, ZeroElement
from cleft.localized import LocalizedRing, localized_invert
from cleft.polynomial import parse_poly


def ring_xy(p=2):
    v = ("X", "Y")
    D = parse_poly("X^2 + Y^2 + (X+1)^2*Y", p, v)
    return LocalizedRing(v, [D], p, v)


def test_designated_denominators_are_normalized():
    R = LocalizedRing(("x",), [parse_poly("2*x + 2", 3, ("x",)), parse_poly("x + 1", 3, ("x",)),
                               parse_poly("2", 3, ("x",))], 3)
    assert [str(d) for d in R.denominators] == ["x + 1"]


def test_fraction_equality_by_cross_multiplication():
    R = LocalizedRing(("x",), [parse_poly("x", 3, ("x",))], 3)
    x = R.var("x")
    assert (x * x) / x == x
    assert R.invert(x) * x == 1
    assert str(R.invert(x * x)) == "(1) / ((x)^2)"


def test_inverse_of_factor_of_designated_denominator():
    R = ring_xy()
    # D = (Y+1)(X^2+Y) over F_2
    y1 = R.parse("Y + 1")
    inv = R.invert(y1)
    assert inv * y1 == 1
    assert R.is_unit(R.parse("X^2 + Y"))


def test_non_units_are_reported():
    R = ring_xy()
    with pytest.raises(NoInverseFound):
        R.invert(R.parse("X + Y"))
    with pytest.raises(ZeroElement):
        R.invert(R.zero())
    assert not R.is_unit(R.parse("X"))


def test_kmax_bounds_the_search():
    v = ("x",)
    R = LocalizedRing(v, [parse_poly("x", 2, v)], 2)
    u = R.frac(parse_poly("x", 2, v)) ** 3
    assert localized_invert(u, kmax=8) * u == 1


def test_coercion_needs_units():
    v = ("x",)
    small = LocalizedRing(v, [], 2)
    big = LocalizedRing(v, [parse_poly("x + 1", 2, v)], 2)
    y = big.invert(big.var("x") + 1)
    with pytest.raises(DenominatorNotUnit):
        small.coerce(y)
    assert big.coerce(small.var("x")) == big.var("x")


def test_tensor_power_shares_base_variables():
    v = ("lam", "T")
    R = LocalizedRing(v, [parse_poly("1 + lam*T", 2, v)], 2, ("lam",))
    t2 = R.tensor_power(2)
    assert set(t2.variables) == {"lam", "T|1", "T|2"}
    assert len(t2.denominators) == 2
    assert R.base_ring().variables == ("lam",)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=2, max_size=2), st.integers(1, 4))
def test_units_times_inverse(exps, k):
    R = ring_xy()
    y1, q = R.parse("Y + 1"), R.parse("X^2 + Y")
    u = y1 ** exps[0] * q ** exps[1] * k
    if k % 2 == 0:
        assert u.is_zero()
    else:
        assert R.invert(u) * u == 1
