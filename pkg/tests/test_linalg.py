import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cleft.errors import DeterminantZero
from cleft.linalg import bareiss_det, is_triangular, laplace_det, solve_linear
from cleft.localized import LocalizedRing
from cleft.polynomial import Poly, parse_poly

from oracle import same_mod_p, sympy_det_mod_p

V = ("a", "b")


def entries(p):
    term = st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(1, p - 1))
    return st.lists(term, max_size=3).map(lambda ts: Poly(V, dict(ts), p))


@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_determinants_agree_with_each_other_and_sympy(data):
    p = data.draw(st.sampled_from([2, 3, 5]))
    n = data.draw(st.integers(1, 4))
    m = [[data.draw(entries(p)) for _ in range(n)] for _ in range(n)]
    d = bareiss_det(m)
    assert d == laplace_det(m)
    assert same_mod_p(d, sympy_det_mod_p(m, p), p)


def test_triangular_detection():
    one, zero = Poly.const(1, V, 2), Poly.zero(V, 2)
    assert is_triangular([[one, one], [zero, one]])
    assert is_triangular([[one, zero], [one, one]])
    assert not is_triangular([[one, one], [one, one]])


def test_solve_triangular_and_general():
    R = LocalizedRing(V, [parse_poly("a", 3, V), parse_poly("b", 3, V)], 3)
    a, b = R.var("a"), R.var("b")
    upper = [[a, b], [R.zero(), b]]
    x = solve_linear(R, upper, [R.one(), R.one()])
    assert a * x[0] + b * x[1] == 1 and b * x[1] == 1
    general = [[R.one(), R.one()], [R.one(), R.const(2)]]
    y = solve_linear(R, general, [a, b])
    assert y[0] + y[1] == a and y[0] + 2 * y[1] == b


def test_singular_system():
    R = LocalizedRing(V, [], 2)
    with pytest.raises(DeterminantZero):
        solve_linear(R, [[R.one(), R.one()], [R.one(), R.one()]], [R.one(), R.zero()])
