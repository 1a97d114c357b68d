import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cleft.errors import NotFiniteFree, ZeroElement
from cleft.freealg import (Factor, FiniteFreeAlgebra, cramer_invert, nilpotent_split_invert, pure_power,
                           roots_of_unity, scalar_ring, truncated)
from cleft.localized import LocalizedRing


def lam_ring(p):
    return LocalizedRing(("lam",), [], p, ("lam",))


def test_truncated_multiplication():
    A = FiniteFreeAlgebra([truncated("T", 3)], lam_ring(3))
    T = A.gen("T")
    assert T ** 3 == 0
    assert A.rank == 3 and [A.basis_label(e) for e in A.basis()] == ["1", "T", "T2"]


def test_roots_of_unity_and_pure_power():
    A = FiniteFreeAlgebra([roots_of_unity("U", 4)], scalar_ring(2))
    assert A.gen("U") ** 4 == 1
    R = lam_ring(2)
    B = FiniteFreeAlgebra([pure_power("X'", 2, R.var("lam"))], R)
    assert B.gen("X'") ** 2 == B.scalar(R.var("lam"))


def test_nilpotent_inverse():
    R = lam_ring(2)
    A = FiniteFreeAlgebra([truncated("T", 4)], R)
    u = 1 + A.scalar(R.var("lam")) * A.gen("T")
    inv = nilpotent_split_invert(u)
    assert inv * u == 1
    assert str(inv) == "(lam^3)*T^3 + (lam^2)*T^2 + (lam)*T + 1"


def test_cramer_inverse_without_augmentation():
    v = ("c",)
    R = LocalizedRing(v, [], 3, v)
    R = LocalizedRing(v, [R.parse("c").num], 3, v)
    A = FiniteFreeAlgebra([pure_power("x", 3, R.var("c"))], R)
    u = A.gen("x")
    assert cramer_invert(u) * u == 1
    assert u.invert() == A.gen("x") ** 2 * A.scalar(R.invert(R.var("c")))


def test_zero_is_not_invertible():
    A = FiniteFreeAlgebra([truncated("T", 2)], scalar_ring(2))
    with pytest.raises(ZeroElement):
        A.zero().invert()


def test_bad_factor():
    with pytest.raises(NotFiniteFree):
        FiniteFreeAlgebra([Factor("T", 2, (0,))], scalar_ring(2))


def test_tensor_power_names_and_embedding():
    A = FiniteFreeAlgebra([truncated("T", 2)], scalar_ring(2))
    A2 = A.tensor_power(2)
    assert A2.names == ("T|1", "T|2") and A2.rank == 4
    A3 = A.tensor_power(3)
    x = A2.gen("T|1") * A2.gen("T|2")
    assert A3.coerce(x) == A3.gen("T|1") * A3.gen("T|2")


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.integers(1, 2))
def test_units_with_nonzero_augmentation_invert(coeffs, lead):
    A = FiniteFreeAlgebra([truncated("T", 3)], lam_ring(3))
    T = A.gen("T")
    u = A.scalar(lead) + sum((A.scalar(c) * T ** (i + 1) for i, c in enumerate(coeffs[:2])), A.zero())
    assert u.invert() * u == 1
