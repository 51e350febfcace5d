from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pineta.eta import Mod32, ProfileEntry, eta_from_fixed_points, format_fraction

nums = st.integers(0, 31).map(Mod32)


def test_fraction_rendering():
    assert str(Mod32(2)) == "1/8"
    assert str(Mod32(30)) == "-1/8"
    assert str(Mod32(14)) == "7/8"
    assert str(Mod32(18)) == "-7/8"
    assert str(Mod32(16)) == "1"
    assert str(Mod32(0)) == "0"
    assert format_fraction(4) == "1/4"


def test_fraction_value():
    assert Mod32(2).fraction() == Fraction(1, 8)
    assert Mod32(16).fraction() == 1


def test_reduction_and_negation():
    assert Mod32(34) == Mod32(2)
    assert (-Mod32(2)).num == 30
    assert (-Mod32(16)).num == 16
    assert Mod32(2).shifted().num == 18


def test_bordism_class_is_half_the_numerator():
    assert Mod32(2).bordism_class() == 1
    assert Mod32(18).bordism_class() == 9
    assert Mod32(16).bordism_class() == 8


@pytest.mark.parametrize("points, want", [([], 0), ([1], 2), ([1, -1], 0), ([1, 1, 1], 6), ([-1], 30)])
def test_fixed_point_formula(points, want):
    assert eta_from_fixed_points(points).num == want


def test_fixed_point_formula_rejects_bad_index():
    with pytest.raises(ValueError):
        eta_from_fixed_points([2])


@given(nums, nums, nums)
def test_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + Mod32(0) == a
    assert a + -a == Mod32(0)
    assert a - b == a + -b


@given(nums)
def test_shift_is_an_involution(a):
    assert a.shifted().shifted() == a
    assert a.shifted() != a


def test_label_string():
    assert ProfileEntry((0, 1, 1), 0, Mod32(0)).label_str() == "011"
