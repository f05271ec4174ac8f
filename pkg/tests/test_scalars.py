import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tnfactor.scalars import (
    RadicalScalar,
    exact_add,
    exact_div,
    exact_mul,
    format_scalar,
    parse_scalar,
    radical_mul,
    rational_root,
    to_float,
)

rationals = st.fractions(max_denominator=10**6)


def test_exact_examples():
    assert exact_add(F(1, 3), F(1, 6)) == F(1, 2)
    half = F(2, 4)
    assert (half.numerator, half.denominator) == (1, 2)
    assert exact_mul(F(-3, 7), F(7, 3)) == -1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        exact_div(1, 0)


def test_floats_are_not_exact():
    with pytest.raises(TypeError):
        exact_add(0.5, 1)


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (RadicalScalar(1, F(1, 2)), RadicalScalar(3, F(1, 2)), F(3, 2)),
        (RadicalScalar(2, 3), RadicalScalar(5, 3), F(30)),
    ],
)
def test_radical_mul_equal_radicands(a, b, expected):
    out = radical_mul(a, b)
    assert isinstance(out, F)
    assert out == expected


def test_radical_mul_distinct_radicands():
    out = radical_mul(RadicalScalar(1, 2), RadicalScalar(1, 3))
    assert isinstance(out, RadicalScalar)
    assert (out.coefficient, out.radicand) == (1, 6)


def test_perfect_square_folding():
    r = RadicalScalar(1, 4)
    assert r.is_rational and r.coefficient == 2
    assert RadicalScalar(3, F(9, 16)).coefficient == F(9, 4)
    assert to_float(RadicalScalar(1, 4)) == 2.0


def test_to_float():
    assert to_float(F(1, 2)) == 0.5
    with pytest.raises(OverflowError):
        to_float(F(10**400))


def test_serialization():
    assert format_scalar(F(3)) == "3"
    assert format_scalar(F(-1, 2)) == "-1/2"
    r = RadicalScalar(F(3, 2), F(1, 5))
    assert format_scalar(r) == "3/2*sqrt(1/5)"
    assert parse_scalar("3/2*sqrt(1/5)", "radical") == r
    assert parse_scalar("7/3", "exact") == F(7, 3)
    with pytest.raises(ValueError):
        parse_scalar("0.5", "exact")
    with pytest.raises(ValueError):
        parse_scalar("nan", "float")


def test_rational_root():
    assert rational_root(F(27, 8), 3) == F(3, 2)
    assert rational_root(F(2), 2) is None
    assert rational_root(F(10**60), 4) == 10**15


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(rationals, rationals, st.fractions(min_value=0, max_value=1000, max_denominator=1000))
def test_equal_radicands_always_rational(ca, cb, d):
    out = radical_mul(RadicalScalar(ca, d), RadicalScalar(cb, d))
    assert isinstance(out, F)
    assert out == ca * cb * d


@given(st.integers(-(10**30), 10**30), st.integers(1, 10**30))
def test_to_float_relative_error(p, q):
    x = F(p, q)
    got = to_float(x)
    if x == 0:
        assert got == 0
    else:
        assert abs(F(got) - x) <= abs(x) * F(1, 2**52)
