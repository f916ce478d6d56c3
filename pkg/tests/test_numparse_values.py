from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from numprobe.numparse import NumericValue, relative_error, value_equal


def test_canonical_strips_trailing_zeros():
    v = NumericValue.of("1.850")
    assert (v.sign, v.digits, v.scale_exp) == (1, 185, -2)
    assert v == NumericValue.of("1.85")
    assert NumericValue.of("1200") == NumericValue(1, 12, 2)


def test_zero_is_unique():
    assert NumericValue.of("-0.000") == NumericValue.of(0)
    assert NumericValue(-1, 0, 5) == NumericValue(1, 0, 0)


def test_grouped_literal_and_rejects_float():
    assert NumericValue.of("116,111,561") == 116111561
    with pytest.raises(TypeError):
        NumericValue.of(1.5)


@given(st.decimals(allow_nan=False, allow_infinity=False, places=6, min_value=-10**12, max_value=10**12),
       st.decimals(allow_nan=False, allow_infinity=False, places=6, min_value=-10**12, max_value=10**12))
def test_exact_arithmetic_matches_fraction(a, b):
    x, y = NumericValue.of(a), NumericValue.of(b)
    assert (x + y).to_fraction() == Fraction(a) + Fraction(b)
    assert (x - y).to_fraction() == Fraction(a) - Fraction(b)
    assert (x * y).to_fraction() == Fraction(a) * Fraction(b)
    assert (x < y) == (a < b)


def test_value_equal_across_representations():
    assert value_equal("2", 2)
    assert value_equal(Decimal("1.50"), "1.5")
    assert not value_equal("2", "3")


def test_relative_error():
    assert relative_error("105", "100") == pytest.approx(0.05)
    assert relative_error(0, 0) == 0.0
