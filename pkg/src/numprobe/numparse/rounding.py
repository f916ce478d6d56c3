from __future__ import annotations

import decimal

from .values import NumericValue

# (exclusive upper bound on |v|, granularity exponent); beyond the last bound
# values keep three significant digits.
DEFAULT_TIERS: tuple[tuple[int, int], ...] = ((1_000, 1), (100_000, 2), (10_000_000, 3))


def granularity_exp(value, tiers=DEFAULT_TIERS) -> int:
    """Power of ten that ``round_magnitude`` rounds ``value`` to."""
    value = abs(NumericValue.of(value))
    for bound, exp in tiers:
        if value < bound:
            return exp
    adjusted = len(str(value.digits)) - 1 + value.scale_exp
    return adjusted - 2


def round_magnitude(value, tiers=DEFAULT_TIERS) -> NumericValue:
    """Round to a magnitude-dependent granularity, half away from zero.

    |v| < 1,000 -> tens; < 100,000 -> hundreds; < 10,000,000 -> thousands;
    otherwise three significant digits (116,111,561 -> 116,000,000).
    """
    value = NumericValue.of(value)
    return value.quantize(-granularity_exp(value, tiers), rounding=decimal.ROUND_HALF_UP)
