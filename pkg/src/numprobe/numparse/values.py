"""Exact decimal numbers.

Every quantity handled by the package is a :class:`NumericValue`: a sign, an
integer coefficient and a base-10 exponent.  Arithmetic goes through
:mod:`decimal` with a wide context so that label-preservation checks can use
plain equality instead of float tolerances.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

# Wide enough that chained unit conversions stay well inside 1e-9 relative.
_CONTEXT = decimal.Context(prec=60, rounding=decimal.ROUND_HALF_EVEN)

Numberish = Union["NumericValue", int, str, decimal.Decimal, Fraction]


@dataclass(frozen=True, eq=False)
class NumericValue:
    """value = sign * digits * 10**scale_exp, kept canonical.

    Canonical form strips trailing zeros from ``digits``; zero is always
    ``(1, 0, 0)``.  Canonical storage makes field equality value equality, so
    ``NumericValue.of("1.850") == NumericValue.of("1.85")``.  Comparison with
    ``int`` and ``Decimal`` is by value; strings never compare equal.
    """

    sign: int
    digits: int
    scale_exp: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if self.digits < 0:
            raise ValueError("digits must be non-negative")
        digits, exp = self.digits, self.scale_exp
        if digits == 0:
            object.__setattr__(self, "sign", 1)
            object.__setattr__(self, "scale_exp", 0)
            return
        while digits % 10 == 0:
            digits //= 10
            exp += 1
        object.__setattr__(self, "digits", digits)
        object.__setattr__(self, "scale_exp", exp)

    # construction -------------------------------------------------------

    @classmethod
    def of(cls, x: Numberish) -> "NumericValue":
        if isinstance(x, NumericValue):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a number here")
        if isinstance(x, int):
            return cls(1 if x >= 0 else -1, abs(x), 0)
        if isinstance(x, Fraction):
            return cls.of(_CONTEXT.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator)))
        if isinstance(x, str):
            try:
                x = decimal.Decimal(x.replace(",", "").strip())
            except decimal.InvalidOperation:
                raise ValueError(f"not a decimal literal: {x!r}") from None
        if isinstance(x, decimal.Decimal):
            if not x.is_finite():
                raise ValueError("NumericValue must be finite")
            sign, digit_tuple, exp = x.as_tuple()
            digits = int("".join(map(str, digit_tuple)) or "0")
            return cls(-1 if sign else 1, digits, int(exp))
        if isinstance(x, float):
            raise TypeError("floats are not exact; pass a string or Decimal")
        raise TypeError(f"cannot make a NumericValue from {type(x).__name__}")

    # views --------------------------------------------------------------

    def to_decimal(self) -> decimal.Decimal:
        return decimal.Decimal((0 if self.sign > 0 else 1, tuple(int(c) for c in str(self.digits)), self.scale_exp))

    def to_fraction(self) -> Fraction:
        if self.scale_exp >= 0:
            return Fraction(self.sign * self.digits * 10**self.scale_exp)
        return Fraction(self.sign * self.digits, 10**-self.scale_exp)

    def __float__(self) -> float:
        return float(self.to_decimal())

    def __int__(self) -> int:
        return int(self.to_decimal())

    @property
    def is_integer(self) -> bool:
        return self.scale_exp >= 0

    @property
    def is_zero(self) -> bool:
        return self.digits == 0

    @property
    def decimals(self) -> int:
        """Number of digits after the decimal point in canonical form."""
        return max(0, -self.scale_exp)

    def plain(self) -> str:
        """Positional rendering with no exponent and no grouping."""
        return format(self.to_decimal(), "f")

    def __str__(self) -> str:
        return self.plain()

    def __repr__(self) -> str:
        return f"NumericValue({self.plain()!r})"

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: Numberish) -> "NumericValue":
        return NumericValue.of(_CONTEXT.add(self.to_decimal(), NumericValue.of(other).to_decimal()))

    __radd__ = __add__

    def __sub__(self, other: Numberish) -> "NumericValue":
        return NumericValue.of(_CONTEXT.subtract(self.to_decimal(), NumericValue.of(other).to_decimal()))

    def __rsub__(self, other: Numberish) -> "NumericValue":
        return NumericValue.of(other) - self

    def __mul__(self, other: Numberish) -> "NumericValue":
        return NumericValue.of(_CONTEXT.multiply(self.to_decimal(), NumericValue.of(other).to_decimal()))

    __rmul__ = __mul__

    def __truediv__(self, other: Numberish) -> "NumericValue":
        other = NumericValue.of(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero")
        return NumericValue.of(_CONTEXT.divide(self.to_decimal(), other.to_decimal()))

    def __neg__(self) -> "NumericValue":
        return NumericValue(-self.sign, self.digits, self.scale_exp)

    def __abs__(self) -> "NumericValue":
        return NumericValue(1, self.digits, self.scale_exp)

    def scaleb(self, exp: int) -> "NumericValue":
        """Multiply by 10**exp exactly."""
        return NumericValue(self.sign, self.digits, self.scale_exp + exp)

    def quantize(self, decimals: int, rounding: str = decimal.ROUND_HALF_UP) -> "NumericValue":
        """Round to ``decimals`` places after the point (negative = tens, hundreds...)."""
        q = decimal.Decimal((0, (1,), -decimals))
        return NumericValue.of(self.to_decimal().quantize(q, rounding=rounding, context=_CONTEXT))

    def __eq__(self, other) -> bool:
        if isinstance(other, NumericValue):
            return (self.sign, self.digits, self.scale_exp) == (other.sign, other.digits, other.scale_exp)
        if isinstance(other, (int, decimal.Decimal, Fraction)) and not isinstance(other, bool):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_fraction())

    def __lt__(self, other: Numberish) -> bool:
        return self.to_decimal() < NumericValue.of(other).to_decimal()

    def __le__(self, other: Numberish) -> bool:
        return self.to_decimal() <= NumericValue.of(other).to_decimal()

    def __gt__(self, other: Numberish) -> bool:
        return self.to_decimal() > NumericValue.of(other).to_decimal()

    def __ge__(self, other: Numberish) -> bool:
        return self.to_decimal() >= NumericValue.of(other).to_decimal()


def value_equal(a, b) -> bool:
    """Equality across representations: NumericValue, int, str literal or Decimal.

    Non-numeric values (dates) compare with ``==``.
    """
    try:
        return NumericValue.of(a) == NumericValue.of(b)
    except (TypeError, ValueError):
        return a == b


def relative_error(a: Numberish, b: Numberish) -> float:
    """|a - b| / |b| as a float, for tolerance checks."""
    a, b = NumericValue.of(a), NumericValue.of(b)
    if b.is_zero:
        return 0.0 if a.is_zero else float("inf")
    return float(abs(a - b) / abs(b))
