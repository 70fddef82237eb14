"""Exact conversion of user-supplied numbers to rationals."""

from decimal import Decimal
from fractions import Fraction
from numbers import Rational

from .errors import ValidationError


def to_fraction(value, name="value"):
    """Convert an int, float, Decimal, Fraction or ``"p/q"``/decimal string exactly.

    Floats are converted to the exact binary value they hold; strings are parsed
    as written, so ``"0.2"`` becomes ``1/5``.
    """
    if isinstance(value, bool):
        raise ValidationError(f"{name}: booleans are not numbers")
    if isinstance(value, (Fraction, int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise ValidationError(f"{name}: non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValidationError(f"{name}: non-finite value {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"{name}: cannot parse {value!r} as a number") from exc
    raise ValidationError(f"{name}: unsupported type {type(value).__name__}")


def half_grid_index(k, name="k"):
    """Return ``2k`` as an int, rejecting thresholds off the half-integer grid."""
    k = to_fraction(k, name)
    k2 = 2 * k
    if k2.denominator != 1:
        raise ValidationError(f"{name}={k} is not on the half-integer grid")
    return int(k2)
