"""
core/rationals.py — "p/q" codec for exact rationals

Every exact quantity in shiftlab is a fractions.Fraction. Files and reports
carry them as "p/q" strings (integers as "p").
"""
from fractions import Fraction
from typing import Union

from core.errors import InputError

RationalLike = Union[Fraction, int, str]


def parse_rational(value: RationalLike) -> Fraction:
    """Parse "p/q", "p", an int or a Fraction. Floats are refused."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise InputError(f"rationals must be written as p/q, got {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"malformed rational {value!r}")
    raise InputError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def require_positive(value: Fraction, name: str) -> Fraction:
    if value <= 0:
        raise InputError(f"{name} must be positive, got {format_rational(value)}")
    return value
