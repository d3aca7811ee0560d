"""Exact rational values and their canonical text form.

All variable values in this package are `fractions.Fraction` instances,
which are always normalised (lowest terms, positive denominator).  No
floating point is used anywhere: decimal literals such as ``0.5`` are
converted digit-by-digit to the exact fraction ``1/2``.
"""

from __future__ import annotations

import re
from fractions import Fraction

ValueLike = "Fraction | int | str"

_VALUE_RE = re.compile(r"-?\d+(?:\.\d+|/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``3``, ``-2``, ``1/2`` or ``0.5`` into an exact Fraction.

    Exponent notation and whitespace inside the literal are rejected so
    that the accepted shapes match the model grammar exactly.
    """
    if not _VALUE_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    if text.partition("/")[2] == "0":
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(text)


def format_rational(value: Fraction) -> str:
    """Canonical text: lowest terms, ``p/q`` or a bare integer."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_value(value) -> Fraction:
    """Coerce ints, strings and Fractions to an exact Fraction value."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not values")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")
