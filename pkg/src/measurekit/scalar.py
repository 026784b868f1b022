"""Exact rational scalars.

Every number in the library is a :class:`fractions.Fraction`.  This module
holds the coercion and formatting helpers; floats are refused so nothing
inexact can leak into a computation.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational
from typing import Union

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

# CPython refuses int<->str conversions beyond ~4300 digits; chunk below that.
_CHUNK_DIGITS = 1000
_CHUNK = 10**_CHUNK_DIGITS


def _int_to_str(value: int) -> str:
    try:
        return str(value)
    except ValueError:
        pass
    sign = "-" if value < 0 else ""
    value = abs(value)
    chunks = []
    while value:
        value, rest = divmod(value, _CHUNK)
        chunks.append(rest)
    head = str(chunks.pop())
    return sign + head + "".join(str(c).zfill(_CHUNK_DIGITS) for c in reversed(chunks))


def _str_to_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        pass
    text = text.strip()
    sign = -1 if text.startswith("-") else 1
    digits = text.lstrip("+-")
    if not digits.isdigit():
        raise ValueError(f"invalid integer literal: {text[:40]!r}")
    value = 0
    for start in range(0, len(digits), _CHUNK_DIGITS):
        part = digits[start:start + _CHUNK_DIGITS]
        value = value * 10 ** len(part) + int(part)
    return sign * value


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ``Fraction``, ``int`` and strings such as ``"-3/8"``, ``"7"`` or
    ``"0.25"`` (decimal strings are read exactly).  Floats raise ``TypeError``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except ValueError:
            num, sep, den = text.partition("/")
            if not sep:
                raise
            return Fraction(_str_to_int(num), _str_to_int(den))
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar: {value!r}")


def format_scalar(value: Fraction) -> str:
    """Canonical ``"p/q"`` text (``"p"`` for integers)."""
    value = to_scalar(value)
    num = _int_to_str(value.numerator)
    if value.denominator == 1:
        return num
    return f"{num}/{_int_to_str(value.denominator)}"


def decimal_str(value: Fraction, digits: int = 12) -> str:
    """Decimal approximation with ``digits`` significant digits."""
    value = to_scalar(value)
    with localcontext() as ctx:
        ctx.prec = digits
        dec = Decimal(value.numerator) / Decimal(value.denominator)
        return "{:g}".format(dec)


def is_large(value: Fraction, bits: int = 256) -> bool:
    return value.numerator.bit_length() > bits or value.denominator.bit_length() > bits
