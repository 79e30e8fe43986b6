"""
Rational scalars and their string encoding.

Scalars are ``fractions.Fraction`` values; they are always in lowest terms
with a positive denominator, so equality is canonical-form equality.
"""

import re
from fractions import Fraction
from typing import Iterable, Optional, Tuple, Union

from src.errors import ParseError

Scalar = Fraction
Vector = Tuple[Fraction, ...]
ScalarLike = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_PATTERN = re.compile(r'^(-?\d+)(?:/(\d+))?$')


def parse_rational(text: str, location: Optional[str] = None) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (sign on the numerator) into a Fraction."""
    if not isinstance(text, str):
        raise ParseError('malformed_rational', f"Expected a rational string, got {text!r}", location)

    match = _RATIONAL_PATTERN.match(text.strip())
    if not match:
        raise ParseError('malformed_rational', f"Invalid rational: '{text}' - expected 'p/q' or 'p'", location)

    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ParseError('zero_denominator', f"Invalid rational: '{text}' - zero denominator", location)

    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Canonical string form: ``"p"`` when the denominator is 1, else ``"p/q"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce ints, Fractions and rational strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"Cannot interpret {value!r} as an exact rational")


def vector(values: Iterable[ScalarLike]) -> Vector:
    return tuple(as_scalar(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def is_zero_vector(v: Vector) -> bool:
    return not any(v)


def add_vectors(v: Vector, w: Vector) -> Vector:
    return tuple(a + b for a, b in zip(v, w))


def sub_vectors(v: Vector, w: Vector) -> Vector:
    return tuple(a - b for a, b in zip(v, w))


def scale_vector(c: Fraction, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def dot(v: Vector, w: Vector) -> Fraction:
    return sum((a * b for a, b in zip(v, w) if a and b), ZERO)
