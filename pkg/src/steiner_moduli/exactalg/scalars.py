"""Rational scalars and integer combinatorics."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Scalar = Fraction
ScalarLike = Union[int, str, Fraction]


def to_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction to a normalized Fraction.

    Floats are refused: every coefficient in this package is exact.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


def format_scalar(value: Fraction) -> int | str:
    """Inverse of :func:`to_scalar` for serialization: ints stay ints."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError("binomial needs n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
