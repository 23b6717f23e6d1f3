"""Exact arbitrary-size integer and rational arithmetic.

Naturals are plain Python ints (validated non-negative at the API
boundary); exact rationals are ``fractions.Fraction``, which is always
stored reduced with a positive denominator.
"""

from __future__ import annotations

import sys
from fractions import Fraction

from .errors import DomainError

Natural = int
ExactRational = Fraction


def _check_natural(n: int, name: str = "n") -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    if n < 0:
        raise DomainError(f"{name} must be >= 0, got {n}")
    return n


def _product(lo: int, hi: int, step: int) -> int:
    """Product of lo, lo+step, ... up to hi inclusive, by balanced splitting.

    Splitting keeps the two operands of every multiplication close in size,
    which is what makes large products cheap with subquadratic bigint
    multiplication.  Empty ranges yield 1.
    """
    count = (hi - lo) // step + 1 if hi >= lo else 0
    if count <= 0:
        return 1
    if count <= 8:
        r = lo
        for v in range(lo + step, hi + 1, step):
            r *= v
        return r
    mid = lo + step * (count // 2)
    return _product(lo, mid - step, step) * _product(mid, hi, step)


def factorial(n: int) -> int:
    """n! by balanced product tree; factorial(0) == 1."""
    _check_natural(n)
    if n < 2:
        return 1
    return _product(2, n, 1)


def double_fact_even(n: int) -> int:
    """2 * 4 * ... * 2n; empty product 1 for n == 0."""
    _check_natural(n)
    return _product(2, 2 * n, 2)


def double_fact_odd(n: int) -> int:
    """1 * 3 * ... * (2n - 1); empty product 1 for n == 0."""
    _check_natural(n)
    return _product(1, 2 * n - 1, 2)


def rational_sub(a: Fraction, b: Fraction) -> Fraction:
    """Exact difference, reduced with positive denominator."""
    return Fraction(a) - Fraction(b)


def decimal_length(x: int) -> int:
    """Number of decimal digits of a positive integer, computed exactly.

    Avoids converting x to a decimal string (quadratic for huge ints):
    estimates from the bit length and fixes up with exact power-of-ten
    comparisons.
    """
    if x <= 0:
        raise DomainError(f"decimal_length requires a positive integer, got {x}")
    # 30103/100000 is slightly above log10(2); the estimate is off by at
    # most a couple of units, corrected below.
    t = (x.bit_length() * 30103) // 100000
    while 10 ** t > x:
        t -= 1
    while 10 ** (t + 1) <= x:
        t += 1
    return t + 1


def to_decimal(x: int) -> str:
    """Decimal string of an integer, lifting the interpreter's int->str cap."""
    limit = getattr(sys, "get_int_max_str_digits", None)
    if limit is not None and sys.get_int_max_str_digits() != 0:
        sys.set_int_max_str_digits(0)
    return str(x)
