"""Exact Wallis partial products and their square-root limit forms.

W_n = (2n)!!^2 / ((2n-1)!!^2 (2n+1)) is kept as an exact rational; the
companion sequences L_n = 4^n n!^2 / (sqrt(n) (2n)!) and the rescaled
variant with sqrt(2n+1) carry the only irrational factor in a single
square-root enclosure, so their widths stay near optimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import enclosure as en
from .enclosure import Interval, Precision, PrecisionLike
from .errors import DomainError
from .exactcore import double_fact_even, double_fact_odd, factorial


@dataclass(frozen=True)
class WallisRow:
    """Per-n bundle: exact partial product plus the two enclosure forms."""

    n: int
    W: Fraction
    L: Interval
    R: Interval


def _require_index(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"index must be an integer >= 1, got {n!r}")


def wallis_partial(n: int) -> Fraction:
    """Exact W_n = (2n)!!^2 / ((2n-1)!!^2 (2n+1)); strictly increasing."""
    _require_index(n)
    even = double_fact_even(n)
    odd = double_fact_odd(n)
    return Fraction(even * even, odd * odd * (2 * n + 1))


def lemma_ratio_squared(n: int) -> Fraction:
    """Exact 2^(4n) n!^4 / ((2n)!^2 (2n+1)); equals wallis_partial(n)."""
    _require_index(n)
    f = factorial(n)
    f2 = factorial(2 * n)
    return Fraction((f ** 4) << (4 * n), f2 * f2 * (2 * n + 1))


def _core_fraction(n: int) -> Fraction:
    # 4^n n!^2 / (2n)!, the rational part shared by both limit forms
    f = factorial(n)
    return Fraction((f * f) << (2 * n), factorial(2 * n))


def lemma_L(n: int, p: PrecisionLike) -> Interval:
    """Enclosure of L_n = 4^n n!^2 / (sqrt(n) (2n)!); decreases to sqrt(pi)."""
    _require_index(n)
    hi = Precision(en._bits(p) + en.GUARD_BITS)
    q = en.from_rational(_core_fraction(n), hi)
    return en.div(q, en.sqrt(en.from_int(n), hi), p)


def lemma_rescaled(n: int, p: PrecisionLike) -> Interval:
    """Enclosure of 4^n n!^2 / ((2n)! sqrt(2n+1)); tends to sqrt(pi/2)."""
    _require_index(n)
    hi = Precision(en._bits(p) + en.GUARD_BITS)
    q = en.from_rational(_core_fraction(n), hi)
    return en.div(q, en.sqrt(en.from_int(2 * n + 1), hi), p)


def wallis_row(n: int, p: PrecisionLike) -> WallisRow:
    _require_index(n)
    return WallisRow(n=n, W=wallis_partial(n), L=lemma_L(n, p), R=lemma_rescaled(n, p))
