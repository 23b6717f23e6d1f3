"""Certified evaluation of the normalized factorial sequences.

The objects here are a_n = n! / (sqrt(n) n^n e^-n) and b_n = ln(a_n),
together with the exact substitution k = 1/(2n+1), the series form of the
difference b_n - b_{n+1} = sum_{i>=1} k^(2i)/(2i+1), and the exact
telescoping bound 1/(4n) - 1/(4(n+1)) that the difference stays under.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import enclosure as en
from .enclosure import Dyadic, Interval, Precision, PrecisionLike
from .errors import DomainError
from .exactcore import factorial

#: At or below this n, b_n is evaluated through the exact factorial; above
#: it, through a running sum of per-integer log enclosures (the exact path
#: is the stronger cross-check at small n, the sum path scales).
EXACT_FACTORIAL_LIMIT = 10_000


@dataclass(frozen=True)
class StirlingRow:
    """Per-n bundle of certified values."""

    n: int
    k: Fraction
    a: Interval
    b: Interval
    b_diff: Interval
    tail: Fraction


def _require_index(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"sequence index must be an integer >= 1, got {n!r}")


def k_of(n: int) -> Fraction:
    """Exact k = 1/(2n+1); satisfies (1+k)/(1-k) = (n+1)/n."""
    _require_index(n)
    return Fraction(1, 2 * n + 1)


def tail_of(n: int) -> Fraction:
    """Exact 1/(4n) - 1/(4(n+1)) = 1/(4n(n+1))."""
    _require_index(n)
    return Fraction(1, 4 * n * (n + 1))


class LogFactorialSum:
    """Running enclosure of ln(m!) as a sum of per-integer log enclosures.

    Used for n beyond EXACT_FACTORIAL_LIMIT and by sweep drivers that walk n
    upward; widths grow linearly in the number of terms, which the working
    guard bits absorb.
    """

    def __init__(self, wb: int):
        self._wb = wb
        self._m = 1
        self._sum = en.IV_ZERO

    @property
    def m(self) -> int:
        return self._m

    @property
    def working_bits(self) -> int:
        return self._wb

    def advance_to(self, m: int) -> Interval:
        """Extend the sum through ln(m) and return the enclosure of ln(m!)."""
        if m < self._m:
            raise DomainError(f"log-sum may only advance forward ({self._m} -> {m})")
        while self._m < m:
            self._m += 1
            term = en._ln_point(Dyadic.make(self._m, 0), self._wb)
            self._sum = en._iadd(self._sum, term, self._wb)
        return self._sum


def _b_enclosure(
    n: int,
    wb: int,
    fact: "int | None" = None,
    logsum: "LogFactorialSum | None" = None,
) -> Interval:
    """Enclosure of b_n = ln(n!) - (n + 1/2) ln(n) + n at wb mantissa bits."""
    if logsum is not None:
        lf = logsum.advance_to(n)
    else:
        if fact is None:
            if n <= EXACT_FACTORIAL_LIMIT:
                fact = factorial(n)
            else:
                lf = LogFactorialSum(wb).advance_to(n)
        if fact is not None:
            lf = en._ln_point(Dyadic.make(fact, 0), wb)
    ln_n = en._ln_point(Dyadic.make(n, 0), wb)
    # (1/2) ln n + n ln n = ((2n+1)/2) ln n, the halving being exact
    sub_term = en._idouble(en._iscale(ln_n, 2 * n + 1, wb), -1)
    return en._iadd(en._isub(lf, sub_term, wb), en.from_int(n), wb)


def b_of(n: int, p: PrecisionLike, *, factorial_value: "int | None" = None) -> Interval:
    """Enclosure of b_n = ln(a_n).

    ``factorial_value`` may pass in a precomputed exact n! so that sweeps
    which already maintain a running product skip the recomputation.
    """
    _require_index(n)
    wb = en._mant_work(p)
    return en._iround(_b_enclosure(n, wb, fact=factorial_value), en._mant(p))


def a_of(n: int, p: PrecisionLike, *, factorial_value: "int | None" = None) -> Interval:
    """Enclosure of a_n = n!/(sqrt(n) n^n e^-n), evaluated as exp(b_n).

    The log-domain route avoids materializing n^n; the direct exact-rational
    form is kept to the tests as an independent cross-check.
    """
    _require_index(n)
    wb = en._mant_work(p)
    return en.exp(_b_enclosure(n, wb, fact=factorial_value), p)


def ratio_of(n: int, p: PrecisionLike) -> Interval:
    """Enclosure of a_n / a_{n+1} = (1/e) ((n+1)/n)^((2n+1)/2)."""
    _require_index(n)
    hi = Precision(en._bits(p) + en.GUARD_BITS)
    powed = en.pow_rational(
        en.from_rational(Fraction(n + 1, n), hi), Fraction(2 * n + 1, 2), hi
    )
    return en.div(powed, en.constant_e(hi), p)


def b_diff_series(n: int, p: PrecisionLike) -> Interval:
    """Enclosure of b_n - b_{n+1} = sum_{i>=1} k^(2i)/(2i+1) with k = 1/(2n+1).

    The truncated remainder is below the geometric sum k^(2m+2)/(1-k^2)
    (usable because 0 < k < 1), which is attached to the upper endpoint;
    the lower endpoint stays strictly positive.
    """
    _require_index(n)
    wb = en._mant_work(p)
    den = 2 * n + 1
    d2 = den * den
    pd = d2  # (2n+1)^(2i)
    i = 1
    acc = en._from_ratio(1, 3 * d2, wb)
    shift = wb + 4
    while (1 << shift) >= pd * (d2 - 1):  # geometric remainder >= 2^-(wb+4)
        i += 1
        pd *= d2
        acc = en._iadd(acc, en._from_ratio(1, pd * (2 * i + 1), wb), wb)
    hn, hd = acc.hi.as_integer_ratio()
    td = pd * (d2 - 1)
    hi = en._ratio_dy(hn * td + hd, hd * td, 0, wb, True)
    return en._iround(Interval(acc.lo, hi), en._mant(p))


def lower_bound_const(p: PrecisionLike) -> Interval:
    """Enclosure of e^(3/4), the positive floor under every a_n."""
    return en.exp(Interval.point(Dyadic(3, -2)), p)


def row_of(n: int, p: PrecisionLike, *, factorial_value: "int | None" = None) -> StirlingRow:
    """All certified per-n values bundled together."""
    _require_index(n)
    wb = en._mant_work(p)
    b_enc = _b_enclosure(n, wb, fact=factorial_value)
    return StirlingRow(
        n=n,
        k=k_of(n),
        a=en.exp(b_enc, p),
        b=en._iround(b_enc, en._mant(p)),
        b_diff=b_diff_series(n, p),
        tail=tail_of(n),
    )
