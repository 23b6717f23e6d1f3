"""Certified factorial approximation and two-sided bounds.

The approximation sqrt(2 pi n) (n/e)^n is evaluated in the log domain, so
the only exponentiation is one final exp.  The monotone results on a_n give
the guarantee

    sqrt(2 pi n) (n/e)^n  <  n!  <  sqrt(2 pi n) (n/e)^n * e^(1/(4n)),

which is packaged as exact dyadic bounds.  The upper exponent stays at
1/(4n): the telescoping argument yields no sharper certified constant, and
the empirically tighter behavior is reported by relative_error rather than
claimed.
"""

from __future__ import annotations

from dataclasses import dataclass

from fractions import Fraction

from . import enclosure as en
from .enclosure import Dyadic, Interval, Precision, PrecisionLike
from .errors import DomainError, UndecidedError
from .exactcore import decimal_length, factorial

#: digit_count escalates precision up to this ceiling before concluding the
#: certified band cannot separate two digit counts.
DIGIT_BITS_CEILING = 4096

#: When the band straddles a power of ten (so no precision can decide), the
#: exact factorial settles the count, up to this feasibility cap.
DIGIT_EXACT_FALLBACK_LIMIT = 10 ** 6

#: relative_error needs the exact factorial as well.
RELATIVE_ERROR_LIMIT = 10 ** 5


@dataclass(frozen=True)
class FactorialBounds:
    """Certified enclosure data for n!."""

    n: int
    approx: Interval
    lower: Dyadic
    upper: Dyadic
    correction: Interval


def _require_index(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"index must be an integer >= 1, got {n!r}")


def stirling_approx(n: int, p: PrecisionLike) -> Interval:
    """Enclosure of sqrt(2 pi n) (n/e)^n via exp((1/2) ln(2 pi n) + n ln n - n)."""
    _require_index(n)
    hi = Precision(en._bits(p) + en.GUARD_BITS)
    wb = en._mant(hi)
    two_pi_n = en._iscale(en.constant_pi(hi), 2 * n, wb)
    half_log = en._idouble(en.ln(two_pi_n, hi), -1)
    ln_n = en._ln_point(Dyadic.make(n, 0), wb)
    v = en._isub(
        en._iadd(half_log, en._iscale(ln_n, n, wb), wb), en.from_int(n), wb
    )
    return en.exp(v, p)


def factorial_bounds(n: int, p: PrecisionLike) -> FactorialBounds:
    """Two-sided dyadic bounds with lower < n! < upper.

    The lower endpoint of the approximation enclosure is already below the
    exact sqrt(2 pi n)(n/e)^n, which the decreasing a_n keeps below n!; the
    upper side multiplies in the e^(1/(4n)) correction.
    """
    _require_index(n)
    hi = Precision(en._bits(p) + en.GUARD_BITS)
    approx = stirling_approx(n, p)
    correction = en.exp(en.from_rational(Fraction(1, 4 * n), hi), p)
    upper_iv = en.mul(approx, correction, p)
    return FactorialBounds(
        n=n, approx=approx, lower=approx.lo, upper=upper_iv.hi, correction=correction
    )


def _decimal_digits_of_dyadic(d: Dyadic) -> int:
    """Exact decimal digit count of a dyadic value >= 1."""
    if en._cmp_dy_frac(d, 1, 1) < 0:
        raise DomainError(f"digit helper needs a value >= 1, got {d}")
    t = ((d.m.bit_length() + d.e - 1) * 30103) // 100000
    if t < 0:
        t = 0
    while en._cmp_dy_frac(d, 10 ** t, 1) < 0:
        t -= 1
    while en._cmp_dy_frac(d, 10 ** (t + 1), 1) >= 0:
        t += 1
    return t + 1


def digit_count(n: int) -> int:
    """Exact number of decimal digits of n!, certified from the bounds.

    Precision escalates until the lower and upper bounds agree on the digit
    count.  Small n go straight to the exact factorial (at low n the
    correction band is wide enough to straddle a power of ten), and the rare
    larger n whose band provably straddles a power of ten (no precision can
    ever decide those) fall back to the exact factorial as well, up to the
    feasibility cap; past the cap that situation raises UndecidedError
    rather than ever returning a possibly wrong count.
    """
    _require_index(n)
    if n <= 25:
        return decimal_length(factorial(n))
    bits = 64
    while bits <= DIGIT_BITS_CEILING:
        fb = factorial_bounds(n, Precision(bits))
        d_lo = _decimal_digits_of_dyadic(fb.lower)
        d_up = _decimal_digits_of_dyadic(fb.upper)
        if d_lo == d_up:
            return d_lo
        bits *= 2
    if n <= DIGIT_EXACT_FALLBACK_LIMIT:
        return decimal_length(factorial(n))
    raise UndecidedError(
        f"digit count of {n}! undecided at {DIGIT_BITS_CEILING} bits and "
        f"beyond the exact-factorial fallback cap"
    )


def relative_error(n: int, p: PrecisionLike) -> Interval:
    """Enclosure of n!/approx - 1; positive, and below e^(1/(4n)) - 1."""
    _require_index(n)
    if n > RELATIVE_ERROR_LIMIT:
        raise DomainError(
            f"relative_error needs the exact factorial; n <= {RELATIVE_ERROR_LIMIT}"
        )
    hi = Precision(en._bits(p) + en.GUARD_BITS)
    fact_iv = Interval.point(Dyadic.make(factorial(n), 0))
    ratio = en.div(fact_iv, stirling_approx(n, hi), hi)
    return en.sub(ratio, en.from_int(1), p)
