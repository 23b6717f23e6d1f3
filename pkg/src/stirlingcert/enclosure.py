"""Dyadic interval arithmetic with directed (outward) rounding.

Endpoints are exact binary rationals m * 2**e, so every rounding step is an
integer shift and the containment contract is bit-exact testable.  Every
operation returns an interval guaranteed to contain the exact real result
for any inputs drawn from the operand intervals.

The logarithm is driven by the inverse-hyperbolic-tangent series
atanh(k) = sum k^(2i+1)/(2i+1), truncated with a geometric remainder bound;
the exponential uses its Taylor series with a factorial remainder bound and
halving/squaring argument reduction.  pi comes from a Machin-style arctan
identity with alternating-series bracketing, so it is independent of the
slowly converging product routes elsewhere in the package.

Precision semantics: an operation at precision p performs intermediate work
with 16 guard bits and rounds its result outward to p.bits + 2 mantissa
bits (the two spare bits keep the pair of outward roundings inside a
2**-p.bits relative width budget).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import DomainError

GUARD_BITS = 16


class TriState(Enum):
    """Outcome of a certified comparison."""

    CERTAINLY_TRUE = "certainly_true"
    CERTAINLY_FALSE = "certainly_false"
    UNDECIDED = "undecided"


@dataclass(frozen=True, slots=True)
class Precision:
    """Requested output precision in bits (at least 8)."""

    bits: int

    def __post_init__(self) -> None:
        if not isinstance(self.bits, int) or self.bits < 8:
            raise ValueError(f"precision must be an integer >= 8, got {self.bits!r}")


PrecisionLike = Union[Precision, int]


def _bits(p: PrecisionLike) -> int:
    if isinstance(p, Precision):
        return p.bits
    return Precision(p).bits


def _canon(m: int, e: int) -> "tuple[int, int]":
    if m == 0:
        return 0, 0
    t = (m & -m).bit_length() - 1
    if t:
        return m >> t, e + t
    return m, e


@dataclass(frozen=True, slots=True)
class Dyadic:
    """Exact value m * 2**e in canonical form: m odd, or zero with e == 0."""

    m: int
    e: int

    def __post_init__(self) -> None:
        if self.m == 0:
            if self.e != 0:
                raise ValueError("canonical zero has exponent 0")
        elif not self.m & 1:
            raise ValueError(f"mantissa must be odd, got {self.m}")

    @staticmethod
    def make(m: int, e: int = 0) -> "Dyadic":
        """Construct from any (m, e), normalizing to canonical form."""
        return Dyadic(*_canon(m, e))

    def is_zero(self) -> bool:
        return self.m == 0

    def sign(self) -> int:
        return (self.m > 0) - (self.m < 0)

    def as_fraction(self) -> Fraction:
        if self.e >= 0:
            return Fraction(self.m << self.e)
        return Fraction(self.m, 1 << -self.e)

    def as_integer_ratio(self) -> "tuple[int, int]":
        if self.e >= 0:
            return self.m << self.e, 1
        return self.m, 1 << -self.e

    def __float__(self) -> float:
        try:
            return self.m * 2.0 ** self.e
        except OverflowError:
            return float("inf") if self.m > 0 else float("-inf")

    def __lt__(self, other: "Dyadic") -> bool:
        return _cmp_raw(self.m, self.e, other.m, other.e) < 0

    def __le__(self, other: "Dyadic") -> bool:
        return _cmp_raw(self.m, self.e, other.m, other.e) <= 0

    def __gt__(self, other: "Dyadic") -> bool:
        return _cmp_raw(self.m, self.e, other.m, other.e) > 0

    def __ge__(self, other: "Dyadic") -> bool:
        return _cmp_raw(self.m, self.e, other.m, other.e) >= 0


DY_ZERO = Dyadic(0, 0)
DY_ONE = Dyadic(1, 0)


def _cmp_raw(am: int, ae: int, bm: int, be: int) -> int:
    sa = (am > 0) - (am < 0)
    sb = (bm > 0) - (bm < 0)
    if sa != sb:
        return -1 if sa < sb else 1
    if sa == 0:
        return 0
    # Same nonzero sign: compare leading-bit positions before shifting, so
    # wildly different magnitudes never force a large alignment shift.
    la = abs(am).bit_length() + ae
    lb = abs(bm).bit_length() + be
    if la != lb:
        return -sa if la < lb else sa
    e = ae if ae < be else be
    d = (am << (ae - e)) - (bm << (be - e))
    return (d > 0) - (d < 0)


def _cmp_dy_frac(d: Dyadic, num: int, den: int) -> int:
    """Exact comparison of a dyadic against num/den (den > 0)."""
    if d.e >= 0:
        lhs = (d.m << d.e) * den
        rhs = num
    else:
        lhs = d.m * den
        rhs = num << -d.e
    return (lhs > rhs) - (lhs < rhs)


def _round_dy(m: int, e: int, mb: int, up: bool) -> Dyadic:
    """Round m * 2**e to at most mb mantissa bits, toward -inf or +inf."""
    if m == 0:
        return DY_ZERO
    excess = abs(m).bit_length() - mb
    if excess <= 0:
        return Dyadic(*_canon(m, e))
    if up:
        m2 = -((-m) >> excess)
    else:
        m2 = m >> excess
    return Dyadic(*_canon(m2, e + excess))


def _ratio_dy(num: int, den: int, e: int, mb: int, up: bool) -> Dyadic:
    """Directed rounding of (num/den) * 2**e to mb mantissa bits; den > 0."""
    if num == 0:
        return DY_ZERO
    s = mb + den.bit_length() - abs(num).bit_length() + 1
    if s < 0:
        s = 0
    q, r = divmod(num << s, den)
    if up and r:
        q += 1
    return _round_dy(q, e - s, mb, up)


@dataclass(frozen=True, slots=True)
class Interval:
    """Pair of dyadic endpoints [lo, hi] enclosing an exact real value."""

    lo: Dyadic
    hi: Dyadic

    def __post_init__(self) -> None:
        if _cmp_raw(self.lo.m, self.lo.e, self.hi.m, self.hi.e) > 0:
            raise ValueError(f"inverted interval: lo={self.lo} hi={self.hi}")

    @staticmethod
    def point(d: Dyadic) -> "Interval":
        return Interval(d, d)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Fraction:
        return self.hi.as_fraction() - self.lo.as_fraction()

    def contains(self, value: "Union[Fraction, int, Dyadic]") -> bool:
        """Exact containment test for a rational sample point."""
        if isinstance(value, Dyadic):
            num, den = value.as_integer_ratio()
        else:
            q = Fraction(value)
            num, den = q.numerator, q.denominator
        return _cmp_dy_frac(self.lo, num, den) <= 0 <= _cmp_dy_frac(self.hi, num, den)

    def encloses(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def __str__(self) -> str:
        return f"[{float(self.lo)!r}, {float(self.hi)!r}]"


IV_ZERO = Interval(DY_ZERO, DY_ZERO)
IV_ONE = Interval(DY_ONE, DY_ONE)


def from_int(i: int) -> Interval:
    """Exact point interval for an integer."""
    return Interval.point(Dyadic.make(i, 0))


def _iround(x: Interval, mb: int) -> Interval:
    return Interval(
        _round_dy(x.lo.m, x.lo.e, mb, False), _round_dy(x.hi.m, x.hi.e, mb, True)
    )


def _ineg(x: Interval) -> Interval:
    return Interval(Dyadic(-x.hi.m, x.hi.e), Dyadic(-x.lo.m, x.lo.e))


def _idouble(x: Interval, k: int = 1) -> Interval:
    """Exact scaling by 2**k (k may be negative)."""
    lo = x.lo if x.lo.m == 0 else Dyadic(x.lo.m, x.lo.e + k)
    hi = x.hi if x.hi.m == 0 else Dyadic(x.hi.m, x.hi.e + k)
    return Interval(lo, hi)


def _add_raw(am: int, ae: int, bm: int, be: int) -> "tuple[int, int]":
    if am == 0:
        return bm, be
    if bm == 0:
        return am, ae
    e = ae if ae < be else be
    return (am << (ae - e)) + (bm << (be - e)), e


def _iadd(x: Interval, y: Interval, mb: int) -> Interval:
    return Interval(
        _round_dy(*_add_raw(x.lo.m, x.lo.e, y.lo.m, y.lo.e), mb, False),
        _round_dy(*_add_raw(x.hi.m, x.hi.e, y.hi.m, y.hi.e), mb, True),
    )


def _isub(x: Interval, y: Interval, mb: int) -> Interval:
    return Interval(
        _round_dy(*_add_raw(x.lo.m, x.lo.e, -y.hi.m, y.hi.e), mb, False),
        _round_dy(*_add_raw(x.hi.m, x.hi.e, -y.lo.m, y.lo.e), mb, True),
    )


def _imul(x: Interval, y: Interval, mb: int) -> Interval:
    if x.lo.m >= 0 and y.lo.m >= 0:
        # dominant case here: both operands non-negative
        return Interval(
            _round_dy(x.lo.m * y.lo.m, x.lo.e + y.lo.e, mb, False),
            _round_dy(x.hi.m * y.hi.m, x.hi.e + y.hi.e, mb, True),
        )
    cands = [
        (x.lo.m * y.lo.m, x.lo.e + y.lo.e),
        (x.lo.m * y.hi.m, x.lo.e + y.hi.e),
        (x.hi.m * y.lo.m, x.hi.e + y.lo.e),
        (x.hi.m * y.hi.m, x.hi.e + y.hi.e),
    ]
    lo = hi = cands[0]
    for c in cands[1:]:
        if _cmp_raw(c[0], c[1], lo[0], lo[1]) < 0:
            lo = c
        elif _cmp_raw(c[0], c[1], hi[0], hi[1]) > 0:
            hi = c
    return Interval(_round_dy(lo[0], lo[1], mb, False), _round_dy(hi[0], hi[1], mb, True))


def _div_dy(a: Dyadic, b: Dyadic, mb: int, up: bool) -> Dyadic:
    num, den = (a.m, b.m) if b.m > 0 else (-a.m, -b.m)
    return _ratio_dy(num, den, a.e - b.e, mb, up)


def _idiv(x: Interval, y: Interval, mb: int) -> Interval:
    if y.lo.m <= 0 <= y.hi.m:
        raise DomainError("division by an interval containing zero")
    if x.lo.m >= 0 and y.lo.m > 0:
        return Interval(_div_dy(x.lo, y.hi, mb, False), _div_dy(x.hi, y.lo, mb, True))
    pairs = ((x.lo, y.lo), (x.lo, y.hi), (x.hi, y.lo), (x.hi, y.hi))
    lo = min((_div_dy(a, b, mb, False) for a, b in pairs))
    hi = max((_div_dy(a, b, mb, True) for a, b in pairs))
    return Interval(lo, hi)


def _iscale(x: Interval, c: int, mb: int) -> Interval:
    """Product with an exact integer."""
    if c == 0:
        return IV_ZERO
    if c > 0:
        return Interval(
            _round_dy(x.lo.m * c, x.lo.e, mb, False),
            _round_dy(x.hi.m * c, x.hi.e, mb, True),
        )
    return Interval(
        _round_dy(x.hi.m * c, x.hi.e, mb, False),
        _round_dy(x.lo.m * c, x.lo.e, mb, True),
    )


def _idiv_int(x: Interval, c: int, mb: int) -> Interval:
    """Quotient by an exact positive integer."""
    return Interval(
        _ratio_dy(x.lo.m, c, x.lo.e, mb, False), _ratio_dy(x.hi.m, c, x.hi.e, mb, True)
    )


def _from_ratio(num: int, den: int, mb: int) -> Interval:
    return Interval(_ratio_dy(num, den, 0, mb, False), _ratio_dy(num, den, 0, mb, True))


def _sqrt_dy(d: Dyadic, mb: int, up: bool) -> Dyadic:
    if d.m == 0:
        return DY_ZERO
    m, e = d.m, d.e
    if e & 1:
        m <<= 1
        e -= 1
    s = 2 * (mb + 2) - m.bit_length()
    if s < 0:
        s = 0
    if s & 1:
        s += 1
    big = m << s
    r = isqrt(big)
    if up and r * r != big:
        r += 1
    return _round_dy(r, (e - s) >> 1, mb, up)


# ---------------------------------------------------------------------------
# series engines
# ---------------------------------------------------------------------------


def _atanh_series(num: int, den: int, mb: int) -> Interval:
    """Enclosure of atanh(num/den) for |num/den| < 1, den > 0.

    Terms k^(2i+1)/(2i+1) are accumulated in interval arithmetic until the
    geometric remainder sum_{j>i} k^(2j+1) = k^(2i+3)/(1-k^2) drops below
    2**-(mb+4); that remainder is then added outward on the upper side
    (negative arguments are folded through the odd symmetry).
    """
    if num < 0:
        return _ineg(_atanh_series(-num, den, mb))
    if num == 0:
        return IV_ZERO
    k2n = num * num
    k2d = den * den
    gap = k2d - k2n  # den^2 - num^2 > 0
    pn, pd = num, den  # k^(2i+1)
    i = 0
    acc = _from_ratio(pn, pd, mb)
    shift = mb + 4
    while True:
        rn = pn * k2n
        if (rn << shift) < pd * gap:
            break
        pn = rn
        pd *= k2d
        i += 1
        acc = _iadd(acc, _from_ratio(pn, pd * (2 * i + 1), mb), mb)
    # remainder bound k^(2i+3)/(1-k^2), attached to the upper endpoint only
    # (every omitted term is positive)
    tn = pn * k2n
    td = pd * gap
    hn, hd = acc.hi.as_integer_ratio()
    hi = _ratio_dy(hn * td + tn * hd, hd * td, 0, mb, True)
    return Interval(acc.lo, hi)


_LN2_CACHE: "dict[int, Interval]" = {}


def _ln2_iv(mb: int) -> Interval:
    iv = _LN2_CACHE.get(mb)
    if iv is None:
        iv = _idouble(_atanh_series(1, 3, mb))
        _LN2_CACHE[mb] = iv
    return iv


def _ln_core(y: Dyadic, mb: int) -> Interval:
    """Enclosure of ln(y) for y > 0 with a mantissa already within mb bits.

    The argument is rescaled by a power of two into [3/4, 3/2), where
    k = (y' - 1)/(y' + 1) satisfies |k| <= 1/5, then ln y' = 2 atanh(k); the
    removed scaling re-enters as s * ln 2.
    """
    s = y.m.bit_length() + y.e - 1
    ym, ye = y.m, y.e - s  # y' in [1, 2)
    if _cmp_raw(ym, ye, 3, -1) >= 0:  # y' >= 3/2
        s += 1
        ye -= 1
    # ye <= 0 here; k = (ym*2^ye - 1)/(ym*2^ye + 1) as an exact ratio
    one = 1 << -ye
    num = ym - one
    if num == 0:
        base = IV_ZERO
    else:
        base = _idouble(_atanh_series(num, ym + one, mb))
    if s == 0:
        return base
    return _iadd(base, _iscale(_ln2_iv(mb), s, mb), mb)


def _ln_point(d: Dyadic, mb: int) -> Interval:
    """Enclosure of ln(d) for an exact dyadic d > 0 of any mantissa size."""
    dn = _round_dy(d.m, d.e, mb, False)
    up = _round_dy(d.m, d.e, mb, True)
    enc = _ln_core(dn, mb)
    if up == dn:
        return enc
    return Interval(enc.lo, _ln_core(up, mb).hi)


def _exp_series(u: Dyadic, wb: int) -> Interval:
    """Enclosure of exp(u) for |u| <= 1 by Taylor terms at wb mantissa bits.

    Terms are accumulated until the current term drops below 2**-(wb+6);
    the remainder of the series is bounded by twice the last term.
    """
    if u.m == 0:
        return IV_ONE
    u_iv = Interval.point(u)
    acc = IV_ONE
    t = IV_ONE
    i = 0
    floor_exp = -(wb + 6)
    while True:
        i += 1
        t = _idiv_int(_imul(t, u_iv, wb), i, wb)
        acc = _iadd(acc, t, wb)
        # largest endpoint magnitude of the current term
        if _cmp_raw(abs(t.lo.m), t.lo.e, abs(t.hi.m), t.hi.e) >= 0:
            bm, be = abs(t.lo.m), t.lo.e
        else:
            bm, be = abs(t.hi.m), t.hi.e
        if bm == 0 or bm.bit_length() + be <= floor_exp:
            break
    if bm == 0:
        return acc
    tail = Dyadic(*_canon(bm, be + 1))
    return _iadd(acc, Interval(Dyadic(-tail.m, tail.e), tail), wb)


def _exp_point(d: Dyadic, mb: int) -> Interval:
    """Enclosure of exp(d) for an exact dyadic d.

    Halves the argument j times until |u| <= 1, runs the series, and squares
    back; each squaring can double the relative width, so the series runs
    with 2j extra working bits.
    """
    if d.m == 0:
        return IV_ONE
    j = abs(d.m).bit_length() + d.e
    if j < 0:
        j = 0
    wb = mb + 2 * j + 4
    u_dn = _round_dy(d.m, d.e - j, wb, False)
    u_up = _round_dy(d.m, d.e - j, wb, True)
    enc_dn = _exp_series(u_dn, wb)
    enc_up = enc_dn if u_up == u_dn else _exp_series(u_up, wb)
    for _ in range(j):
        enc_dn = _imul(enc_dn, enc_dn, wb)
        if enc_up is not enc_dn:
            enc_up = _imul(enc_up, enc_up, wb)
        else:
            enc_up = enc_dn
    return Interval(enc_dn.lo, enc_up.hi)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def _mant(p: PrecisionLike) -> int:
    return _bits(p) + 2


def _mant_work(p: PrecisionLike) -> int:
    return _bits(p) + GUARD_BITS + 2


def from_rational(q: Fraction, p: PrecisionLike) -> Interval:
    """Tightest outward-rounded enclosure of an exact rational."""
    q = Fraction(q)
    return _from_ratio(q.numerator, q.denominator, _mant(p))


def add(x: Interval, y: Interval, p: PrecisionLike) -> Interval:
    return _iadd(x, y, _mant(p))


def sub(x: Interval, y: Interval, p: PrecisionLike) -> Interval:
    return _isub(x, y, _mant(p))


def mul(x: Interval, y: Interval, p: PrecisionLike) -> Interval:
    return _imul(x, y, _mant(p))


def div(x: Interval, y: Interval, p: PrecisionLike) -> Interval:
    """Quotient; the divisor interval must not contain zero."""
    return _idiv(x, y, _mant(p))


def sqrt(x: Interval, p: PrecisionLike) -> Interval:
    """Square root; requires x.lo >= 0."""
    if x.lo.m < 0:
        raise DomainError("sqrt of an interval with a negative endpoint")
    mb = _mant(p)
    return Interval(_sqrt_dy(x.lo, mb, False), _sqrt_dy(x.hi, mb, True))


def atanh_halflog(k: Fraction, p: PrecisionLike) -> Interval:
    """Enclosure of (1/2) ln((1+k)/(1-k)) = atanh(k) for rational 0 < k < 1."""
    k = Fraction(k)
    if not 0 < k < 1:
        raise DomainError(f"atanh_halflog requires 0 < k < 1, got {k}")
    enc = _atanh_series(k.numerator, k.denominator, _mant_work(p))
    return _iround(enc, _mant(p))


def ln(x: Interval, p: PrecisionLike) -> Interval:
    """Natural logarithm; requires x.lo > 0."""
    if x.lo.m <= 0:
        raise DomainError("ln of an interval reaching <= 0")
    wb = _mant_work(p)
    enc_lo = _ln_point(x.lo, wb)
    enc_hi = enc_lo if x.is_point() else _ln_point(x.hi, wb)
    return _iround(Interval(enc_lo.lo, enc_hi.hi), _mant(p))


def exp(x: Interval, p: PrecisionLike) -> Interval:
    """Exponential of any real interval."""
    wb = _mant_work(p)
    enc_lo = _exp_point(x.lo, wb)
    enc_hi = enc_lo if x.is_point() else _exp_point(x.hi, wb)
    return _iround(Interval(enc_lo.lo, enc_hi.hi), _mant(p))


def pow_rational(x: Interval, r: Fraction, p: PrecisionLike) -> Interval:
    """x**r as exp(r ln x); requires x.lo > 0."""
    if x.lo.m <= 0:
        raise DomainError("pow_rational requires a strictly positive base")
    r = Fraction(r)
    wb = _mant_work(p)
    lnx = Interval(_ln_point(x.lo, wb).lo, _ln_point(x.hi, wb).hi)
    prod = _imul(lnx, _from_ratio(r.numerator, r.denominator, wb), wb)
    enc_lo = _exp_point(prod.lo, wb)
    enc_hi = enc_lo if prod.is_point() else _exp_point(prod.hi, wb)
    return _iround(Interval(enc_lo.lo, enc_hi.hi), _mant(p))


_E_CACHE: "dict[int, Interval]" = {}


def constant_e(p: PrecisionLike) -> Interval:
    """Enclosure of e from its factorial-reciprocal series.

    The partial sum through 1/m! is exact; the remainder is below 2/(m+1)!.
    """
    mb = _mant(p)
    iv = _E_CACHE.get(mb)
    if iv is not None:
        return iv
    num = 2  # sum_{i<=m} m!/i!
    den = 1  # m!
    m = 1
    limit = 2 << (mb + 4)
    while limit >= den * (m + 1):
        m += 1
        num = num * m + 1
        den *= m
    iv = Interval(
        _ratio_dy(num, den, 0, mb, False),
        _ratio_dy(num * (m + 1) + 2, den * (m + 1), 0, mb, True),
    )
    _E_CACHE[mb] = iv
    return iv


def _atan_unit_brackets(q: int, bits: int) -> "tuple[Fraction, Fraction]":
    """Rational brackets of arctan(1/q) from consecutive partial sums."""
    term = Fraction(1, q)
    s_prev = Fraction(0)
    s = term
    i = 0
    qq = q * q
    while term.numerator << bits >= term.denominator:
        i += 1
        term = Fraction(1, (2 * i + 1) * q ** (2 * i + 1))
        s_prev = s
        s = s - term if i & 1 else s + term
    return (s, s_prev) if s < s_prev else (s_prev, s)


_PI_CACHE: "dict[int, Interval]" = {}


def constant_pi(p: PrecisionLike) -> Interval:
    """Enclosure of pi via 16 arctan(1/5) - 4 arctan(1/239)."""
    mb = _mant(p)
    iv = _PI_CACHE.get(mb)
    if iv is not None:
        return iv
    a_lo, a_hi = _atan_unit_brackets(5, mb + 8)
    b_lo, b_hi = _atan_unit_brackets(239, mb + 8)
    lo = 16 * a_lo - 4 * b_hi
    hi = 16 * a_hi - 4 * b_lo
    iv = Interval(
        _ratio_dy(lo.numerator, lo.denominator, 0, mb, False),
        _ratio_dy(hi.numerator, hi.denominator, 0, mb, True),
    )
    _PI_CACHE[mb] = iv
    return iv


def certainly_lt(x: Interval, y: Interval) -> TriState:
    """Certified strict comparison from non-overlapping endpoints."""
    if x.hi < y.lo:
        return TriState.CERTAINLY_TRUE
    if y.hi <= x.lo:
        return TriState.CERTAINLY_FALSE
    return TriState.UNDECIDED
