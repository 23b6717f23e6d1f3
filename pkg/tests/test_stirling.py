import math
from fractions import Fraction

import pytest

from stirlingcert import enclosure as en
from stirlingcert import stirling as st
from stirlingcert.enclosure import Precision, TriState
from stirlingcert.errors import DomainError
from stirlingcert.exactcore import decimal_length

import oracles

P53 = Precision(53)


def test_approx_values():
    assert st.stirling_approx(1, P53).contains(oracles.SA1)  # sqrt(2 pi)/e
    assert st.stirling_approx(5, P53).contains(oracles.SA5)
    assert st.stirling_approx(10, P53).contains(oracles.SA10)


def test_approx_underestimates():
    for n in (1, 2, 5, 10, 100, 500):
        assert st.stirling_approx(n, P53).hi.as_fraction() < math.factorial(n)


def test_bounds_examples():
    fb = st.factorial_bounds(10, P53)
    assert fb.lower.as_fraction() <= 3628800 <= fb.upper.as_fraction()
    assert fb.lower.as_fraction() >= 3598695
    assert fb.upper.as_fraction() <= 3690904
    fb1 = st.factorial_bounds(1, P53)
    assert fb1.lower.as_fraction() < 1 < fb1.upper.as_fraction()
    assert abs(fb1.lower.as_fraction() - oracles.SA1) < Fraction(1, 10**9)


def test_bounds_sweep_exact():
    for n in range(1, 301):
        fb = st.factorial_bounds(n, P53)
        f = math.factorial(n)
        assert fb.lower.as_fraction() < f < fb.upper.as_fraction()


def test_bounds_at_5000():
    fb = st.factorial_bounds(5000, P53)
    f = math.factorial(5000)
    assert fb.lower.as_fraction() < f < fb.upper.as_fraction()


def test_band_tightness():
    for n in (1, 10, 100, 1000):
        fb = st.factorial_bounds(n, P53)
        ratio = fb.upper.as_fraction() / fb.lower.as_fraction()
        ceiling = oracles.exp_bounds(Fraction(1, 4 * n))[1] * (1 + Fraction(1, 1 << 47))
        assert ratio <= ceiling


def test_bounds_structural_invariants():
    fb = st.factorial_bounds(7, P53)
    assert fb.lower == fb.approx.lo
    product = en.mul(fb.approx, fb.correction, P53)
    assert fb.upper == product.hi


def test_bounds_monotone_refinement():
    for n in (3, 12, 77):
        wide = st.factorial_bounds(n, Precision(32))
        tight = st.factorial_bounds(n, Precision(96))
        assert wide.lower <= tight.lower
        assert tight.upper <= wide.upper


def test_digit_count_examples():
    assert st.digit_count(5) == 3
    assert st.digit_count(100) == 158
    assert st.digit_count(1000) == 2568


def test_digit_count_sweep():
    for n in range(1, 401):
        assert st.digit_count(n) == decimal_length(math.factorial(n))


def test_digit_count_straddling_band():
    # at n = 261 a power of ten sits inside the certified band, so only the
    # exact fallback can settle the count
    assert st.digit_count(261) == decimal_length(math.factorial(261)) == 519


def test_relative_error_values():
    r10 = st.relative_error(10, P53)
    assert r10.contains(oracles.RELERR10)
    assert r10.lo.m > 0
    assert en.certainly_lt(r10, en.from_rational(oracles.EXP_1_40_M1 + Fraction(1, 10**40), P53)) is TriState.CERTAINLY_TRUE
    r1 = st.relative_error(1, P53)
    assert r1.contains(oracles.RELERR1)
    assert r1.hi.as_fraction() < oracles.EXP_1_4_M1 + Fraction(1, 10**40)


def test_relative_error_band_sample():
    for n in (1, 2, 17, 300, 1000):
        r = st.relative_error(n, P53)
        assert r.lo.m > 0
        corr_hi = oracles.exp_bounds(Fraction(1, 4 * n))[1] - 1
        assert r.hi.as_fraction() < corr_hi


def test_domain_errors():
    with pytest.raises(DomainError):
        st.stirling_approx(0, P53)
    with pytest.raises(DomainError):
        st.factorial_bounds(0, P53)
    with pytest.raises(DomainError):
        st.digit_count(0)
    with pytest.raises(DomainError):
        st.relative_error(0, P53)
    with pytest.raises(DomainError):
        st.relative_error(st.RELATIVE_ERROR_LIMIT + 1, P53)
