from fractions import Fraction

import pytest

from stirlingcert import enclosure as en
from stirlingcert.enclosure import Dyadic, Interval, Precision, TriState
from stirlingcert.errors import DomainError

import oracles

P53 = Precision(53)


def iv(a, b=None):
    lo = en.from_rational(Fraction(a), 200).lo
    hi = en.from_rational(Fraction(b if b is not None else a), 200).hi
    return Interval(lo, hi)


class TestDyadic:
    def test_canonical_form(self):
        d = Dyadic.make(12, 0)
        assert (d.m, d.e) == (3, 2)
        assert Dyadic.make(0, 5) == Dyadic(0, 0)
        with pytest.raises(ValueError):
            Dyadic(4, 0)  # even mantissa rejected
        with pytest.raises(ValueError):
            Dyadic(0, 3)

    def test_ordering(self):
        a = Dyadic.make(1, -1)  # 0.5
        b = Dyadic.make(3, -2)  # 0.75
        c = Dyadic.make(-5, 10)
        assert a < b and b > a and c < a and a <= a and a >= a

    def test_fraction_round_trip(self):
        d = Dyadic.make(-7, -3)
        assert d.as_fraction() == Fraction(-7, 8)
        assert d.as_integer_ratio() == (-7, 8)


class TestPrecisionAndInterval:
    def test_precision_floor(self):
        with pytest.raises(ValueError):
            Precision(7)
        assert Precision(8).bits == 8

    def test_inverted_interval_rejected(self):
        with pytest.raises(ValueError):
            Interval(Dyadic.make(2, 0), Dyadic.make(1, 0))

    def test_contains_and_width(self):
        x = iv(1, 2)
        assert x.contains(Fraction(3, 2))
        assert not x.contains(Fraction(5, 2))
        assert x.width() == 1


class TestFromRational:
    def test_dyadic_rational_exact(self):
        x = en.from_rational(Fraction(1, 2), P53)
        assert x.lo == x.hi == Dyadic.make(1, -1)

    def test_third_width_contract(self):
        x = en.from_rational(Fraction(1, 3), 16)
        assert x.contains(Fraction(1, 3))
        assert x.width() <= Fraction(1, 1 << 16)

    def test_22_sevenths_long_division_oracle(self):
        # long-division oracle: 22/7 = 3.142857142857... (142857 repeating)
        digits = "3" + "142857" * 8
        approx = Fraction(int(digits), 10 ** (len(digits) - 1))
        x = en.from_rational(Fraction(22, 7), P53)
        assert x.contains(Fraction(22, 7))
        assert abs(x.lo.as_fraction() - approx) < Fraction(1, 10**12)
        assert x.width() <= Fraction(22, 7) / (1 << 53)


class TestArithmetic:
    def test_add_contains(self):
        assert en.add(iv(1), iv(2), P53).contains(3)

    def test_mul_absorbing_zero(self):
        z = en.mul(iv(2), iv(0), P53)
        assert z.lo == z.hi == Dyadic(0, 0)

    def test_div_endpoint_combinations(self):
        # endpoint-combination oracle: [1,2]/[2,4] must cover [1/4, 1]
        q = en.div(iv(1, 2), iv(2, 4), P53)
        for num, den in ((1, 4), (1, 2), (1, 1), (3, 8)):
            assert q.contains(Fraction(num, den))

    def test_div_by_zero_interval(self):
        with pytest.raises(DomainError):
            en.div(iv(1), iv(-1, 1), P53)

    def test_sub_mixed_signs(self):
        d = en.sub(iv(-3, -1), iv(2, 5), P53)
        assert d.contains(-4) and d.contains(-8) and d.lo.as_fraction() <= -8


class TestSqrt:
    def test_perfect_square(self):
        s = en.sqrt(iv(4), P53)
        assert s.contains(2)
        assert s.width() <= Fraction(1, 1 << 51)

    def test_zero(self):
        s = en.sqrt(iv(0), P53)
        assert s.lo == s.hi == Dyadic(0, 0)

    def test_sqrt2_bisection_oracle(self):
        s = en.sqrt(iv(2), P53)
        lo, hi = s.lo.as_fraction(), s.hi.as_fraction()
        assert lo * lo <= 2 <= hi * hi
        assert s.contains(oracles.SQRT2)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            en.sqrt(iv(-1, 1), P53)


class TestAtanhHalflog:
    def test_one_third_gives_half_ln2(self):
        # (1+k)/(1-k) = 2 exactly at k = 1/3
        x = en.atanh_halflog(Fraction(1, 3), P53)
        assert x.contains(oracles.HALF_LN2)

    def test_tiny_k_first_term_window(self):
        k = Fraction(1, 1000001)
        x = en.atanh_halflog(k, P53)
        # the sum lies in (k, k/(1-k^2)); the enclosure must reach it
        assert x.hi.as_fraction() > k
        assert x.lo.as_fraction() < k / (1 - k * k)

    def test_one_fifth_gives_half_ln_3_2(self):
        x = en.atanh_halflog(Fraction(1, 5), P53)
        assert x.contains(oracles.HALF_LN_3_2)

    def test_domain(self):
        for bad in (Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(3, 2)):
            with pytest.raises(DomainError):
                en.atanh_halflog(bad, P53)


class TestLn:
    def test_ln_one_is_zero(self):
        x = en.ln(iv(1), P53)
        assert x.contains(0)
        assert x.width() <= Fraction(1, 1 << 53)

    def test_ln_two(self):
        assert en.ln(iv(2), P53).contains(oracles.LN2)

    def test_ln_of_e_enclosure_contains_one(self):
        assert en.ln(en.constant_e(P53), P53).contains(1)

    def test_ln2_routes_agree(self):
        doubled = en.mul(en.atanh_halflog(Fraction(1, 3), P53), en.from_int(2), P53)
        direct = en.ln(iv(2), P53)
        assert doubled.intersects(direct)
        assert doubled.contains(oracles.LN2) and direct.contains(oracles.LN2)

    def test_domain(self):
        with pytest.raises(DomainError):
            en.ln(iv(0, 1), P53)
        with pytest.raises(DomainError):
            en.ln(iv(-2, -1), P53)

    def test_huge_argument(self):
        import math

        y = en.ln(Interval.point(Dyadic.make(math.factorial(300), 0)), P53)
        lo, hi = y.lo.as_fraction(), y.hi.as_fraction()
        assert oracles.contains_ln(lo, hi, Fraction(math.factorial(300)))


class TestExp:
    def test_exp_zero(self):
        x = en.exp(iv(0), P53)
        assert x.lo == x.hi == Dyadic(1, 0)

    def test_exp_one(self):
        assert en.exp(iv(1), P53).contains(oracles.E)

    def test_exp_three_quarters(self):
        x = en.exp(Interval.point(Dyadic(3, -2)), P53)
        assert x.contains(oracles.EXP_3_4)

    def test_exp_negative(self):
        x = en.exp(iv(-1), P53)
        lo, hi = x.lo.as_fraction(), x.hi.as_fraction()
        o_lo, o_hi = oracles.exp_bounds(Fraction(-1))
        assert lo <= o_lo and o_hi <= hi


class TestPowRational:
    def test_identity_exponent(self):
        assert en.pow_rational(iv(2), Fraction(1), P53).contains(2)

    def test_square_root_case(self):
        assert en.pow_rational(iv(4), Fraction(1, 2), P53).contains(2)

    def test_three_halves(self):
        x = en.pow_rational(iv(2), Fraction(3, 2), P53)
        assert x.contains(oracles.TWO_POW_3_2)

    def test_domain(self):
        with pytest.raises(DomainError):
            en.pow_rational(iv(0, 1), Fraction(1, 2), P53)


class TestConstants:
    def test_e_value_and_width(self):
        x = en.constant_e(P53)
        assert x.contains(oracles.E)
        assert x.width() <= Fraction(4, 1 << 53)
        x8 = en.constant_e(8)
        assert x8.width() <= Fraction(1, 1 << 6)

    def test_e_nesting(self):
        assert en.constant_e(16).encloses(en.constant_e(64))

    def test_pi_value_and_width(self):
        x = en.constant_pi(P53)
        assert x.contains(oracles.PI)
        o_lo, o_hi = oracles.pi_bounds()
        assert x.lo.as_fraction() <= o_hi and o_lo <= x.hi.as_fraction()
        assert x.width() <= Fraction(4, 1 << 53)
        assert en.constant_pi(8).width() <= Fraction(1, 1 << 6)

    def test_pi_nesting(self):
        assert en.constant_pi(32).encloses(en.constant_pi(128))


class TestCertainlyLt:
    def test_disjoint_true(self):
        assert en.certainly_lt(iv(1, 2), iv(3, 4)) is TriState.CERTAINLY_TRUE

    def test_overlap_undecided(self):
        assert en.certainly_lt(iv(1, 3), iv(2, 4)) is TriState.UNDECIDED

    def test_reversed_false(self):
        assert en.certainly_lt(iv(3, 4), iv(1, 2)) is TriState.CERTAINLY_FALSE

    def test_touching_is_false(self):
        # y.hi == x.lo proves y <= x, so "x < y" is certainly false
        assert en.certainly_lt(iv(2, 3), iv(1, 2)) is TriState.CERTAINLY_FALSE

    def test_decision_stable_under_refinement(self):
        a = en.ln(iv(2), 16)
        b = en.ln(iv(3), 16)
        assert en.certainly_lt(a, b) is TriState.CERTAINLY_TRUE
        for bits in (32, 64, 128):
            assert en.certainly_lt(en.ln(iv(2), bits), en.ln(iv(3), bits)) is TriState.CERTAINLY_TRUE
