import math
from fractions import Fraction

import pytest

from stirlingcert import enclosure as en
from stirlingcert import sequences as sq
from stirlingcert.enclosure import Precision, TriState
from stirlingcert.errors import DomainError

import oracles

P53 = Precision(53)


def test_k_of_examples():
    assert sq.k_of(1) == Fraction(1, 3)
    assert sq.k_of(4) == Fraction(1, 9)
    assert sq.k_of(12) == Fraction(1, 25)


def test_k_of_exact_substitution_identity():
    for n in range(1, 400):
        k = sq.k_of(n)
        assert (1 + k) / (1 - k) == Fraction(n + 1, n)


def test_tail_of_examples():
    assert sq.tail_of(1) == Fraction(1, 8)
    assert sq.tail_of(2) == Fraction(1, 24)
    assert sq.tail_of(10) == Fraction(1, 440)
    for n in range(1, 200):
        assert sq.tail_of(n) == Fraction(1, 4 * n) - Fraction(1, 4 * (n + 1))


def test_zero_rejected_everywhere():
    for fn in (sq.k_of, sq.tail_of):
        with pytest.raises(DomainError):
            fn(0)
    for fn in (sq.b_of, sq.a_of, sq.ratio_of, sq.b_diff_series, sq.row_of):
        with pytest.raises(DomainError):
            fn(0, P53)


def test_b_values():
    b1 = sq.b_of(1, P53)
    assert b1.contains(1)  # a_1 = e exactly, so b_1 = 1
    assert b1.width() == 0
    assert sq.b_of(2, P53).contains(oracles.B2)  # 2 - (3/2) ln 2
    b10 = sq.b_of(10, 64)
    assert b10.contains(oracles.B10)
    assert b10.width() <= Fraction(1, 1 << 48)


def test_a_values():
    assert sq.a_of(1, P53).contains(oracles.E)
    assert sq.a_of(2, P53).contains(oracles.A2)  # e^2/(2 sqrt 2)
    assert sq.a_of(10, P53).contains(oracles.A10)


def test_a_against_direct_rational_oracle():
    # independent route: a_n = n! e^n / (sqrt(n) n^n) in exact rationals
    for n in (1, 2, 3, 5, 10, 25):
        lo, hi = oracles.a_direct_bounds(n)
        iv = sq.a_of(n, P53)
        assert iv.lo.as_fraction() <= hi and lo <= iv.hi.as_fraction()


def test_ratio_values():
    r1 = sq.ratio_of(1, P53)
    assert r1.contains(oracles.RATIO1)  # 2 sqrt(2) / e
    # identity: the ratio enclosure intersects a_n / a_{n+1}
    for n in (1, 2, 7, 40):
        quotient = en.div(sq.a_of(n, P53), sq.a_of(n + 1, P53), P53)
        assert sq.ratio_of(n, P53).intersects(quotient)
    r = sq.ratio_of(1000, 64)
    assert r.lo.as_fraction() > 1
    assert r.hi.as_fraction() < Fraction("1.000001")


def test_b_diff_series_values():
    bd1 = sq.b_diff_series(1, P53)
    assert bd1.contains(oracles.BDIFF1)  # (3/2) ln 2 - 1
    assert bd1.lo.m > 0
    assert en.certainly_lt(bd1, en.from_rational(sq.tail_of(1), P53)) is TriState.CERTAINLY_TRUE


def test_b_diff_consistent_with_subtraction():
    for n in range(1, 101):
        series = sq.b_diff_series(n, P53)
        direct = en.sub(sq.b_of(n, P53), sq.b_of(n + 1, P53), P53)
        assert series.intersects(direct)
        assert series.lo.m > 0


def test_certified_window_sample():
    for n in (1, 2, 3, 10, 50, 200, 1000):
        bd = sq.b_diff_series(n, P53)
        assert bd.lo.m > 0
        assert en.certainly_lt(bd, en.from_rational(sq.tail_of(n), P53)) is TriState.CERTAINLY_TRUE


def test_monotone_decrease_certified():
    prev = sq.a_of(1, P53)
    for n in range(2, 101):
        cur = sq.a_of(n, P53)
        assert en.certainly_lt(cur, prev) is TriState.CERTAINLY_TRUE
        prev = cur


def test_shifted_sequence_increases():
    # b_1 - 1/4 = 3/4 < b_2 - 1/8 ~ 0.83528
    x1 = en.sub(sq.b_of(1, P53), en.from_rational(Fraction(1, 4), P53), P53)
    x2 = en.sub(sq.b_of(2, P53), en.from_rational(Fraction(1, 8), P53), P53)
    assert x1.contains(Fraction(3, 4))
    assert x2.contains(oracles.B2 - Fraction("0.125"))
    assert en.certainly_lt(x1, x2) is TriState.CERTAINLY_TRUE


def test_floors_certified():
    e34 = sq.lower_bound_const(P53)
    assert e34.contains(oracles.EXP_3_4)
    assert e34.width() <= Fraction(16, 1 << 53)
    sqrt_2pi = en.sqrt(en.mul(en.constant_pi(69), en.from_int(2), 69), P53)
    for n in range(1, 101):
        a_n = sq.a_of(n, P53)
        assert en.certainly_lt(e34, a_n) is TriState.CERTAINLY_TRUE
        assert en.certainly_lt(sqrt_2pi, a_n) is TriState.CERTAINLY_TRUE


def test_row_of_bundle():
    row = sq.row_of(1, P53)
    assert row.n == 1
    assert row.k == Fraction(1, 3)
    assert row.tail == Fraction(1, 8)
    assert row.a.contains(oracles.E)
    assert row.b.contains(1)
    assert row.b_diff.contains(oracles.BDIFF1)
    row2 = sq.row_of(2, P53)
    assert row2.k == Fraction(1, 5) and row2.tail == Fraction(1, 24)


def test_row_window_certified_sample():
    for n in (1, 5, 17, 123, 999):
        row = sq.row_of(n, P53)
        assert row.b_diff.lo.m > 0
        assert en.certainly_lt(row.b_diff, en.from_rational(row.tail, P53)) is TriState.CERTAINLY_TRUE


def test_factorial_value_shortcut_matches():
    f = math.factorial(40)
    assert sq.b_of(40, P53, factorial_value=f) == sq.b_of(40, P53)
    assert sq.a_of(40, P53, factorial_value=f) == sq.a_of(40, P53)


def test_log_sum_path_agrees_with_exact_path():
    # above the threshold b_n switches to a sum of log enclosures; both
    # routes must enclose the same number just below/above the switch
    wb = en._mant_work(P53)
    for n in (120, 500):
        via_sum = sq._b_enclosure(n, wb, logsum=sq.LogFactorialSum(wb))
        via_fact = sq._b_enclosure(n, wb)
        assert via_sum.intersects(via_fact)


def test_log_sum_only_moves_forward():
    ls = sq.LogFactorialSum(80)
    ls.advance_to(10)
    with pytest.raises(DomainError):
        ls.advance_to(5)
