import math
from fractions import Fraction

import pytest

from stirlingcert import exactcore
from stirlingcert.errors import DomainError


def naive_factorial(n):
    r = 1
    for i in range(2, n + 1):
        r *= i
    return r


def test_factorial_small_examples():
    assert exactcore.factorial(0) == 1
    assert exactcore.factorial(5) == 120
    assert exactcore.factorial(12) == 479001600  # matches the product oracle below


def test_factorial_matches_naive_loop():
    for n in range(0, 300):
        assert exactcore.factorial(n) == naive_factorial(n)
    assert exactcore.factorial(2000) == naive_factorial(2000)


def test_factorial_recurrence_and_monotone():
    prev = exactcore.factorial(1)
    for n in range(2, 120):
        cur = exactcore.factorial(n)
        assert cur == n * prev
        assert cur > prev
        prev = cur


def test_double_factorials_examples():
    assert exactcore.double_fact_even(0) == 1
    assert exactcore.double_fact_even(3) == 48
    assert exactcore.double_fact_even(5) == 3840
    assert exactcore.double_fact_odd(0) == 1
    assert exactcore.double_fact_odd(3) == 15
    assert exactcore.double_fact_odd(5) == 945


def test_double_factorials_match_direct_products():
    for n in range(0, 200):
        even = 1
        odd = 1
        for i in range(1, n + 1):
            even *= 2 * i
            odd *= 2 * i - 1
        assert exactcore.double_fact_even(n) == even
        assert exactcore.double_fact_odd(n) == odd


def test_double_factorial_identities():
    for n in range(0, 400):
        assert exactcore.double_fact_even(n) * exactcore.double_fact_odd(n) == exactcore.factorial(2 * n)
        assert exactcore.double_fact_even(n) == (1 << n) * exactcore.factorial(n)


def test_negative_rejected():
    with pytest.raises(DomainError):
        exactcore.factorial(-1)
    with pytest.raises(DomainError):
        exactcore.double_fact_even(-2)
    with pytest.raises(DomainError):
        exactcore.double_fact_odd(-2)


def test_rational_sub():
    assert exactcore.rational_sub(Fraction(1, 4), Fraction(1, 8)) == Fraction(1, 8)
    assert exactcore.rational_sub(Fraction(1, 4), Fraction(1, 4)) == Fraction(0, 1)
    # cross-multiplication oracle: 1/12 - 1/16 = (16 - 12)/192
    assert exactcore.rational_sub(Fraction(1, 12), Fraction(1, 16)) == Fraction(4, 192)
    out = exactcore.rational_sub(Fraction(1, 12), Fraction(1, 16))
    assert out.denominator > 0 and math.gcd(out.numerator, out.denominator) == 1


def test_decimal_length():
    for x in (1, 9, 10, 11, 99, 100, 101, 10**17 - 1, 10**17, 10**17 + 1):
        assert exactcore.decimal_length(x) == len(str(x))
    big = exactcore.factorial(3000)
    assert exactcore.decimal_length(big) == len(exactcore.to_decimal(big))
    with pytest.raises(DomainError):
        exactcore.decimal_length(0)


def test_to_decimal_handles_big_values():
    big = exactcore.factorial(3000)  # ~9131 digits, beyond the default str cap
    s = exactcore.to_decimal(big)
    assert s.isdigit()
    assert int(s) == big
