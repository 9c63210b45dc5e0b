from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, strategies as st

from shardsec.exactmath import (binomial, prob_from_ratio, round_half_even,
                                to_fixed, to_scientific)


def pascal_row(n):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


def test_small_binomials():
    assert binomial(5, 2) == 10
    assert all(binomial(n, 0) == 1 for n in range(50))
    assert binomial(4, -1) == 0
    assert binomial(4, 5) == 0


def test_negative_n_rejected():
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_large_binomial_against_independent_libraries():
    value = binomial(800, 200)
    assert value == int(gmpy2.comb(800, 200))
    assert value == pascal_row(800)[200]
    text = str(value)
    assert len(text) == 194
    assert text.startswith("7725180424")


@given(st.integers(0, 300), st.integers(0, 300))
def test_symmetry(n, k):
    k = k % (n + 1)
    assert binomial(n, k) == binomial(n, n - k)


@given(st.integers(1, 300), st.integers(-2, 302))
def test_pascal_rule(n, k):
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_row_sums_are_powers_of_two():
    for n in range(65):
        assert sum(binomial(n, k) for k in range(n + 1)) == 2**n


@given(st.integers(0, 50), st.integers(1, 50), st.integers(0, 50), st.integers(1, 50))
def test_products_stay_reduced(a, b, c, d):
    x = Fraction(a, b) * Fraction(c, d)
    num, den = a * c, b * d
    from math import gcd
    g = gcd(num, den)
    assert (x.numerator, x.denominator) == (num // g, den // g)


@pytest.mark.parametrize("num,den,expected", [(10, 20, Fraction(1, 2)), (0, 7, Fraction(0))])
def test_prob_from_ratio(num, den, expected):
    p = prob_from_ratio(num, den)
    assert p == expected
    assert (p.numerator, p.denominator) == (expected.numerator, expected.denominator)


@pytest.mark.parametrize("num,den", [(6, 4), (1, 0), (-1, 3)])
def test_prob_from_ratio_rejects(num, den):
    with pytest.raises(ValueError):
        prob_from_ratio(num, den)


@pytest.mark.parametrize("value,digits,text", [
    (Fraction(1, 2), 3, "5.00e-01"),
    (Fraction(1, 3), 3, "3.33e-01"),
    (Fraction(1), 3, "1.00e+00"),
    (Fraction(0), 3, "0"),
    (Fraction(9995, 10**7), 3, "1.00e-03"),
    (Fraction(1, 10**400), 2, "1.0e-400"),
    (Fraction(7, 2), 1, "4e+00"),
])
def test_to_scientific(value, digits, text):
    assert to_scientific(value, digits) == text


def test_round_half_even_ties():
    # 2.125 and 2.135 are exact ties at two decimals
    assert to_scientific(Fraction(2125, 1000), 3) == "2.12e+00"
    assert to_scientific(Fraction(2135, 1000), 3) == "2.14e+00"
    assert round_half_even(Fraction(5, 2)) == 2


def test_to_fixed():
    assert to_fixed(Fraction(862361, 100), 2) == "8623.61"
    assert to_fixed(Fraction(1, 8), 2) == "0.12"
    assert to_fixed(Fraction(3, 8), 2) == "0.38"


@given(st.fractions(min_value=Fraction(1, 10**30), max_value=10**6))
def test_scientific_round_trip(x):
    text = to_scientific(x, 3)
    mantissa, exp = text.split("e")
    ulp = Fraction(1, 100) * Fraction(10) ** int(exp)
    assert abs(Fraction(mantissa) * Fraction(10) ** int(exp) - x) <= ulp / 2
