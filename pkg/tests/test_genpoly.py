import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import hypergeom as sp_hypergeom

from shardsec.exactmath import binomial, to_scientific
from shardsec.genpoly import (BigPoly, coefficient, committee_poly,
                              pgfa_failure_prob, poly_mul, poly_pow,
                              safe_count, takeover_prob)

from conftest import TABLE_ROWS, small_params


def brute_safe_count(n, lam, cap, m):
    """Count seatings by listing every choice of Sybil seats."""
    safe = 0
    for seats in itertools.combinations(range(lam * n), m):
        per = [0] * lam
        for s in seats:
            per[s // n] += 1
        safe += max(per, default=0) <= cap
    return safe


def chained_takeover(n, lam, cap, m):
    """Float route: committees filled one at a time from the remaining seats."""
    f = np.zeros(m + 1)
    f[0] = 1.0  # no committees left to fill
    for j in range(1, lam + 1):
        seats = j * n
        g = np.zeros(m + 1)
        for s in range(min(m, seats) + 1):
            c = np.arange(min(cap, s) + 1)
            g[s] = np.dot(sp_hypergeom.pmf(c, seats, s, n), f[s - c])
        f = g
    return 1 - f[m]


def test_committee_poly():
    assert committee_poly(4, 2).coeffs == (1, 4, 6)
    assert committee_poly(3, 0).coeffs == (1,)
    p = committee_poly(100, 33)
    assert p.degree == 33
    assert coefficient(p, 33) == binomial(100, 33)
    with pytest.raises(ValueError):
        committee_poly(3, 4)


def test_poly_mul():
    one_x = BigPoly((1, 1))
    assert poly_mul(one_x, one_x).coeffs == (1, 2, 1)
    assert poly_mul(one_x, one_x, 1).coeffs == (1, 2)
    psi = committee_poly(4, 2)
    sq = poly_mul(psi, psi)
    assert coefficient(sq, 2) == 28 == brute_safe_count(4, 2, 2, 2)


def test_poly_pow_and_coefficient():
    assert poly_pow(BigPoly((1, 1)), 3, 3).coeffs == (1, 3, 3, 1)
    p = BigPoly((1, 4, 6))
    assert poly_pow(p, 1, 1).coeffs == (1, 4)
    assert coefficient(p, 1) == 4
    assert coefficient(p, 5) == 0
    assert coefficient(poly_pow(BigPoly((1, 2)), 2, 5), 2) == 4
    with pytest.raises(ValueError):
        poly_pow(p, 0, 3)


def test_bigpoly_canonical_form():
    assert BigPoly((1, 2, 0, 0)).coeffs == (1, 2)
    assert BigPoly((1, 2, 3), 1).coeffs == (1, 2)
    assert BigPoly(()).degree == -1
    with pytest.raises(ValueError):
        BigPoly((1, -1))


polys = st.lists(st.integers(0, 10**6), min_size=1, max_size=51)


@settings(max_examples=60, deadline=None)
@given(polys, st.integers(1, 16), st.integers(0, 60))
def test_binary_power_matches_repeated_multiplication(coeffs, lam, cap):
    p = BigPoly(tuple(coeffs))
    naive = p
    for _ in range(lam - 1):
        naive = poly_mul(naive, p)
    expected = BigPoly(naive.coeffs, cap)
    assert poly_pow(p, lam, cap) == expected


@pytest.mark.parametrize("n,lam", [(2, 1), (2, 3), (3, 2), (4, 2), (2, 4)])
def test_safe_count_matches_brute_force(n, lam):
    for cap in range(n + 1):
        for m in range(lam * n + 1):
            assert safe_count(n, lam, cap, m) == brute_safe_count(n, lam, cap, m)


def test_full_capacity_is_vandermonde():
    for lam in range(1, 5):
        for n in range(1, 9):
            full = poly_pow(committee_poly(n, n), lam, lam * n)
            for m in range(lam * n + 1):
                assert coefficient(full, m) == binomial(lam * n, m)
            assert takeover_prob(n, lam, n, min(12, lam * n)) == 0


def test_degenerate_cases():
    assert pgfa_failure_prob(small_params(4, 3, 0)) == 0
    # 7 Sybil IDs, three committees of capacity 2: pigeonhole
    assert pgfa_failure_prob(small_params(4, 3, 7)) == 1
    assert takeover_prob(2, 2, 0, 5) == 1


@pytest.mark.parametrize("row,table", [(0, "1.56e-01"), (4, "9.94e-01"),
                                       (6, "5.69e-06"), (7, "1.61e-04")])
def test_table_takeover_probabilities(row, table):
    from shardsec.params import validate
    p = validate(TABLE_ROWS[row])
    value = pgfa_failure_prob(p)
    assert to_scientific(value, 3) == table
    oracle = chained_takeover(p.n, p.committees, p.capacity, p.M_sel)
    assert float(value) == pytest.approx(oracle, rel=1e-6)


def test_row1_exact_value_frozen():
    from shardsec.params import validate
    value = pgfa_failure_prob(validate(TABLE_ROWS[0]))
    # 12 significant digits from the chained float oracle
    assert float(value) == pytest.approx(0.155637422626, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 8), st.data())
def test_monotone_in_sybils_and_capacity(lam, n, data):
    cap = data.draw(st.integers(0, n))
    probs = [takeover_prob(n, lam, cap, m) for m in range(lam * n + 1)]
    assert all(a <= b for a, b in zip(probs, probs[1:]))
    m = data.draw(st.integers(0, lam * n))
    by_cap = [takeover_prob(n, lam, c, m) for c in range(n + 1)]
    assert all(a >= b for a, b in zip(by_cap, by_cap[1:]))
    assert all(0 <= p <= 1 for p in probs)


def test_remainder_seats_option():
    from shardsec.params import validate
    p = validate(dict(TABLE_ROWS[0], n=150, r="1/3"))  # 5 committees, 50 spare seats
    default = pgfa_failure_prob(p)
    spread = pgfa_failure_prob(p, include_remainder=True)
    assert default == takeover_prob(150, 5, 50, 200)
    assert spread < default
    # brute check of the spare-seat model on a tiny case: 2 committees of 2, 1 spare
    safe = 0
    for seats in itertools.combinations(range(5), 2):
        per = [0, 0]
        for s in seats:
            if s < 4:
                per[s // 2] += 1
        safe += max(per) <= 1
    assert takeover_prob(2, 2, 1, 2, unassigned=1) == 1 - Fraction(safe, 10)
