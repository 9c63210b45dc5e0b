"""Generating-polynomial computation of the committee takeover probability.

One committee of size ``n`` that tolerates at most ``cap`` Sybil IDs is
described by

    psi(x) = sum_{i=0}^{cap} C(n, i) x^i

where the coefficient of x^i counts the ways to seat i Sybil IDs in it.
For ``lam`` independent committees the product psi(x)**lam counts safe
placements by total Sybil count, so the probability that at least one
committee is taken over when ``m`` Sybil IDs are spread over the
``lam * n`` committee seats is

    1 - [x^m] psi(x)**lam / C(lam * n, m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .exactmath import ExactProb, binomial, prob_from_ratio


@dataclass(frozen=True)
class BigPoly:
    """Dense polynomial with non-negative integer coefficients.

    ``coeffs[i]`` is the coefficient of x^i.  Trailing zeros are trimmed,
    and when ``degree_cap`` is set nothing above that degree is stored.
    """

    coeffs: tuple
    degree_cap: Optional[int] = None

    def __post_init__(self) -> None:
        cs = list(self.coeffs)
        if self.degree_cap is not None:
            if self.degree_cap < 0:
                raise ValueError("degree_cap must be >= 0")
            del cs[self.degree_cap + 1:]
        while cs and cs[-1] == 0:
            cs.pop()
        if any(c < 0 for c in cs):
            raise ValueError("coefficients must be non-negative")
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def of(cls, coeffs: Iterable[int], cap: Optional[int] = None) -> "BigPoly":
        return cls(tuple(coeffs), cap)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, m: int) -> int:
        return coefficient(self, m)

    def __mul__(self, other: "BigPoly") -> "BigPoly":
        return poly_mul(self, other, _min_cap(self.degree_cap, other.degree_cap))

    def __len__(self) -> int:
        return len(self.coeffs)


def _min_cap(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def committee_poly(n: int, cap: int) -> BigPoly:
    """psi(x) for one committee of ``n`` seats tolerating ``cap`` Sybil IDs."""
    if not 0 <= cap <= n:
        raise ValueError(f"capacity must satisfy 0 <= cap <= n, got cap={cap}, n={n}")
    return BigPoly(tuple(binomial(n, i) for i in range(cap + 1)))


def poly_mul(a: BigPoly, b: BigPoly, cap: Optional[int] = None) -> BigPoly:
    """Product of two polynomials, dropping every term above degree ``cap``."""
    return BigPoly(_convolve(a.coeffs, b.coeffs, cap), cap)


def _convolve(a: Sequence[int], b: Sequence[int], cap: Optional[int]) -> list:
    if not a or not b:
        return []
    size = len(a) + len(b) - 1
    if cap is not None:
        size = min(size, cap + 1)
    out = [0] * size
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        if i >= size:
            break
        for j, bj in enumerate(b[: size - i]):
            out[i + j] += ai * bj
    return out


def poly_pow(p: BigPoly, lam: int, cap: int) -> BigPoly:
    """``p ** lam`` truncated to degree ``cap`` (binary exponentiation)."""
    if lam < 1:
        raise ValueError(f"exponent must be >= 1, got {lam}")
    if cap < 0:
        raise ValueError(f"cap must be >= 0, got {cap}")
    base = list(p.coeffs[: cap + 1])
    result = None
    while True:
        if lam & 1:
            result = base if result is None else _convolve(result, base, cap)
        lam >>= 1
        if not lam:
            break
        base = _convolve(base, base, cap)
    return BigPoly(tuple(result), cap)


def coefficient(p: BigPoly, m: int) -> int:
    """[x^m] p, zero past the stored degree."""
    if m < 0:
        raise ValueError(f"degree must be >= 0, got {m}")
    return p.coeffs[m] if m < len(p.coeffs) else 0


def safe_count(n: int, committees: int, capacity: int, sybils: int) -> int:
    """Seatings of ``sybils`` Sybil IDs that leave every committee within capacity."""
    if sybils < 0:
        raise ValueError("sybils must be >= 0")
    psi = committee_poly(n, capacity)
    return coefficient(poly_pow(psi, committees, sybils), sybils)


def takeover_prob(n: int, committees: int, capacity: int, sybils: int,
                  unassigned: int = 0) -> ExactProb:
    """Probability that some committee holds more than ``capacity`` Sybil IDs.

    ``sybils`` Sybil IDs are placed uniformly over ``committees * n`` seats
    plus ``unassigned`` seats that belong to no committee (those absorb
    Sybil IDs freely).
    """
    seats = committees * n + unassigned
    if sybils > seats:
        # cannot seat them all: some committee overflows by pigeonhole
        return prob_from_ratio(1, 1)
    if unassigned:
        psi = poly_mul(
            poly_pow(committee_poly(n, capacity), committees, sybils),
            BigPoly(tuple(binomial(unassigned, i) for i in range(unassigned + 1))),
            sybils,
        )
        safe = coefficient(psi, sybils)
    else:
        safe = safe_count(n, committees, capacity, sybils)
    total = binomial(seats, sybils)
    return 1 - prob_from_ratio(safe, total)


def pgfa_failure_prob(params, include_remainder: bool = False) -> ExactProb:
    """Probability that at least one committee is taken over.

    By default the ``M_sel`` Sybil IDs are spread over the ``lambda * n``
    committee seats only.  With ``include_remainder`` the ``K - lambda*n``
    unassigned selection-pool IDs are also possible landing spots.
    """
    unassigned = params.remainder if include_remainder else 0
    return takeover_prob(params.n, params.committees, params.capacity,
                         params.M_sel, unassigned)
