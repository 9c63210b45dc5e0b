"""Hypergeometric selection of Sybil IDs into the ID Selection Pool."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import ExactProb, binomial, prob_from_ratio

THRESHOLD_MODES = ("strict", "floor_RK", "ceil")
DEFAULT_THRESHOLD_MODE = "strict"


@dataclass(frozen=True)
class HypergeomSpec:
    """Draw ``draws`` items from ``population`` containing ``successes`` marked ones."""

    population: int
    successes: int
    draws: int

    def __post_init__(self) -> None:
        if min(self.population, self.successes, self.draws) < 0:
            raise ValueError(f"negative count in {self}")
        if self.successes > self.population:
            raise ValueError(f"successes exceed population in {self}")
        if self.draws > self.population:
            raise ValueError(f"draws exceed population in {self}")

    @property
    def support(self) -> range:
        lo = max(0, self.draws - (self.population - self.successes))
        hi = min(self.successes, self.draws)
        return range(lo, hi + 1)

    def weight(self, m: int) -> int:
        """Number of draws containing exactly ``m`` marked items."""
        return binomial(self.successes, m) * binomial(
            self.population - self.successes, self.draws - m
        )

    @property
    def total(self) -> int:
        return binomial(self.population, self.draws)


def pmf(spec: HypergeomSpec, m: int) -> ExactProb:
    """P(X = m) for X ~ Hypergeometric(spec)."""
    if m not in spec.support:
        return Fraction(0)
    return prob_from_ratio(spec.weight(m), spec.total)


def tail_at_least(spec: HypergeomSpec, m: int) -> ExactProb:
    """P(X >= m).  Sums only over the nonzero support."""
    support = spec.support
    if m <= support.start:
        return Fraction(1)
    count = sum(spec.weight(s) for s in range(m, support.stop))
    return prob_from_ratio(count, spec.total)


def selection_threshold(K: int, R: Fraction, mode: str = DEFAULT_THRESHOLD_MODE) -> int:
    """Smallest Sybil count in the selection pool that counts as a breach.

    ``strict``    more than floor(R*K) Sybil IDs (reproduces the published table)
    ``floor_RK``  at least floor(R*K)
    ``ceil``      at least ceil(R*K)
    """
    limit = Fraction(R) * K
    if mode == "strict":
        return math.floor(limit) + 1
    if mode == "floor_RK":
        return math.floor(limit)
    if mode == "ceil":
        return math.ceil(limit)
    raise ValueError(f"unknown threshold mode {mode!r}; expected one of {THRESHOLD_MODES}")


def pool_spec(params) -> HypergeomSpec:
    """The ID Pool draw: K IDs out of Lambda = N - 1 + M, M of them Sybil."""
    return HypergeomSpec(params.pool_size, params.M, params.K)


def pool_breach_prob(params, threshold: int) -> ExactProb:
    return tail_at_least(pool_spec(params), threshold)
