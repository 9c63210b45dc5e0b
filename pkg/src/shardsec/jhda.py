"""Joint-hypergeometric baseline for the committee takeover probability.

:func:`jhda_exact` enumerates every vector (m_1, ..., m_lam) of per-committee
Sybil counts with each m_i <= cap and sum M_sel, weighting each by
prod C(n, m_i).  It deliberately does not reuse the polynomial code so it
can serve as an independent oracle for it; its cost grows like cap**lam,
which is why it carries an enumeration budget.

:func:`jhda_trials` estimates the same probability by sampling seatings.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exactmath import ExactProb, binomial, prob_from_ratio

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "SHARDSEC_BUDGET"
GENERATOR_NAME = "numpy.PCG64"
CHUNK = 1 << 16


class BudgetExceeded(RuntimeError):
    """The nested sum would enumerate more states than allowed."""

    def __init__(self, states: int, budget: int):
        self.states = states
        self.budget = budget
        super().__init__(
            f"exact enumeration needs ~{states:.3g} states, budget is {budget}; "
            "use the generating-polynomial route or jhda_trials"
        )


def enumeration_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET
    value = int(raw)
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer")
    return value


def state_count(committees: int, capacity: int, sybils: int) -> int:
    """Upper bound on the prefixes the nested sum visits."""
    per = min(capacity, sybils) + 1
    return per ** max(committees - 1, 0)


def exact_safe_count(n: int, committees: int, capacity: int, sybils: int,
                     budget: Optional[int] = None) -> int:
    if budget is None:
        budget = enumeration_budget()
    states = state_count(committees, capacity, sybils)
    if states > budget:
        raise BudgetExceeded(states, budget)
    weights = [math.comb(n, i) for i in range(capacity + 1)]

    def nested(left: int, remaining: int) -> int:
        if left == 1:
            return weights[remaining] if remaining <= capacity else 0
        if remaining > left * capacity:
            return 0
        total = 0
        for m_i in range(min(capacity, remaining) + 1):
            total += weights[m_i] * nested(left - 1, remaining - m_i)
        return total

    return nested(committees, sybils)


def jhda_takeover_prob(n: int, committees: int, capacity: int, sybils: int,
                       budget: Optional[int] = None) -> ExactProb:
    seats = committees * n
    if sybils > seats:
        return prob_from_ratio(1, 1)
    safe = exact_safe_count(n, committees, capacity, sybils, budget)
    return 1 - prob_from_ratio(safe, binomial(seats, sybils))


def jhda_exact(params, budget: Optional[int] = None) -> ExactProb:
    """Exact takeover probability by nested summation.

    Raises :class:`BudgetExceeded` for instances too large to enumerate.
    """
    return jhda_takeover_prob(params.n, params.committees, params.capacity,
                              params.M_sel, budget)


@dataclass(frozen=True)
class TrialConfig:
    trials: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class TrialEstimate:
    p_hat: float
    stderr: float
    failures: int
    trials: int
    seed: int
    generator: str = GENERATOR_NAME


def seat_sybils(rng: np.random.Generator, sybils, n: int, committees: int,
                unassigned: int = 0) -> np.ndarray:
    """Seat Sybil IDs uniformly without replacement; return per-committee counts.

    ``sybils`` is an int or an array (one entry per trial).  Counts are
    drawn committee by committee from the conditional hypergeometric
    marginals, which is the same joint law as shuffling the seats.
    Returns an array of shape ``(trials, committees)``.
    """
    remaining = np.array(sybils, dtype=np.int64, ndmin=1)
    seats_left = committees * n + unassigned
    if np.any(remaining > seats_left):
        raise ValueError("more Sybil IDs than seats")
    counts = np.empty((remaining.shape[0], committees), dtype=np.int64)
    for j in range(committees):
        others = seats_left - n
        if others == 0:
            c = remaining.copy()
        else:
            c = rng.hypergeometric(n, others, remaining)
        counts[:, j] = c
        remaining = remaining - c
        seats_left = others
    return counts


def _chunk_sizes(total: int) -> list:
    full, rest = divmod(total, CHUNK)
    return [CHUNK] * full + ([rest] if rest else [])


def jhda_trials(params, cfg: TrialConfig, workers: int = 1) -> TrialEstimate:
    """Monte-Carlo estimate of the takeover probability.

    Trials are split into fixed-size chunks, each with its own stream
    spawned from ``cfg.seed``, so results do not depend on ``workers``.
    """
    n, lam, cap, m = params.n, params.committees, params.capacity, params.M_sel
    sizes = _chunk_sizes(cfg.trials)
    streams = np.random.SeedSequence(cfg.seed).spawn(len(sizes))

    def run(i: int) -> int:
        rng = np.random.Generator(np.random.PCG64(streams[i]))
        if m > lam * n:
            return sizes[i]
        counts = seat_sybils(rng, np.full(sizes[i], m), n, lam)
        return int(np.count_nonzero((counts > cap).any(axis=1)))

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            failures = sum(pool.map(run, range(len(sizes))))
    else:
        failures = sum(run(i) for i in range(len(sizes)))
    p_hat = failures / cfg.trials
    stderr = math.sqrt(p_hat * (1 - p_hat) / cfg.trials)
    return TrialEstimate(p_hat, stderr, failures, cfg.trials, cfg.seed)
