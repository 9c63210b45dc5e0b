"""Headline security quantities: attack probability, years to failure, BCP."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .exactmath import ExactProb, binomial, to_fixed, to_scientific
from .genpoly import pgfa_failure_prob
from .hypergeom import (DEFAULT_THRESHOLD_MODE, pool_breach_prob,
                        selection_threshold)
from .jhda import TrialConfig, jhda_exact, jhda_trials
from .params import NetworkParams

METHODS = ("PGFA", "JHDA-exact", "JHDA-trials", "BCP")
DEFAULT_SECURE_YEARS = Fraction(1)

# exact rational, or math.inf when the failure probability is zero
Years = Union[Fraction, float]


@dataclass(frozen=True)
class SecurityReport:
    params: NetworkParams
    P: ExactProb
    P_prime: Fraction
    P_double_prime: Fraction
    p_e: Fraction
    E_s: Years
    A: Years
    method: str
    threshold: int
    threshold_mode: str = DEFAULT_THRESHOLD_MODE
    notes: tuple = field(default=())

    def formatted(self) -> dict:
        """Values as the published tables print them."""
        return {
            "P": to_scientific(self.P, 3),
            "P_prime": to_scientific(self.P_prime, 3),
            "P_double_prime": to_scientific(self.P_double_prime, 3),
            "p_e": to_scientific(self.p_e, 3),
            "E_s": format_years(self.E_s),
            "A": format_years(self.A),
        }


@dataclass(frozen=True)
class AttackSummary:
    report: SecurityReport
    secure_flag: bool
    secure_threshold_years: Fraction

    def to_json_dict(self) -> dict:
        r = self.report
        out = {"params": r.params.to_json_dict(), "method": r.method,
               "threshold": r.threshold, "threshold_mode": r.threshold_mode}
        out.update(r.formatted())
        out["secure"] = self.secure_flag
        out["secure_threshold_years"] = str(self.secure_threshold_years)
        if r.notes:
            out["notes"] = list(r.notes)
        return out


def format_years(a: Years) -> str:
    """Two decimals between 1 and 10**6 years, three significant digits otherwise."""
    if a == math.inf:
        return "inf"
    if 1 <= a < 10**6:
        return to_fixed(a, 2)
    return to_scientific(a, 3)


def successful_attack_prob(params: NetworkParams, threshold: int,
                           include_remainder: bool = False) -> ExactProb:
    """P'' = P(pool holds >= threshold Sybil IDs) * P(some committee taken over)."""
    return pool_breach_prob(params, threshold) * pgfa_failure_prob(params, include_remainder)


def expected_rounds(p_fail: Fraction) -> Years:
    """Expected sharding rounds until the first failure (1/p)."""
    if p_fail < 0:
        raise ValueError("failure probability must be non-negative")
    return math.inf if p_fail == 0 else 1 / Fraction(p_fail)


def years_to_fail(p_fail: Fraction, N_s: int) -> Years:
    if N_s < 1:
        raise ValueError(f"N_s must be >= 1, got {N_s}")
    rounds = expected_rounds(p_fail)
    return rounds if rounds == math.inf else rounds / N_s


def epoch_failure_jhda(params: NetworkParams, threshold: int,
                       budget: Optional[int] = None) -> ExactProb:
    """p_e with the takeover factor from the exact nested sum."""
    P = pool_breach_prob(params, threshold)
    if P == 0:
        return Fraction(0)
    return P * jhda_exact(params, budget)


def single_shard_tail(params: NetworkParams) -> ExactProb:
    """Probability that one committee of n drawn from K holds more than cap Sybil IDs."""
    K, m, n, cap = params.K, params.M_sel, params.n, params.capacity
    count = sum(binomial(m, i) * binomial(K - m, n - i)
                for i in range(cap + 1, min(n, m) + 1))
    return Fraction(count, binomial(K, n))


def bcp_comparator(params: NetworkParams) -> Fraction:
    """First-committee failure probability times the committee count.

    This is the union-bound style estimate that the generating-polynomial
    method replaces.  It is intentionally not clamped and exceeds 1 once
    committees are individually likely to fail.
    """
    return params.committees * single_shard_tail(params)


def analyze(params: NetworkParams, threshold_mode: str = DEFAULT_THRESHOLD_MODE,
            method: str = "PGFA", threshold: Optional[int] = None,
            secure_years: Fraction = DEFAULT_SECURE_YEARS,
            include_remainder: bool = False,
            trials: Optional[TrialConfig] = None,
            budget: Optional[int] = None) -> AttackSummary:
    """Compute the full security report for one parameter vector."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if threshold is None:
        threshold = selection_threshold(params.K, params.R, threshold_mode)
    else:
        threshold_mode = "explicit"
    notes = []
    if params.remainder:
        notes.append(f"{params.remainder} selection-pool IDs not assigned to any committee "
                     f"(K={params.K}, lambda*n={params.committee_slots})")
    P = pool_breach_prob(params, threshold)
    if method == "PGFA":
        P_prime = pgfa_failure_prob(params, include_remainder)
    elif method == "JHDA-exact":
        P_prime = jhda_exact(params, budget)
    elif method == "JHDA-trials":
        est = jhda_trials(params, trials or TrialConfig(100_000))
        P_prime = Fraction(est.failures, est.trials)
        notes.append(f"P_prime estimated from {est.trials} trials, stderr {est.stderr:.3g}, "
                     f"seed {est.seed}, {est.generator}")
    else:
        P_prime = bcp_comparator(params)
    p_e = P * P_prime
    P_dd = p_e
    A = years_to_fail(P_dd, params.N_s)
    report = SecurityReport(params, P, P_prime, P_dd, p_e, expected_rounds(P_dd), A,
                            method, threshold, threshold_mode, tuple(notes))
    return AttackSummary(report, A >= secure_years, Fraction(secure_years))
