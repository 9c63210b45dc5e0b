"""Exact security analysis of sharded blockchains under Sybil attacks."""

from .attack import (AttackSummary, SecurityReport, analyze, bcp_comparator,
                     epoch_failure_jhda, successful_attack_prob, years_to_fail)
from .exactmath import ExactProb, binomial, prob_from_ratio, to_scientific
from .genpoly import (BigPoly, coefficient, committee_poly, pgfa_failure_prob,
                      poly_mul, poly_pow)
from .hypergeom import HypergeomSpec, pmf, selection_threshold, tail_at_least
from .jhda import BudgetExceeded, TrialConfig, jhda_exact, jhda_trials
from .params import NetworkParams, ParamError, validate
from .simulate import SimOutcome, simulate_epochs

__version__ = "0.1.0"
