"""End-to-end Monte-Carlo model of one sharding epoch.

Each epoch draws the ID Selection Pool from the ID Pool, then seats the
Sybil IDs among the committees.  Two seating modes exist:

``fixed``    exactly ``M_sel`` Sybil IDs are seated, whatever the pool draw
             was (the worst-case model behind the analytic takeover
             probability)
``sampled``  the Sybil IDs actually drawn into the pool are seated, with
             any unassigned selection-pool seats absorbing some of them
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .jhda import GENERATOR_NAME, _chunk_sizes, seat_sybils

SIM_MODES = ("fixed", "sampled")


@dataclass
class SimOutcome:
    epochs: int
    pool_breaches: int
    takeover_failures: int
    joint_failures: int
    committee_histogram: np.ndarray
    seed: int
    mode: str = "fixed"
    threshold: int = 0
    generator: str = GENERATOR_NAME

    @property
    def breach_rate(self) -> float:
        return self.pool_breaches / self.epochs

    @property
    def takeover_rate(self) -> float:
        return self.takeover_failures / self.epochs

    @property
    def joint_rate(self) -> float:
        return self.joint_failures / self.epochs

    def mean_committee_sybils(self) -> float:
        h = self.committee_histogram
        return float(np.dot(np.arange(h.size), h) / h.sum())

    def merge(self, other: "SimOutcome") -> "SimOutcome":
        h = np.zeros(max(self.committee_histogram.size, other.committee_histogram.size),
                     dtype=np.int64)
        h[: self.committee_histogram.size] += self.committee_histogram
        h[: other.committee_histogram.size] += other.committee_histogram
        return SimOutcome(
            self.epochs + other.epochs,
            self.pool_breaches + other.pool_breaches,
            self.takeover_failures + other.takeover_failures,
            self.joint_failures + other.joint_failures,
            h, self.seed, self.mode, self.threshold, self.generator,
        )

    def to_json(self) -> str:
        record = {
            "epochs": self.epochs,
            "pool_breaches": self.pool_breaches,
            "takeover_failures": self.takeover_failures,
            "joint_failures": self.joint_failures,
            "committee_histogram": [int(c) for c in self.committee_histogram],
            "seed": self.seed,
            "mode": self.mode,
            "threshold": self.threshold,
            "generator": self.generator,
        }
        return json.dumps(record, sort_keys=True)

    def histogram_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["committee_sybil_count", "frequency"])
        for count, freq in enumerate(self.committee_histogram):
            w.writerow([count, int(freq)])
        return buf.getvalue()


def simulate_epochs(params, epochs: int, threshold: int, seed: int,
                    mode: str = "fixed", workers: int = 1) -> SimOutcome:
    """Run ``epochs`` independent epochs and tally breaches and takeovers.

    A pool breach is an epoch whose selection pool holds at least
    ``threshold`` Sybil IDs; a takeover is an epoch where some committee
    holds more than ``params.capacity``.  Deterministic in ``seed``.
    """
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if mode not in SIM_MODES:
        raise ValueError(f"unknown simulation mode {mode!r}; expected one of {SIM_MODES}")
    n, lam, cap = params.n, params.committees, params.capacity
    honest = params.pool_size - params.M
    sizes = _chunk_sizes(epochs)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))

    def run(i: int) -> SimOutcome:
        rng = np.random.Generator(np.random.PCG64(streams[i]))
        size = sizes[i]
        drawn = rng.hypergeometric(params.M, honest, params.K, size=size) \
            if params.M and honest else np.full(size, min(params.M, params.K))
        breach = drawn >= threshold
        if mode == "fixed":
            # Sybil IDs beyond the committee seats overflow by pigeonhole
            seated = min(params.M_sel, lam * n)
            counts = seat_sybils(rng, np.full(size, seated), n, lam)
            takeover = (counts > cap).any(axis=1) | (params.M_sel > seated)
        else:
            counts = seat_sybils(rng, drawn, n, lam, params.remainder)
            takeover = (counts > cap).any(axis=1)
        hist = np.bincount(counts.ravel(), minlength=n + 1)
        return SimOutcome(
            size, int(breach.sum()), int(takeover.sum()),
            int((breach & takeover).sum()), hist.astype(np.int64), seed, mode,
            threshold,
        )

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    else:
        parts = [run(i) for i in range(len(sizes))]
    out = parts[0]
    for part in parts[1:]:
        out = out.merge(part)
    return out
