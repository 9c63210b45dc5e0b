"""Command-line front end.

    shardsec analyze scenario.json
    shardsec sweep sweep.json
    shardsec verify [--grid lam=1..4,n=2..8,m=0..12]
    shardsec bench scenario.json --reps 5
    shardsec simulate scenario.json --epochs 1000000

Exit codes: 0 ok, 2 invalid input, 3 I/O failure, 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .attack import analyze, bcp_comparator
from .exactmath import binomial, to_scientific
from .genpoly import pgfa_failure_prob, safe_count, takeover_prob
from .hypergeom import THRESHOLD_MODES, DEFAULT_THRESHOLD_MODE, selection_threshold
from .jhda import (BudgetExceeded, TrialConfig, enumeration_budget, jhda_exact,
                   jhda_takeover_prob, state_count)
from .params import PRIMARY_FIELDS, NetworkParams, ParamError, validate
from .simulate import SIM_MODES, simulate_epochs

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_MISMATCH = 0, 2, 3, 4
SWEEP_OUTPUTS = ("P", "P_prime", "P_double_prime", "A", "bcp")
DEFAULT_GRID = "lam=1..4,n=2..8,m=0..12"


class InputError(Exception):
    """Malformed input that is not a parameter invariant violation."""


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None


def load_scenario(path: str) -> NetworkParams:
    """One scenario from a JSON object, or from the first row of a CSV file."""
    if path.lower().endswith(".csv"):
        rows = load_scenario_csv(path)
        if not rows:
            raise InputError(f"{path}: no scenario rows")
        return rows[0]
    raw = load_json(path)
    if not isinstance(raw, dict):
        raise InputError(f"{path}: scenario must be a JSON object")
    return validate(raw)


def load_scenario_csv(path: str) -> list:
    """Scenarios from CSV, one per row, header naming the fields."""
    with open(path, newline="", encoding="utf-8") as fh:
        return [validate(row) for row in csv.DictReader(fh)]


# --- sweep -----------------------------------------------------------------

@dataclass(frozen=True)
class SweepSpec:
    base: NetworkParams
    axis: str
    values: tuple
    outputs: tuple = ("P", "P_prime", "P_double_prime", "A")
    tie: tuple = ()

    def __post_init__(self) -> None:
        if self.axis not in PRIMARY_FIELDS:
            raise InputError(f"sweep axis {self.axis!r} is not a parameter field")
        for name in self.tie:
            if name not in PRIMARY_FIELDS:
                raise InputError(f"tied field {name!r} is not a parameter field")
        if not self.values:
            raise InputError("empty sweep")
        bad = [o for o in self.outputs if o not in SWEEP_OUTPUTS]
        if bad or not self.outputs:
            raise InputError(f"unknown sweep outputs {bad}; choose from {SWEEP_OUTPUTS}")

    @classmethod
    def from_json(cls, raw) -> "SweepSpec":
        if not isinstance(raw, dict) or "base" not in raw or "axis" not in raw:
            raise InputError("sweep file needs 'base', 'axis' and 'values'")
        outputs = tuple(raw.get("outputs", cls.outputs))
        return cls(validate(raw["base"]), raw["axis"], tuple(raw.get("values", ())),
                   outputs, tuple(raw.get("tie", ())))

    def points(self):
        for v in self.values:
            changes = {self.axis: v, **{t: v for t in self.tie}}
            try:
                yield v, self.base.replace(**changes)
            except ParamError as exc:
                raise ParamError(exc.invariant, f"{exc.detail} (at {self.axis}={v})") from None


def _sweep_row(args) -> list:
    value, params, outputs, threshold_mode = args
    summary = analyze(params, threshold_mode)
    fmt = summary.report.formatted()
    row = [_plain(value)]
    for out in outputs:
        if out == "bcp":
            row.append(to_scientific(bcp_comparator(params), 3))
        else:
            row.append(fmt[out])
    return row


def _plain(v) -> str:
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    return str(v)


def run_sweep(spec: SweepSpec, threshold_mode: str = DEFAULT_THRESHOLD_MODE,
              workers: int = 1) -> str:
    """CSV text with one row per swept value, in input order."""
    jobs = [(v, p, spec.outputs, threshold_mode) for v, p in spec.points()]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_sweep_row, jobs))
    else:
        rows = [_sweep_row(j) for j in jobs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([spec.axis, *spec.outputs])
    w.writerows(rows)
    return buf.getvalue()


# --- verify ----------------------------------------------------------------

def parse_grid(text: str) -> dict:
    """Parse ``lam=1..4,n=2..8,m=0..12`` into ranges."""
    grid = {"lam": range(1, 5), "n": range(2, 9), "m": range(0, 13)}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, _, span = part.partition("=")
        key = key.strip()
        if key not in grid:
            raise InputError(f"unknown grid axis {key!r}; use lam, n, m")
        lo, sep, hi = span.partition("..")
        try:
            lo_i = int(lo)
            hi_i = int(hi) if sep else lo_i
        except ValueError:
            raise InputError(f"bad grid range {part!r}") from None
        grid[key] = range(lo_i, hi_i + 1)
    if any(len(r) == 0 for r in grid.values()):
        raise InputError("empty grid")
    if grid["lam"].start < 1 or grid["n"].start < 1 or grid["m"].start < 0:
        raise InputError("grid needs lam >= 1, n >= 1, m >= 0")
    return grid


def grid_points(grid: dict):
    for lam in grid["lam"]:
        for n in grid["n"]:
            for cap in range(n + 1):
                for m in grid["m"]:
                    yield lam, n, cap, m


def run_grid(grid: dict, corrupt_denominator: bool = False, budget: Optional[int] = None):
    """Compare the polynomial route with the nested sum at every grid point.

    Yields ``(lam, n, cap, m, pgfa, jhda, match)``.  ``corrupt_denominator``
    is a negative control that skews the polynomial route's denominator.
    """
    for lam, n, cap, m in grid_points(grid):
        if corrupt_denominator:
            den = binomial(lam * n + 1, m)
            pgfa = 1 - Fraction(safe_count(n, lam, cap, m), den) if den else Fraction(0)
        else:
            pgfa = takeover_prob(n, lam, cap, m)
        jh = jhda_takeover_prob(n, lam, cap, m, budget)
        yield lam, n, cap, m, pgfa, jh, pgfa == jh


# --- commands --------------------------------------------------------------

def cmd_analyze(args) -> int:
    params = load_scenario(args.file)
    summary = analyze(params, args.threshold_mode, method=args.method,
                      secure_years=Fraction(args.secure_years),
                      include_remainder=args.include_remainder,
                      trials=TrialConfig(args.trials, args.seed))
    record = summary.to_json_dict()
    print(json.dumps(record, indent=2))
    if args.csv:
        fmt = summary.report.formatted()
        header = [*PRIMARY_FIELDS, "P", "P_prime", "P_double_prime", "E_s", "A", "secure"]
        pj = params.to_json_dict()
        row = [pj[f] for f in PRIMARY_FIELDS] + [fmt[k] for k in header[8:-1]] + [summary.secure_flag]
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerow(row)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = SweepSpec.from_json(load_json(args.file))
    text = run_sweep(spec, args.threshold_mode, args.workers)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = parse_grid(args.grid)
    total = mismatches = 0
    out = sys.stdout
    if not args.quiet:
        out.write("lambda,n,cap,M_sel,pgfa,jhda,match\n")
    for lam, n, cap, m, a, b, ok in run_grid(grid, args.corrupt_denominator):
        total += 1
        mismatches += not ok
        if not args.quiet or not ok:
            out.write(f"{lam},{n},{cap},{m},{a},{b},{str(ok).lower()}\n")
    out.write(f"# {total} points, {mismatches} mismatches\n")
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_bench(args) -> int:
    if args.reps < 1:
        raise InputError("repetitions must be >= 1")
    params = load_scenario(args.file)
    report = {"params": params.to_json_dict(), "repetitions": args.reps}
    timings = []
    for _ in range(args.reps):
        t0 = time.perf_counter()
        pgfa = pgfa_failure_prob(params)
        timings.append(time.perf_counter() - t0)
    report["pgfa"] = {"status": "ok", "P_prime": to_scientific(pgfa, 3),
                      "best_seconds": min(timings)}
    budget = enumeration_budget()
    states = state_count(params.committees, params.capacity, params.M_sel)
    try:
        timings = []
        for _ in range(args.reps):
            t0 = time.perf_counter()
            jh = jhda_exact(params, budget)
            timings.append(time.perf_counter() - t0)
        report["jhda_exact"] = {"status": "ok", "P_prime": to_scientific(jh, 3),
                                "best_seconds": min(timings), "states": states,
                                "equal_to_pgfa": jh == pgfa}
    except BudgetExceeded as exc:
        report["jhda_exact"] = {"status": "refused", "states": exc.states,
                                "budget": exc.budget}
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_simulate(args) -> int:
    params = load_scenario(args.file)
    threshold = args.threshold
    if threshold is None:
        threshold = selection_threshold(params.K, params.R, args.threshold_mode)
    outcome = simulate_epochs(params, args.epochs, threshold, args.seed, args.sim_mode,
                              args.workers)
    print(outcome.to_json())
    if args.histogram:
        with open(args.histogram, "w", newline="", encoding="utf-8") as fh:
            fh.write(outcome.histogram_csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threshold-mode", choices=THRESHOLD_MODES,
                        default=DEFAULT_THRESHOLD_MODE)
    common.add_argument("--sim-mode", choices=SIM_MODES, default="fixed")

    parser = argparse.ArgumentParser(prog="shardsec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="security report for one scenario")
    p.add_argument("file")
    p.add_argument("--method", default="PGFA",
                   choices=("PGFA", "JHDA-exact", "JHDA-trials", "BCP"))
    p.add_argument("--secure-years", default="1")
    p.add_argument("--trials", type=int, default=100_000, help="trials for JHDA-trials")
    p.add_argument("--include-remainder", action="store_true",
                   help="let unassigned selection-pool seats absorb Sybil IDs")
    p.add_argument("--csv", help="also write the report as a one-row CSV")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", parents=[common], help="CSV over one swept parameter")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="polynomial vs nested-sum oracle grid")
    p.add_argument("--grid", default=DEFAULT_GRID)
    p.add_argument("--quiet", action="store_true", help="print mismatches and summary only")
    p.add_argument("--corrupt-denominator", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="time polynomial vs exact enumeration")
    p.add_argument("file")
    p.add_argument("--reps", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("simulate", parents=[common], help="Monte-Carlo epochs")
    p.add_argument("file")
    p.add_argument("--epochs", type=int, default=100_000)
    p.add_argument("--threshold", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--histogram", help="write per-committee Sybil counts as CSV")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
