"""
Sweeping the number of Sybil IDs
================================

Writes plot data (CSV) for curves of P, P', P'' against the number of Sybil
IDs, and compares the successful-attack probability with the BCP estimate,
which multiplies the first committee's failure probability by the number of
committees and so exceeds 1 for large adversaries.
"""

import sys

from shardsec import bcp_comparator, selection_threshold, successful_attack_prob, validate
from shardsec.cli import SweepSpec, run_sweep

base = validate(dict(N=1000, K=800, M=10, M_sel=10, n=100, r="0.25", R="0.10", N_s=365))

spec = SweepSpec(base, "M", tuple(range(10, 201, 10)),
                 ("P", "P_prime", "P_double_prime", "bcp"), tie=("M_sel",))
sys.stdout.write(run_sweep(spec))

crossover = next(m for m in range(10, 201)
                 if bcp_comparator(base.replace(M=m, M_sel=m)) > 1)
print(f"BCP first exceeds 1 at M = M_sel = {crossover}")

# The pool-breach threshold convention shifts the P'' curve only slightly;
# both rise in the same place once P saturates.
print("M, P''(strict), P''(floor_RK)")
for m in range(40, 121, 20):
    p = base.replace(M=m, M_sel=m)
    strict = successful_attack_prob(p, selection_threshold(p.K, p.R, "strict"))
    floor = successful_attack_prob(p, selection_threshold(p.K, p.R, "floor_RK"))
    print(m, f"{float(strict):.3e}", f"{float(floor):.3e}")
