# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Küchle's inequality and the case split
#
# The multi-point bound rests on (r+1)Σm² > (Σm)² + m_r(r+1) for
# non-increasing positive vectors with m1 ≥ 2.  We scan it exhaustively.

import time

from seshadri import kuechle_scan, reproduce_case_analysis
from seshadri.bounds import kuechle_vectors

start = time.perf_counter()
n = sum(1 for _ in kuechle_vectors(6, 20))
print(n, "vectors, violations:", kuechle_scan(6, 20), f"({time.perf_counter() - start:.2f}s)")

# Each vector falls into one case: a zero entry (reduce r), all ones, the
# r = 2 identity, or Küchle.  The report shows the exact chain.

for r, m in [(2, (2, 1)), (3, (1, 1, 1)), (3, (2, 1, 0)), (4, (3, 2, 2, 1)), (3, (1, 0, 0))]:
    rep = reproduce_case_analysis(r, m)
    print(f"r={r} m={m}: case {rep.case}, contradiction={rep.contradiction}")
    for step in rep.chain:
        print(f"    {step.label}: {step.lhs} {step.op} {step.rhs} -> {step.holds}")
