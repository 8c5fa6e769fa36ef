"""Deriving local weights from one pairwise comparison matrix.

Walks the numerical core on a deliberately inconsistent 3x3 matrix:
priority derivation by power iteration and by row geometric means, the
dominant eigenvalue, and the consistency verdict with the judgment most
worth revising.
"""

import numpy as np

from ahpkit import (
    PairwiseMatrix,
    consistency_report,
    derive_priorities_eigen,
    derive_priorities_geomean,
    validate_reciprocal,
)

# Three criteria compared on the 1-9 scale. a[0,1] = 3 reads "the first
# criterion is weakly more important than the second".
matrix = PairwiseMatrix(
    [[1, 3, 5],
     [1 / 3, 1, 7],
     [1 / 5, 1 / 7, 1]],
    item_ids=["cost", "quality", "delivery"],
)

print("matrix:")
print(np.array_str(matrix.entries, precision=3))
print("reciprocal-matrix violations:", validate_reciprocal(matrix) or "none")

# Eigenvector method: the AHP default.
pv = derive_priorities_eigen(matrix)
print("\neigenvector weights:")
for item, w in zip(matrix.item_ids, pv.weights):
    print(f"  {item:<9} {w:.4f}")
print(f"lambda_max = {pv.lambda_max:.4f}  (order n = {matrix.order})")

# Geometric means agree with the eigenvector exactly at n = 3 — a handy
# closed-form cross-check.
gm = derive_priorities_geomean(matrix)
print("geometric-mean weights:", [f"{w:.4f}" for w in gm.weights])

# Consistency: CR far above the 0.10 bar, so these judgments contradict
# each other more than random noise would.
report = consistency_report(matrix, pv)
print(f"\nCI = {report.ci:.4f}, RI = {report.ri}, CR = {report.cr:.4f}")
print("acceptable:", report.consistent)
wj = report.worst_judgment
print(
    f"most deviant judgment: {matrix.item_ids[wj.i]} vs {matrix.item_ids[wj.j]} "
    f"(log deviation {wj.deviation:.3f})"
)

# A perfectly consistent matrix for contrast: a_ij = w_i / w_j.
w = np.array([0.6, 0.3, 0.1])
perfect = PairwiseMatrix(w[:, None] / w[None, :], ["a", "b", "c"])
pv2 = derive_priorities_eigen(perfect)
print("\nconsistent matrix recovers its weights:", [f"{x:.3f}" for x in pv2.weights])
print("CR =", consistency_report(perfect, pv2).cr)
