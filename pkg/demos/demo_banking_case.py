"""The bundled e-banking information-security case study, end to end.

Reconstructs local weights from the published contribution table,
synthesizes global priorities, rebuilds the table, and runs the full
validation that checks every published number.
"""

from ahpkit import contribution_matrix, synthesize
from ahpkit.banking_case import (
    EBANKING_REFERENCE,
    banking_model_with_weights,
    builtin_banking_model,
    reconstruct_local_weights,
    validate_against_reference,
)

# The model: one goal, four security aspects, and the classic CIA triad
# as shared alternatives.
structure = builtin_banking_model()
print("hierarchy:")
print(" ", structure.nodes[structure.root].label)
for aspect in structure.children(structure.root):
    node = structure.nodes[aspect]
    print(f"    {node.label:<11} sub-items: {', '.join(node.metadata['sub_items'])}")
print("  alternatives:", ", ".join(structure.alternative_ids))

# Published contributions -> local weights, by inverting the synthesis
# identity (cell = aspect weight x element weight under that aspect).
weights = reconstruct_local_weights()
print("\nreconstructed aspect weights:")
for aspect, w in zip(EBANKING_REFERENCE.rows, weights[structure.root].weights):
    print(f"  {aspect:<11} {w:.4f}")
print("management's element weights:", [f"{w:.3f}" for w in weights["management"].weights])

# Forward pass: synthesize and tabulate.
model = banking_model_with_weights()
gp = synthesize(model)
print("\nglobal element scores:")
for alt, score in gp.ranking:
    print(f"  {alt:<16} {score:.4f}")

table = contribution_matrix(model, gp)
print("\ncontribution of culture to availability:", f"{table.cells[('culture', 'availability')]:.4f}")

# Validation: 12 cells, 7 totals, 2 orderings, all at the publication's
# 3-decimal tolerance.
report = validate_against_reference(model)
print(f"\nvalidation -> {'PASS' if report.passed else 'FAIL'} ({len(report.checks)} checks)")
for check in report.checks[-5:]:
    print(" ", check.describe())
