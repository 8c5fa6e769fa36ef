"""What-if analysis on top-level criterion weights.

Sweeps one criterion's weight while its siblings share the remainder
proportionally, watching how the alternatives' scores and ranking react.
"""

import numpy as np

from ahpkit import attach_local_priorities, build_hierarchy, sensitivity, synthesize
from ahpkit import Node, NodeKind
from ahpkit.banking_case import banking_model_with_weights

model = banking_model_with_weights()
base = synthesize(model)
print("baseline:", {alt: f"{s:.3f}" for alt, s in base.ranking})

# Silence the culture aspect entirely: confidentiality strengthens, since
# culture was the one aspect weighing the elements equally.
result = sensitivity(model, "culture", 0.0)
print("\nculture -> 0:", {alt: f"{s:.3f}" for alt, s in result.priorities.ranking})
print("rank changes:", result.rank_changes or "none")

# Sweep culture from 0 to 1.
print("\nculture sweep:")
print(f"{'weight':>8}  {'conf':>7}  {'integ':>7}  {'avail':>7}")
for w in np.linspace(0.0, 1.0, 6):
    scores = sensitivity(model, "culture", float(w)).priorities.alternatives
    print(
        f"{w:8.2f}  {scores['confidentiality']:7.3f}  {scores['integrity']:7.3f}  "
        f"{scores['availability']:7.3f}"
    )

# The published model is dominance-stable: confidentiality leads under
# every aspect, so no single-weight change can reorder the top. A model
# with disagreeing criteria shows actual rank reversal:
h = build_hierarchy(
    [
        Node("goal", "Goal", NodeKind.GOAL, ("speed", "safety")),
        Node("speed", "Speed", NodeKind.CRITERION, ("hare", "tortoise")),
        Node("safety", "Safety", NodeKind.CRITERION, ("hare", "tortoise")),
        Node("hare", "Hare", NodeKind.ALTERNATIVE),
        Node("tortoise", "Tortoise", NodeKind.ALTERNATIVE),
    ]
)
h = attach_local_priorities(h, "goal", [0.8, 0.2])
h = attach_local_priorities(h, "speed", [0.9, 0.1])
h = attach_local_priorities(h, "safety", [0.1, 0.9])
print("\nhare vs tortoise, speed-dominated:", synthesize(h).ranking)
flipped = sensitivity(h, "speed", 0.1)
print("speed down-weighted to 0.1:", flipped.priorities.ranking)
for rc in flipped.rank_changes:
    print(f"  {rc.alternative}: rank {rc.before} -> {rc.after}")
