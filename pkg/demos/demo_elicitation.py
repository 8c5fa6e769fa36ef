"""Capturing judgments interactively: sessions, the verbal scale, live
consistency feedback, and multi-respondent merging.

The same workflow drives the CLI `ask` loop and the HTTP wizard; here it
runs headless against the bundled banking structure.
"""

from ahpkit import (
    Descriptor,
    Direction,
    ElicitationSession,
    VerbalJudgment,
    comparison_schedule,
    merge_sessions,
    question_text,
    value_to_verbal,
    verbal_to_value,
)
from ahpkit.banking_case import builtin_banking_model

structure = builtin_banking_model()

# Scheduling: n items need n(n-1)/2 comparisons per node.
print("pairs for 4 aspects:", comparison_schedule(4))

session = ElicitationSession(structure)  # discrete mode: 1..9 and reciprocals
status = session.status()
print(f"fresh session: {status.answered}/{status.total} answered")

# Questions come in the fixed template form.
node, pair = session.next_pending()
print("first question:", question_text(structure, node, pair))

# Verbal answers translate to ratios; direction flips to the reciprocal.
five = verbal_to_value(VerbalJudgment(Descriptor.STRONG, Direction.FIRST_OVER_SECOND))
fifth = verbal_to_value(VerbalJudgment(Descriptor.STRONG, Direction.SECOND_OVER_FIRST))
print(f"strong reads as {five}, reversed as {fifth}")
print("2.8 displays as:", value_to_verbal(2.8).descriptor.value)

# Answer the goal node with deliberately clashing judgments...
for (i, j), v in {(0, 1): 3, (0, 2): 5, (1, 2): 7, (0, 3): 1, (1, 3): 1, (2, 3): 1}.items():
    session.record_judgment(node, (i, j), v)

report = session.status().per_node[node].consistency
print(f"\ngoal node answered: CR = {report.cr:.3f} (consistent: {report.consistent})")
children = structure.children(node)
wj = report.worst_judgment
print(f"revision hint: reconsider {children[wj.i]} vs {children[wj.j]}")

# ...then revise the flagged pair and watch the CR drop.
session.record_judgment(node, (wj.i, wj.j), 1)
print("after revising it: CR =", f"{session.status().per_node[node].consistency.cr:.3f}")

# Two respondents, merged per judgment by geometric mean (reciprocity
# survives the merge by construction).
first = ElicitationSession(structure)
second = ElicitationSession(structure)
for node_id, pair in list(first.pending):
    first.record_judgment(node_id, pair, 3)
for node_id, pair in list(second.pending):
    second.record_judgment(node_id, pair, 1 / 3)
merged = merge_sessions([first, second])
print("\nmerged judgment for the first pair:", merged.answered[("information_security_policy", (0, 1))])
print("merged session mode:", merged.mode)
