"""Built-in e-banking information-security model and its validation oracle.

Ships the published case study this toolkit reproduces: an information
security policy goal weighed over four aspects (management, technology,
economy, culture) against the three classic security elements
(confidentiality, integrity, availability). The published contribution
table is inverted back into local weights, so a full synthesis must land
on the published numbers; that round trip is the end-to-end check of the
whole pipeline.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from typing import Optional

from .errors import HierarchyError
from .hierarchy import (
    GlobalPriorities,
    Hierarchy,
    Node,
    NodeKind,
    attach_local_priorities,
    build_hierarchy,
    contribution_matrix,
    synthesize,
)
from .matrix import PriorityVector

GOAL_ID = "information_security_policy"
ASPECT_IDS = ("management", "technology", "economy", "culture")
ELEMENT_IDS = ("confidentiality", "integrity", "availability")

# Descriptive sub-items of each aspect and element. These stay metadata:
# the published arithmetic has exactly three levels, so deeper structure
# would contradict it.
ASPECT_SUB_ITEMS = {
    "management": ("IT Governance", "Audit Information Systems", "Data classification", "Access control"),
    "technology": ("Software Security", "Network Security", "Internet Security"),
    "economy": ("Return of Security Investment", "Economic impact of security breaches"),
    "culture": ("Security awareness", "Security Education", "Organizational behavior"),
}
ELEMENT_SUB_ITEMS = {
    "confidentiality": ("control disclosure of information", "authorize person or systems"),
    "integrity": ("data intact (no alteration)", "authorize person or systems"),
    "availability": ("data available and protected", "authorize person or systems"),
}


@dataclass(frozen=True)
class ReferenceTable:
    """Published final-result table: aspect rows, element columns.

    ``cells[(aspect, element)]`` holds the published contribution, and the
    printed TOTAL lines are stored verbatim; the column totals sum to
    1.001 because of three-decimal rounding in the publication.
    """

    rows: tuple[str, ...]
    columns: tuple[str, ...]
    cells: dict[tuple[str, str], float]
    row_totals: dict[str, float]
    column_totals: dict[str, float]


_PUBLISHED_CELLS = {
    ("management", "confidentiality"): 0.112,
    ("management", "integrity"): 0.054,
    ("management", "availability"): 0.011,
    ("technology", "confidentiality"): 0.068,
    ("technology", "integrity"): 0.023,
    ("technology", "availability"): 0.023,
    ("economy", "confidentiality"): 0.146,
    ("economy", "integrity"): 0.146,
    ("economy", "availability"): 0.049,
    ("culture", "confidentiality"): 0.123,
    ("culture", "integrity"): 0.123,
    ("culture", "availability"): 0.123,
}

EBANKING_REFERENCE = ReferenceTable(
    rows=ASPECT_IDS,
    columns=ELEMENT_IDS,
    cells=dict(_PUBLISHED_CELLS),
    row_totals={"management": 0.177, "technology": 0.114, "economy": 0.341, "culture": 0.369},
    column_totals={"confidentiality": 0.449, "integrity": 0.346, "availability": 0.206},
)

# Comparison tolerance against the published three-decimal values.
REFERENCE_TOLERANCE = 0.002


def builtin_banking_model() -> Hierarchy:
    """The bundled e-banking hierarchy: goal, four aspects, shared CIA
    elements. Weights are not attached; see reconstruct_local_weights."""
    nodes = [
        Node(GOAL_ID, "Information security policy", NodeKind.GOAL, ASPECT_IDS),
    ]
    for aspect in ASPECT_IDS:
        nodes.append(
            Node(aspect, aspect.capitalize(), NodeKind.CRITERION, ELEMENT_IDS,
                 metadata={"sub_items": list(ASPECT_SUB_ITEMS[aspect])})
        )
    for element in ELEMENT_IDS:
        nodes.append(
            Node(element, element.capitalize(), NodeKind.ALTERNATIVE,
                 metadata={"sub_items": list(ELEMENT_SUB_ITEMS[element])})
        )
    return build_hierarchy(nodes)


def reconstruct_local_weights(table: ReferenceTable = EBANKING_REFERENCE) -> dict[str, PriorityVector]:
    """Invert the distributive synthesis identity on a contribution table.

    Aspect weights are the row totals normalized by their own sum (1.001
    for the published table, absorbing the rounding slack); each aspect's
    element weights are its row cells divided by the row total.
    """
    grand = sum(table.row_totals[r] for r in table.rows)
    if grand <= 0:
        raise HierarchyError("row totals must have a positive sum")
    weights: dict[str, PriorityVector] = {}
    weights[GOAL_ID] = PriorityVector.assigned([table.row_totals[r] / grand for r in table.rows])
    for r in table.rows:
        total = table.row_totals[r]
        if total <= 0:
            raise HierarchyError(f"row total for {r!r} must be positive to reconstruct its local weights")
        weights[r] = PriorityVector.assigned([table.cells[(r, c)] / total for c in table.columns])
    return weights


def banking_model_with_weights(table: ReferenceTable = EBANKING_REFERENCE) -> Hierarchy:
    """The bundled model with the reconstructed local weights attached."""
    h = builtin_banking_model()
    for node_id, pv in reconstruct_local_weights(table).items():
        h = attach_local_priorities(h, node_id, pv)
    return h


def bundled_model_document() -> bytes:
    """The packaged model document, byte-identical to the canonical
    serialization of banking_model_with_weights()."""
    return importlib.resources.files("ahpkit").joinpath("data/ebanking_model.json").read_bytes()


@dataclass(frozen=True)
class Check:
    """One validation comparison with its outcome."""

    name: str
    expected: Optional[float]
    actual: Optional[float]
    tolerance: Optional[float]
    passed: bool

    def describe(self) -> str:
        mark = "ok  " if self.passed else "FAIL"
        if self.expected is None:
            return f"[{mark}] {self.name}"
        return (
            f"[{mark}] {self.name}: expected {self.expected:.3f}, got {self.actual:.6f} "
            f"(tolerance {self.tolerance})"
        )


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...]
    priorities: GlobalPriorities

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def describe(self) -> str:
        lines = [c.describe() for c in self.checks]
        verdict = "PASS" if self.passed else f"FAIL ({len(self.failures)} of {len(self.checks)} checks failed)"
        lines.append(f"result: {verdict}")
        return "\n".join(lines)


def _ordering_check(name: str, labels, values) -> Check:
    ok = all(values[k] > values[k + 1] for k in range(len(values) - 1))
    return Check(f"{name}: {' > '.join(labels)}", None, None, None, ok)


def validate_against_reference(
    h: Hierarchy,
    table: ReferenceTable = EBANKING_REFERENCE,
    tolerance: float = REFERENCE_TOLERANCE,
) -> ValidationReport:
    """Synthesize the model and compare every published number.

    Checks all twelve contribution cells, the four aspect row totals and
    three element column totals within ``tolerance``, then the two
    published orderings: confidentiality > integrity > availability and
    culture > economy > management > technology. Each comparison lands in
    the report, deviations included, whether it passed or not.
    """
    gp = synthesize(h)
    ct = contribution_matrix(h, gp)

    checks: list[Check] = []
    for r in table.rows:
        for c in table.columns:
            expected = table.cells[(r, c)]
            actual = ct.cells[(r, c)]
            checks.append(Check(f"cell {r} x {c}", expected, actual, tolerance, abs(actual - expected) <= tolerance))
    for r in table.rows:
        expected = table.row_totals[r]
        actual = ct.row_totals[r]
        checks.append(Check(f"row total {r}", expected, actual, tolerance, abs(actual - expected) <= tolerance))
    for c in table.columns:
        expected = table.column_totals[c]
        actual = ct.column_totals[c]
        checks.append(Check(f"column total {c}", expected, actual, tolerance, abs(actual - expected) <= tolerance))

    checks.append(_ordering_check("element ranking", table.columns, [gp.alternatives[c] for c in table.columns]))
    aspect_order = ("culture", "economy", "management", "technology")
    checks.append(_ordering_check("aspect ranking", aspect_order, [gp.per_node[a] for a in aspect_order]))

    return ValidationReport(tuple(checks), gp)
