"""Interactive judgment capture on the nine-point verbal scale.

Comparisons are asked in the fixed form "How important is A relative to
B?" and answered either verbally (the five named grades plus the four
intermediate shades) or, in continuous mode, as any positive ratio.
Sessions track which pairs of which node are still pending and expose
live consistency feedback once a node's matrix is complete.
"""

from __future__ import annotations

import enum
import math
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional, Sequence

from .errors import ElicitationError
from .hierarchy import Hierarchy
from .matrix import (
    ConsistencyReport,
    PairwiseMatrix,
    PriorityVector,
    consistency_report,
    derive_priorities_eigen,
)

QUESTION_TEMPLATE = "How important is {first} relative to {second}?"


class Descriptor(str, enum.Enum):
    EQUAL = "equal"
    INTERMEDIATE_2 = "intermediate_2"
    WEAK = "weak"
    INTERMEDIATE_4 = "intermediate_4"
    STRONG = "strong"
    INTERMEDIATE_6 = "intermediate_6"
    VERY_STRONG = "very_strong"
    INTERMEDIATE_8 = "intermediate_8"
    ABSOLUTE = "absolute"


class Direction(str, enum.Enum):
    FIRST_OVER_SECOND = "first_over_second"
    SECOND_OVER_FIRST = "second_over_first"


# Verbal grade -> scale value. The named grades are 1, 3, 5, 7, 9; the
# even values are the in-between shades.
SCALE_VALUES = {
    Descriptor.EQUAL: 1,
    Descriptor.INTERMEDIATE_2: 2,
    Descriptor.WEAK: 3,
    Descriptor.INTERMEDIATE_4: 4,
    Descriptor.STRONG: 5,
    Descriptor.INTERMEDIATE_6: 6,
    Descriptor.VERY_STRONG: 7,
    Descriptor.INTERMEDIATE_8: 8,
    Descriptor.ABSOLUTE: 9,
}

_DESCRIPTOR_BY_VALUE = {v: d for d, v in SCALE_VALUES.items()}

# Every ratio a discrete-mode session accepts: 1..9 and their reciprocals.
DISCRETE_VALUES = tuple(sorted({float(k) for k in range(1, 10)} | {1.0 / k for k in range(1, 10)}))


@dataclass(frozen=True)
class VerbalJudgment:
    descriptor: Descriptor
    direction: Direction = Direction.FIRST_OVER_SECOND

    def __post_init__(self):
        object.__setattr__(self, "descriptor", Descriptor(self.descriptor))
        object.__setattr__(self, "direction", Direction(self.direction))


def verbal_to_value(judgment: VerbalJudgment) -> float:
    """Ratio encoded by a verbal answer; the reverse direction is the
    reciprocal, and "equally important" is 1 either way."""
    base = float(SCALE_VALUES[judgment.descriptor])
    if judgment.direction is Direction.SECOND_OVER_FIRST and judgment.descriptor is not Descriptor.EQUAL:
        return 1.0 / base
    return base


def value_to_verbal(ratio: float) -> VerbalJudgment:
    """Nearest verbal grade to a ratio, for display.

    Distance is measured in log space so that a ratio and its reciprocal
    land on the same grade with flipped direction; exact ties go to the
    smaller scale value.
    """
    if not (ratio > 0 and math.isfinite(ratio)):
        raise ElicitationError(f"ratio must be a positive finite number, got {ratio}")
    direction = Direction.FIRST_OVER_SECOND
    r = ratio
    if r < 1.0:
        r = 1.0 / r
        direction = Direction.SECOND_OVER_FIRST
    log_r = math.log(r)
    best = min(range(1, 10), key=lambda k: (abs(log_r - math.log(k)), k))
    if best == 1:
        direction = Direction.FIRST_OVER_SECOND
    return VerbalJudgment(_DESCRIPTOR_BY_VALUE[best], direction)


def comparison_schedule(n: int) -> list[tuple[int, int]]:
    """All index pairs (i, j) with i < j in lexicographic order.

    Exactly n(n-1)/2 comparisons, one per unordered pair; the diagonal and
    lower triangle follow from reciprocity.
    """
    if n < 1:
        raise ElicitationError(f"item count must be at least 1, got {n}")
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def question_text(hierarchy: Hierarchy, node_id: str, pair: tuple[int, int]) -> str:
    children = hierarchy.children(node_id)
    i, j = pair
    return QUESTION_TEMPLATE.format(first=hierarchy.node(children[i]).label, second=hierarchy.node(children[j]).label)


def _normalize_discrete(value: float) -> float:
    for allowed in DISCRETE_VALUES:
        if math.isclose(value, allowed, rel_tol=1e-9):
            return allowed
    raise ElicitationError(
        f"{value} is not on the discrete scale; allowed values are the whole numbers 1..9 "
        f"and their reciprocals 1/2..1/9"
    )


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class NodeProgress:
    node_id: str
    answered: int
    total: int
    consistency: Optional[ConsistencyReport] = None


@dataclass(frozen=True)
class SessionStatus:
    per_node: dict[str, NodeProgress]
    answered: int
    total: int
    percent: float
    complete: bool


class ElicitationSession:
    """Mutable record of one decision maker's progress through the pairs.

    Single-writer: interleaved mutation of one session from several tasks
    is not supported. ``mode`` is ``"discrete"`` (scale values only, the
    default) or ``"continuous"`` (any positive ratio).
    """

    def __init__(
        self,
        hierarchy: Hierarchy,
        mode: str = "discrete",
        session_id: Optional[str] = None,
        model_hash: Optional[str] = None,
    ):
        if mode not in ("discrete", "continuous"):
            raise ElicitationError(f"mode must be 'discrete' or 'continuous', got {mode!r}")
        self.hierarchy = hierarchy
        self.mode = mode
        self.session_id = session_id or uuid.uuid4().hex
        self.model_hash = model_hash
        self.pending: list[tuple[str, tuple[int, int]]] = []
        self.answered: dict[tuple[str, tuple[int, int]], float] = {}
        for node_id in hierarchy.internal_ids:
            for pair in comparison_schedule(len(hierarchy.children(node_id))):
                self.pending.append((node_id, pair))
        self.created_at = _utcnow()
        self.updated_at = self.created_at

    @classmethod
    def restore(
        cls,
        hierarchy: Hierarchy,
        mode: str,
        session_id: str,
        model_hash: Optional[str],
        answered: dict[tuple[str, tuple[int, int]], float],
        pending: list[tuple[str, tuple[int, int]]],
        created_at: str,
        updated_at: str,
    ) -> "ElicitationSession":
        """Rebuild a session from persisted state.

        The answered/pending split must partition the full comparison
        schedule of the hierarchy; values are re-validated against the
        session mode.
        """
        session = cls(hierarchy, mode=mode, session_id=session_id, model_hash=model_hash)
        schedule = set(session.pending)
        keys = list(answered) + list(pending)
        if len(set(keys)) != len(keys):
            raise ElicitationError("answered and pending comparisons overlap")
        if set(keys) != schedule:
            raise ElicitationError(
                "answered plus pending comparisons do not cover the hierarchy's comparison schedule"
            )
        for (node_id, pair), value in answered.items():
            if not (value > 0 and math.isfinite(value)):
                raise ElicitationError(f"judgment value must be a positive finite ratio, got {value}")
            if mode == "discrete":
                value = _normalize_discrete(value)
            session.answered[(node_id, pair)] = value
        session.pending = list(pending)
        session.created_at = created_at
        session.updated_at = updated_at
        return session

    def _canonical(self, node_id: str, pair: tuple[int, int], value: float) -> tuple[tuple[int, int], float]:
        node = self.hierarchy.node(node_id)
        if node.kind.value == "alternative":
            raise ElicitationError(f"node {node_id!r} is an alternative; it has no comparisons")
        n = len(node.children)
        i, j = pair
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise ElicitationError(f"pair ({i}, {j}) is not a comparison of node {node_id!r} (order {n})")
        if i > j:
            return (j, i), 1.0 / value
        return (i, j), value

    def record_judgment(self, node_id: str, pair: tuple[int, int], value: float) -> "ElicitationSession":
        """Store one answered comparison; the reciprocal cell is implied.

        Re-answering an already-recorded pair overwrites it. In discrete
        mode the value must be a scale value or a reciprocal of one.
        """
        if not (value > 0 and math.isfinite(value)):
            raise ElicitationError(f"judgment value must be a positive finite ratio, got {value}")
        key_pair, key_value = self._canonical(node_id, tuple(pair), float(value))
        if self.mode == "discrete":
            key_value = _normalize_discrete(key_value)
        key = (node_id, key_pair)
        if key not in self.answered and key not in self.pending:
            raise ElicitationError(f"pair {key_pair} is not scheduled for node {node_id!r}")
        self.answered[key] = key_value
        if key in self.pending:
            self.pending.remove(key)
        self.updated_at = _utcnow()
        return self

    def next_pending(self) -> Optional[tuple[str, tuple[int, int]]]:
        return self.pending[0] if self.pending else None

    @property
    def complete(self) -> bool:
        return not self.pending

    def node_complete(self, node_id: str) -> bool:
        return not any(nid == node_id for nid, _ in self.pending)

    def matrix_for(self, node_id: str) -> PairwiseMatrix:
        """Assemble the judgment matrix of a fully answered node.

        Incomplete nodes are refused; there is no imputation of missing
        comparisons.
        """
        node = self.hierarchy.node(node_id)
        missing = [pair for nid, pair in self.pending if nid == node_id]
        if missing:
            raise ElicitationError(f"node {node_id!r} still has unanswered pairs: {missing}")
        judgments = {pair: v for (nid, pair), v in self.answered.items() if nid == node_id}
        return PairwiseMatrix.from_judgments(node.children, judgments)

    def status(self, tol: float = 1e-10, max_iter: int = 1000) -> SessionStatus:
        """Progress per node and overall, with live consistency feedback.

        Each completed node carries a full consistency report whose worst
        judgment is the revision hint shown to the decision maker.
        """
        per_node: dict[str, NodeProgress] = {}
        total = 0
        answered_total = 0
        for node_id in self.hierarchy.internal_ids:
            n = len(self.hierarchy.children(node_id))
            node_total = n * (n - 1) // 2
            node_answered = sum(1 for (nid, _) in self.answered if nid == node_id)
            total += node_total
            answered_total += node_answered
            report = None
            if node_answered == node_total:
                m = self.matrix_for(node_id)
                report = consistency_report(m, derive_priorities_eigen(m, tol=tol, max_iter=max_iter))
            per_node[node_id] = NodeProgress(node_id, node_answered, node_total, report)
        percent = 100.0 if total == 0 else 100.0 * answered_total / total
        return SessionStatus(per_node, answered_total, total, percent, answered_total == total)

    def derive_all(self, tol: float = 1e-10, max_iter: int = 1000) -> dict[str, PriorityVector]:
        """Eigenvector priorities for every node; requires completeness."""
        return {
            node_id: derive_priorities_eigen(self.matrix_for(node_id), tol=tol, max_iter=max_iter)
            for node_id in self.hierarchy.internal_ids
        }


def merge_sessions(sessions: Sequence[ElicitationSession]) -> ElicitationSession:
    """Combine several respondents' sessions into one.

    Each answered pair becomes the geometric mean of the values recorded
    by the respondents who answered it (the aggregation-of-individual-
    judgments convention, which preserves reciprocity). The merged session
    is continuous, since geometric means rarely land on the scale.
    """
    if not sessions:
        raise ElicitationError("no sessions to merge")
    first = sessions[0]
    for s in sessions[1:]:
        if s.hierarchy != first.hierarchy:
            raise ElicitationError("sessions to merge must share the same hierarchy")
        if s.model_hash != first.model_hash:
            raise ElicitationError(
                f"sessions reference different models: {s.model_hash!r} vs {first.model_hash!r}"
            )
    merged = ElicitationSession(first.hierarchy, mode="continuous", model_hash=first.model_hash)
    keys: list[tuple[str, tuple[int, int]]] = []
    for s in sessions:
        for key in s.answered:
            if key not in keys:
                keys.append(key)
    for key in keys:
        values = [s.answered[key] for s in sessions if key in s.answered]
        geomean = math.exp(math.fsum(math.log(v) for v in values) / len(values))
        merged.record_judgment(key[0], key[1], geomean)
    return merged
