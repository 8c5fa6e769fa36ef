"""Goal-rooted decision hierarchies and cross-level weight synthesis.

A hierarchy is a tree of goal and criterion nodes whose leaves are
alternatives. Alternatives may be shared: in the common three-level
shape every criterion parents the same alternative set, and an
alternative's overall score aggregates its weighted contributions across
all parents (distributive synthesis).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import HierarchyError
from .matrix import PairwiseMatrix, PriorityVector


class NodeKind(str, enum.Enum):
    GOAL = "goal"
    CRITERION = "criterion"
    ALTERNATIVE = "alternative"


@dataclass(frozen=True)
class Node:
    """One hierarchy node; ``children`` lists child ids in display order."""

    id: str
    label: str
    kind: NodeKind
    children: tuple[str, ...] = ()
    metadata: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", NodeKind(self.kind))
        object.__setattr__(self, "children", tuple(self.children))
        object.__setattr__(self, "metadata", dict(self.metadata))

    def __eq__(self, other):
        if not isinstance(other, Node):
            return NotImplemented
        return (
            self.id == other.id
            and self.label == other.label
            and self.kind == other.kind
            and self.children == other.children
            and dict(self.metadata) == dict(other.metadata)
        )

    __hash__ = None


@dataclass(frozen=True)
class Hierarchy:
    """Validated decision tree plus per-node local weights and matrices.

    Values are immutable; the ``with_*`` operations return new hierarchies
    sharing unchanged parts. ``nodes`` preserves declaration order, which
    fixes display order and ranking tie-breaks.
    """

    nodes: dict[str, Node]
    root: str
    local_priorities: dict[str, PriorityVector] = field(default_factory=dict)
    judgment_matrices: dict[str, PairwiseMatrix] = field(default_factory=dict)

    def node(self, node_id: str) -> Node:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise HierarchyError(f"unknown node {node_id!r}") from None

    def children(self, node_id: str) -> tuple[str, ...]:
        return self.node(node_id).children

    @property
    def internal_ids(self) -> tuple[str, ...]:
        """Goal and criterion ids in declaration order."""
        return tuple(i for i, n in self.nodes.items() if n.kind is not NodeKind.ALTERNATIVE)

    @property
    def alternative_ids(self) -> tuple[str, ...]:
        return tuple(i for i, n in self.nodes.items() if n.kind is NodeKind.ALTERNATIVE)

    def __eq__(self, other):
        if not isinstance(other, Hierarchy):
            return NotImplemented
        return (
            self.root == other.root
            and list(self.nodes) == list(other.nodes)
            and all(self.nodes[k] == other.nodes[k] for k in self.nodes)
            and self.local_priorities == other.local_priorities
            and set(self.judgment_matrices) == set(other.judgment_matrices)
            and all(self.judgment_matrices[k] == other.judgment_matrices[k] for k in self.judgment_matrices)
        )

    __hash__ = None


def build_hierarchy(nodes: Iterable[Node]) -> Hierarchy:
    """Validate node declarations into a hierarchy.

    Rejects duplicate ids, references to undeclared ids, zero or multiple
    goal nodes, cycles, alternatives with children, goal/criterion nodes
    with fewer than two children, multiple parents for non-alternative
    nodes, and nodes unreachable from the goal. Declaration order is
    preserved.
    """
    node_map: dict[str, Node] = {}
    for node in nodes:
        if node.id in node_map:
            raise HierarchyError(f"duplicate node id {node.id!r}")
        node_map[node.id] = node
    if not node_map:
        raise HierarchyError("no nodes declared")

    goals = [n.id for n in node_map.values() if n.kind is NodeKind.GOAL]
    if len(goals) != 1:
        raise HierarchyError(f"expected exactly one goal node, found {len(goals)}: {goals}")
    root = goals[0]

    for node in node_map.values():
        for child in node.children:
            if child not in node_map:
                raise HierarchyError(f"node {node.id!r} references undeclared child {child!r}")
        if node.kind is NodeKind.ALTERNATIVE:
            if node.children:
                raise HierarchyError(f"alternative {node.id!r} must not have children")
        else:
            if len(node.children) < 2:
                raise HierarchyError(
                    f"{node.kind.value} node {node.id!r} has {len(node.children)} children; at least 2 required"
                )

    # Cycle check over child edges (iterative DFS, three colours).
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {i: WHITE for i in node_map}
    for start in node_map:
        if colour[start] != WHITE:
            continue
        stack = [(start, iter(node_map[start].children))]
        colour[start] = GREY
        while stack:
            nid, it = stack[-1]
            advanced = False
            for child in it:
                if colour[child] == GREY:
                    raise HierarchyError(f"cycle detected at node {child!r}")
                if colour[child] == WHITE:
                    colour[child] = GREY
                    stack.append((child, iter(node_map[child].children)))
                    advanced = True
                    break
            if not advanced:
                colour[nid] = BLACK
                stack.pop()

    parents: dict[str, list[str]] = {i: [] for i in node_map}
    for node in node_map.values():
        for child in node.children:
            parents[child].append(node.id)
    if parents[root]:
        raise HierarchyError(f"goal node {root!r} must not be a child of {parents[root]}")
    for nid, ps in parents.items():
        if node_map[nid].kind is not NodeKind.ALTERNATIVE and len(ps) > 1:
            raise HierarchyError(f"{node_map[nid].kind.value} node {nid!r} has multiple parents {ps}")

    reachable = set()
    frontier = [root]
    while frontier:
        nid = frontier.pop()
        if nid in reachable:
            continue
        reachable.add(nid)
        frontier.extend(node_map[nid].children)
    orphans = [i for i in node_map if i not in reachable]
    if orphans:
        raise HierarchyError(f"nodes not reachable from the goal: {orphans}")

    return Hierarchy(nodes=node_map, root=root)


def attach_local_priorities(
    h: Hierarchy,
    node_id: str,
    priorities: Union[PriorityVector, Sequence[float]],
) -> Hierarchy:
    """Set one internal node's local weights, returning a new hierarchy.

    A plain weight sequence is rescaled to sum to 1 and recorded as
    directly assigned; a :class:`PriorityVector` is stored as given.
    """
    node = h.node(node_id)
    if node.kind is NodeKind.ALTERNATIVE:
        raise HierarchyError(f"cannot attach local priorities to alternative {node_id!r}")
    pv = priorities if isinstance(priorities, PriorityVector) else PriorityVector.assigned(priorities)
    if len(pv) != len(node.children):
        raise HierarchyError(
            f"node {node_id!r} has {len(node.children)} children but got {len(pv)} weights"
        )
    updated = dict(h.local_priorities)
    updated[node_id] = pv
    return Hierarchy(h.nodes, h.root, updated, dict(h.judgment_matrices))


def attach_judgment_matrix(h: Hierarchy, node_id: str, matrix: PairwiseMatrix) -> Hierarchy:
    """Store the judgment matrix behind one internal node's comparisons."""
    node = h.node(node_id)
    if node.kind is NodeKind.ALTERNATIVE:
        raise HierarchyError(f"cannot attach a judgment matrix to alternative {node_id!r}")
    if matrix.order != len(node.children):
        raise HierarchyError(
            f"node {node_id!r} has {len(node.children)} children but the matrix has order {matrix.order}"
        )
    if matrix.item_ids != node.children:
        raise HierarchyError(
            f"matrix items {matrix.item_ids} do not match children of {node_id!r}: {node.children}"
        )
    updated = dict(h.judgment_matrices)
    updated[node_id] = matrix
    return Hierarchy(h.nodes, h.root, dict(h.local_priorities), updated)


@dataclass(frozen=True)
class GlobalPriorities:
    """Synthesized weights: tree-node weights, alternative scores, ranking.

    ``per_node`` carries the path-product weight of every goal/criterion
    node (root = 1). ``alternatives`` aggregates each alternative's
    contributions over all of its parents; the scores sum to 1.
    """

    per_node: dict[str, float]
    alternatives: dict[str, float]
    ranking: tuple[tuple[str, float], ...]


def synthesize(h: Hierarchy) -> GlobalPriorities:
    """Aggregate local weights across levels into global priorities.

    Top-down pass: the goal carries weight 1, each child receives its
    parent's weight times its local weight, and alternative contributions
    add up across parents. Ranking is by descending score with ties kept
    in declaration order.
    """
    per_node: dict[str, float] = {h.root: 1.0}
    scores: dict[str, float] = {a: 0.0 for a in h.alternative_ids}

    order: list[str] = []
    frontier = [h.root]
    while frontier:
        nid = frontier.pop(0)
        node = h.nodes[nid]
        if node.kind is NodeKind.ALTERNATIVE:
            continue
        order.append(nid)
        frontier.extend(node.children)

    for nid in order:
        node = h.nodes[nid]
        pv = h.local_priorities.get(nid)
        if pv is None:
            raise HierarchyError(f"node {nid!r} has no local priorities; attach or derive them first")
        parent_weight = per_node[nid]
        for child, w in zip(node.children, pv.weights):
            if h.nodes[child].kind is NodeKind.ALTERNATIVE:
                scores[child] += parent_weight * w
            else:
                per_node[child] = parent_weight * w

    ranking = tuple(sorted(scores.items(), key=lambda kv: -kv[1]))
    return GlobalPriorities(per_node, scores, ranking)


@dataclass(frozen=True)
class ContributionTable:
    """Criterion-by-alternative breakdown of the final scores.

    ``cells[(c, a)]`` is criterion c's global weight times alternative a's
    local weight under c, so each row totals the criterion's global weight
    and each column totals the alternative's overall score.
    """

    rows: tuple[str, ...]
    columns: tuple[str, ...]
    cells: dict[tuple[str, str], float]
    row_totals: dict[str, float]
    column_totals: dict[str, float]


def contribution_matrix(h: Hierarchy, gp: GlobalPriorities) -> ContributionTable:
    """Tabulate per-criterion contributions for a three-level hierarchy.

    Requires the shared-alternative shape: every child of the goal is a
    criterion and every criterion parents the same ordered alternatives.
    Deeper or ragged hierarchies are rejected; their per-level breakdowns
    are out of scope.
    """
    criteria = h.children(h.root)
    for c in criteria:
        if h.nodes[c].kind is not NodeKind.CRITERION:
            raise HierarchyError(
                f"contribution table requires goal -> criteria -> alternatives; {c!r} is {h.nodes[c].kind.value}"
            )
    alternatives: Optional[tuple[str, ...]] = None
    for c in criteria:
        kids = h.children(c)
        for a in kids:
            if h.nodes[a].kind is not NodeKind.ALTERNATIVE:
                raise HierarchyError(
                    f"contribution table requires alternatives under criteria; {a!r} under {c!r} is {h.nodes[a].kind.value}"
                )
        if alternatives is None:
            alternatives = kids
        elif kids != alternatives:
            raise HierarchyError(
                f"criterion {c!r} parents {kids}, expected the shared alternatives {alternatives}"
            )
    assert alternatives is not None

    cells: dict[tuple[str, str], float] = {}
    for c in criteria:
        pv = h.local_priorities.get(c)
        if pv is None:
            raise HierarchyError(f"node {c!r} has no local priorities; attach or derive them first")
        for a, w in zip(alternatives, pv.weights):
            cells[(c, a)] = gp.per_node[c] * w
    row_totals = {c: sum(cells[(c, a)] for a in alternatives) for c in criteria}
    column_totals = {a: sum(cells[(c, a)] for c in criteria) for a in alternatives}
    return ContributionTable(tuple(criteria), tuple(alternatives), cells, row_totals, column_totals)


@dataclass(frozen=True)
class RankChange:
    alternative: str
    before: int  # 1-based rank in the baseline synthesis
    after: int


@dataclass(frozen=True)
class SensitivityResult:
    criterion: str
    old_weight: float
    new_weight: float
    priorities: GlobalPriorities
    rank_changes: tuple[RankChange, ...]


def sensitivity(h: Hierarchy, criterion: str, new_weight: float) -> SensitivityResult:
    """Re-synthesize with one top-level criterion forced to ``new_weight``.

    The remaining goal-level weights are rescaled proportionally to share
    ``1 - new_weight``, the standard one-at-a-time perturbation. Reports
    every alternative whose rank moved relative to the unperturbed
    synthesis.
    """
    if not 0.0 <= new_weight <= 1.0:
        raise HierarchyError(f"new weight must lie in [0, 1], got {new_weight}")
    children = h.children(h.root)
    if criterion not in children:
        raise HierarchyError(f"{criterion!r} is not a child of the goal {h.root!r}")
    base_pv = h.local_priorities.get(h.root)
    if base_pv is None:
        raise HierarchyError(f"node {h.root!r} has no local priorities; attach or derive them first")

    idx = children.index(criterion)
    old_weight = base_pv.weights[idx]
    sibling_sum = sum(w for k, w in enumerate(base_pv.weights) if k != idx)
    if new_weight < 1.0 and sibling_sum <= 0.0:
        raise HierarchyError(
            f"sibling weights of {criterion!r} are all zero; rescaling to {new_weight} is undefined"
        )
    if new_weight == 1.0:
        weights = [1.0 if k == idx else 0.0 for k in range(len(children))]
    else:
        scale = (1.0 - new_weight) / sibling_sum
        weights = [new_weight if k == idx else w * scale for k, w in enumerate(base_pv.weights)]

    base = synthesize(h)
    perturbed = synthesize(attach_local_priorities(h, h.root, weights))

    base_rank = {alt: pos + 1 for pos, (alt, _) in enumerate(base.ranking)}
    new_rank = {alt: pos + 1 for pos, (alt, _) in enumerate(perturbed.ranking)}
    changes = tuple(
        RankChange(alt, base_rank[alt], new_rank[alt])
        for alt, _ in base.ranking
        if new_rank[alt] != base_rank[alt]
    )
    return SensitivityResult(criterion, old_weight, new_weight, perturbed, changes)
