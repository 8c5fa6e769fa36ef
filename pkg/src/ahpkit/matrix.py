"""Reciprocal judgment matrices and priority derivation.

A pairwise comparison matrix holds one decision node's judgments: entry
``a[i, j]`` is how strongly item ``i`` dominates item ``j``, with the
diagonal fixed at 1 and the lower triangle the elementwise reciprocal of
the upper. Local weights come out of the matrix either by power iteration
(the principal right eigenvector, the AHP default) or by row geometric
means (closed form, used as an independent cross-check).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConvergenceError, InvalidMatrixError

# Relative tolerance for the reciprocity and unit-diagonal checks.
RECIPROCITY_TOL = 1e-12

# Saaty random indices for matrix orders 1..15. Orders 1 and 2 are always
# consistent, hence 0.
RANDOM_INDEX = {
    1: 0.0, 2: 0.0, 3: 0.58, 4: 0.90, 5: 1.12,
    6: 1.24, 7: 1.32, 8: 1.41, 9: 1.45, 10: 1.49,
    11: 1.51, 12: 1.54, 13: 1.56, 14: 1.57, 15: 1.58,
}

MAX_ORDER = max(RANDOM_INDEX)

# Conventional acceptance threshold for the consistency ratio.
DEFAULT_CR_THRESHOLD = 0.10


class Method(str, enum.Enum):
    """How a priority vector was obtained."""

    EIGENVECTOR = "eigenvector"
    GEOMETRIC_MEAN = "geometric_mean"
    ASSIGNED = "assigned"


@dataclass(frozen=True, eq=False)
class PairwiseMatrix:
    """An n-by-n grid of positive comparison ratios for n items.

    Construction only checks shape; use :func:`validate_reciprocal` to
    check the reciprocal-matrix invariants so that broken inputs can be
    inspected and reported rather than rejected blindly.
    """

    entries: np.ndarray
    item_ids: tuple[str, ...]

    def __eq__(self, other):
        if not isinstance(other, PairwiseMatrix):
            return NotImplemented
        return self.item_ids == other.item_ids and np.array_equal(self.entries, other.entries)

    __hash__ = None

    def __init__(self, entries, item_ids: Sequence[str]):
        arr = np.asarray(entries, dtype=float)
        ids = tuple(str(i) for i in item_ids)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidMatrixError(f"entries must be square, got shape {arr.shape}")
        if arr.shape[0] != len(ids):
            raise InvalidMatrixError(
                f"{len(ids)} item ids for a {arr.shape[0]}x{arr.shape[0]} matrix"
            )
        if len(set(ids)) != len(ids):
            raise InvalidMatrixError("item ids must be unique")
        if arr.shape[0] < 1:
            raise InvalidMatrixError("matrix order must be at least 1")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)
        object.__setattr__(self, "item_ids", ids)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __getitem__(self, idx):
        return self.entries[idx]

    @classmethod
    def from_judgments(
        cls,
        item_ids: Sequence[str],
        judgments: dict[tuple[int, int], float],
    ) -> "PairwiseMatrix":
        """Assemble a matrix from upper-triangle judgments.

        ``judgments[(i, j)] = v`` sets ``a[i, j] = v`` and ``a[j, i] = 1/v``;
        the diagonal is fixed at 1. Every off-diagonal pair must be covered.
        """
        n = len(item_ids)
        arr = np.ones((n, n), dtype=float)
        seen = set()
        for (i, j), value in judgments.items():
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise InvalidMatrixError(f"judgment index ({i}, {j}) out of range for order {n}")
            if value <= 0 or not math.isfinite(value):
                raise InvalidMatrixError(f"judgment ({i}, {j}) must be a positive ratio, got {value}")
            arr[i, j] = value
            arr[j, i] = 1.0 / value
            seen.add((min(i, j), max(i, j)))
        missing = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in seen]
        if missing:
            raise InvalidMatrixError(f"missing judgments for pairs {missing}")
        return cls(arr, item_ids)

    def permuted(self, perm: Sequence[int]) -> "PairwiseMatrix":
        """Reorder items by ``perm`` (row, column and id order together)."""
        p = list(perm)
        return PairwiseMatrix(self.entries[np.ix_(p, p)], [self.item_ids[k] for k in p])


@dataclass(frozen=True)
class Violation:
    """One failed invariant at position (i, j)."""

    i: int
    j: int
    reason: str  # "positivity" | "diagonal" | "reciprocity"
    detail: str = ""

    def __str__(self):
        return f"({self.i}, {self.j}): {self.reason}" + (f" - {self.detail}" if self.detail else "")


def validate_reciprocal(matrix: PairwiseMatrix) -> list[Violation]:
    """Check the reciprocal-matrix invariants.

    Returns an empty list when the matrix is valid, otherwise one
    :class:`Violation` per broken cell: non-positive or non-finite entries,
    off-unit diagonal, and ``a[i, j] * a[j, i] != 1`` beyond relative
    tolerance ``RECIPROCITY_TOL``.
    """
    a = matrix.entries
    n = matrix.order
    violations: list[Violation] = []
    for i in range(n):
        for j in range(n):
            v = a[i, j]
            if not math.isfinite(v) or v <= 0:
                violations.append(Violation(i, j, "positivity", f"entry {v!r} is not a positive finite ratio"))
    if violations:
        return violations
    for i in range(n):
        if abs(a[i, i] - 1.0) > RECIPROCITY_TOL:
            violations.append(Violation(i, i, "diagonal", f"a[{i},{i}] = {a[i, i]!r}, expected 1"))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(a[i, j] * a[j, i] - 1.0) > RECIPROCITY_TOL:
                violations.append(
                    Violation(j, i, "reciprocity", f"a[{j},{i}] = {a[j, i]!r}, expected 1/a[{i},{j}] = {1.0 / a[i, j]!r}")
                )
    return violations


def _require_valid(matrix: PairwiseMatrix) -> None:
    violations = validate_reciprocal(matrix)
    if violations:
        raise InvalidMatrixError(
            "matrix is not a valid reciprocal matrix: " + "; ".join(str(v) for v in violations),
            violations,
        )


@dataclass(frozen=True)
class PriorityVector:
    """Normalized local weights for one node's children.

    ``lambda_max`` is only present when the weights came out of the
    eigenvector method; the consistency computation requires it.
    """

    weights: tuple[float, ...]
    method: Method
    lambda_max: Optional[float] = None

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if any(x < 0 or not math.isfinite(x) for x in w):
            raise ValueError(f"weights must be nonnegative finite reals, got {w}")
        total = math.fsum(w)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1 within 1e-12, got sum {total!r}")
        object.__setattr__(self, "weights", w)

    @classmethod
    def assigned(cls, weights: Sequence[float]) -> "PriorityVector":
        """Directly assigned weights; rescaled to sum to 1."""
        w = np.asarray(list(weights), dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a non-empty 1-d sequence")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError(f"weights must be nonnegative finite reals, got {w.tolist()}")
        total = w.sum()
        if total <= 0:
            raise ValueError("weights must have a positive sum")
        return cls(tuple(_normalize(w)), Method.ASSIGNED)

    def __len__(self):
        return len(self.weights)

    def as_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=float)


def _normalize(w: np.ndarray) -> np.ndarray:
    w = w / w.sum()
    # fsum-correct the largest component so the Python-level sum is exact
    # within 1e-12 regardless of accumulation order.
    drift = math.fsum(w.tolist()) - 1.0
    if drift != 0.0:
        k = int(np.argmax(w))
        w = w.copy()
        w[k] -= drift
    return w


def derive_priorities_eigen(
    matrix: PairwiseMatrix,
    tol: float = 1e-10,
    max_iter: int = 1000,
) -> PriorityVector:
    """Principal-eigenvector weights by power iteration.

    Starts from the uniform vector, applies the matrix and L1-normalizes
    each step, and stops when the L1 change drops to ``tol``. The dominant
    eigenvalue estimate is the mean of the componentwise ratios
    ``(A w) / w`` at convergence.

    Raises :class:`ConvergenceError` after ``max_iter`` steps without
    convergence, which signals a pathological input.
    """
    _require_valid(matrix)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")

    a = matrix.entries
    n = matrix.order
    w = np.full(n, 1.0 / n)
    delta = math.inf
    for _ in range(max_iter):
        nxt = a @ w
        nxt /= nxt.sum()
        delta = float(np.abs(nxt - w).sum())
        w = nxt
        if delta <= tol:
            break
    else:
        raise ConvergenceError(max_iter, delta)

    aw = a @ w
    lambda_max = float(np.mean(aw / w))
    return PriorityVector(tuple(_normalize(w)), Method.EIGENVECTOR, lambda_max)


def derive_priorities_geomean(matrix: PairwiseMatrix) -> PriorityVector:
    """Row-geometric-mean weights, the closed-form cross-check.

    Exactly recovers the weights of a consistent matrix and provably
    coincides with the eigenvector method for n <= 3.
    """
    _require_valid(matrix)
    logs = np.log(matrix.entries)
    w = np.exp(logs.mean(axis=1))
    return PriorityVector(tuple(_normalize(w)), Method.GEOMETRIC_MEAN)


@dataclass(frozen=True)
class WorstJudgment:
    """The upper-triangle judgment deviating most from the fitted weights."""

    i: int
    j: int
    deviation: float  # |log a_ij - log(w_i / w_j)|


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    ri: float
    cr: float
    consistent: bool
    worst_judgment: Optional[WorstJudgment] = None
    threshold: float = field(default=DEFAULT_CR_THRESHOLD)


def random_index(n: int) -> float:
    """Random index (expected CI of random matrices) for order ``n``."""
    if n not in RANDOM_INDEX:
        raise ValueError(f"random index is defined for orders 1..{MAX_ORDER}, got {n}")
    return RANDOM_INDEX[n]


def consistency_report(
    matrix: PairwiseMatrix,
    pv: PriorityVector,
    threshold: float = DEFAULT_CR_THRESHOLD,
) -> ConsistencyReport:
    """Consistency measures for a matrix and its eigenvector priorities.

    CI = (lambda_max - n) / (n - 1) and CR = CI / RI(n); orders 1 and 2
    are consistent by construction, so both are 0 there. The worst
    judgment is the pair (i < j) maximizing ``|log a_ij - log(w_i/w_j)|``,
    the symmetric multiplicative deviation; it is the natural candidate to
    revise when the matrix fails the CR threshold.
    """
    if pv.lambda_max is None:
        raise ValueError(
            f"consistency requires eigenvector-derived priorities with lambda_max; got method {pv.method.value!r}"
        )
    if len(pv) != matrix.order:
        raise ValueError(f"priority vector of length {len(pv)} for a matrix of order {matrix.order}")
    n = matrix.order
    lam = pv.lambda_max
    if n <= 2:
        return ConsistencyReport(lam, 0.0, random_index(n), 0.0, True, None, threshold)

    ci = (lam - n) / (n - 1)
    ri = random_index(n)
    cr = ci / ri
    w = pv.as_array()
    worst = None
    for i in range(n):
        for j in range(i + 1, n):
            dev = abs(math.log(matrix.entries[i, j]) - math.log(w[i] / w[j]))
            if worst is None or dev > worst.deviation:
                worst = WorstJudgment(i, j, dev)
    return ConsistencyReport(lam, ci, ri, cr, cr <= threshold, worst, threshold)
