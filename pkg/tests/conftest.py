import numpy as np
import pytest

from ahpkit import Node, NodeKind, PairwiseMatrix, build_hierarchy
from ahpkit.banking_case import banking_model_with_weights, builtin_banking_model


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", None) != "call":
                continue
            if "test_acceptance.py" not in report.nodeid:
                continue
            name = report.nodeid.split("::")[-1]
            lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, verdict in lines:
            terminalreporter.write_line(f"{verdict}  {name}")


@pytest.fixture
def fig1_matrix() -> PairwiseMatrix:
    """The running three-criteria example matrix: visibly inconsistent."""
    return PairwiseMatrix([[1, 3, 5], [1 / 3, 1, 7], [1 / 5, 1 / 7, 1]], ["a", "b", "c"])


@pytest.fixture
def banking_structure():
    return builtin_banking_model()


@pytest.fixture
def banking_model():
    return banking_model_with_weights()


@pytest.fixture
def small_hierarchy():
    """goal -> {A, B} -> shared {x, y, z}."""
    return build_hierarchy(
        [
            Node("goal", "Goal", NodeKind.GOAL, ("A", "B")),
            Node("A", "A", NodeKind.CRITERION, ("x", "y", "z")),
            Node("B", "B", NodeKind.CRITERION, ("x", "y", "z")),
            Node("x", "x", NodeKind.ALTERNATIVE),
            Node("y", "y", NodeKind.ALTERNATIVE),
            Node("z", "z", NodeKind.ALTERNATIVE),
        ]
    )


def random_reciprocal(rng: np.random.Generator, n: int) -> PairwiseMatrix:
    """A valid reciprocal matrix with log-uniform upper-triangle entries."""
    a = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            a[i, j] = np.exp(rng.uniform(-np.log(9), np.log(9)))
            a[j, i] = 1.0 / a[i, j]
    return PairwiseMatrix(a, [f"c{k}" for k in range(n)])


def consistent_matrix(rng: np.random.Generator, n: int) -> tuple[PairwiseMatrix, np.ndarray]:
    """A perfectly consistent matrix a_ij = w_i / w_j from log-uniform w."""
    w = np.exp(rng.uniform(np.log(0.05), np.log(20.0), size=n))
    w = w / w.sum()
    a = w[:, None] / w[None, :]
    return PairwiseMatrix(a, [f"c{k}" for k in range(n)]), w
