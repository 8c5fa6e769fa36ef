"""Decision support with the Analytic Hierarchy Process.

Structure a decision as a goal/criteria/alternatives hierarchy, elicit
pairwise judgments on the nine-point verbal scale, derive local weights
with consistency checking, synthesize global priorities across levels,
and probe their stability with one-at-a-time sensitivity analysis.
"""

__version__ = "0.1.0"

from .errors import (
    AhpError,
    ConvergenceError,
    DocumentError,
    ElicitationError,
    HierarchyError,
    InvalidMatrixError,
)
from .matrix import (
    ConsistencyReport,
    Method,
    PairwiseMatrix,
    PriorityVector,
    Violation,
    WorstJudgment,
    consistency_report,
    derive_priorities_eigen,
    derive_priorities_geomean,
    random_index,
    validate_reciprocal,
)
from .hierarchy import (
    ContributionTable,
    GlobalPriorities,
    Hierarchy,
    Node,
    NodeKind,
    RankChange,
    SensitivityResult,
    attach_judgment_matrix,
    attach_local_priorities,
    build_hierarchy,
    contribution_matrix,
    sensitivity,
    synthesize,
)
from .elicitation import (
    Descriptor,
    Direction,
    ElicitationSession,
    NodeProgress,
    SessionStatus,
    VerbalJudgment,
    comparison_schedule,
    merge_sessions,
    question_text,
    value_to_verbal,
    verbal_to_value,
)

__all__ = [
    "AhpError",
    "ConsistencyReport",
    "ContributionTable",
    "ConvergenceError",
    "Descriptor",
    "Direction",
    "DocumentError",
    "ElicitationError",
    "ElicitationSession",
    "GlobalPriorities",
    "Hierarchy",
    "HierarchyError",
    "InvalidMatrixError",
    "Method",
    "Node",
    "NodeKind",
    "NodeProgress",
    "PairwiseMatrix",
    "PriorityVector",
    "RankChange",
    "SensitivityResult",
    "SessionStatus",
    "VerbalJudgment",
    "Violation",
    "WorstJudgment",
    "attach_judgment_matrix",
    "attach_local_priorities",
    "build_hierarchy",
    "comparison_schedule",
    "consistency_report",
    "contribution_matrix",
    "derive_priorities_eigen",
    "derive_priorities_geomean",
    "merge_sessions",
    "question_text",
    "random_index",
    "sensitivity",
    "synthesize",
    "validate_reciprocal",
    "value_to_verbal",
    "verbal_to_value",
    "__version__",
]
