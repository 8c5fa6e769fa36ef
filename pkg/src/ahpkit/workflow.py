"""Shared compute pipeline behind the CLI and the HTTP service.

Both entry points must emit byte-identical reports for the same model, so
the derive / synthesize / tabulate sequence lives here once.
"""

from __future__ import annotations

from typing import Optional

from .documents import ModelDocument, Provenance, ReportDocument, model_hash
from .elicitation import ElicitationSession
from .errors import HierarchyError
from .hierarchy import attach_local_priorities, contribution_matrix, synthesize
from .matrix import DEFAULT_CR_THRESHOLD, consistency_report, derive_priorities_eigen


def compute_results(
    model: ModelDocument,
    tol: float = 1e-10,
    max_iter: int = 1000,
    precision: Optional[int] = 6,
    cr_threshold: float = DEFAULT_CR_THRESHOLD,
) -> ReportDocument:
    """Derive, synthesize and tabulate one model into a report.

    Nodes carrying a judgment matrix get eigenvector priorities derived
    from it (the matrix wins over any stored weights); nodes with assigned
    weights keep them. The contribution table is present only for the
    three-level shared-alternative shape.
    """
    h = model.hierarchy
    consistency = {}
    for node_id in h.internal_ids:
        matrix = h.judgment_matrices.get(node_id)
        if matrix is not None:
            pv = derive_priorities_eigen(matrix, tol=tol, max_iter=max_iter)
            h = attach_local_priorities(h, node_id, pv)
            consistency[node_id] = consistency_report(matrix, pv, threshold=cr_threshold)
    gp = synthesize(h)
    try:
        table = contribution_matrix(h, gp)
    except HierarchyError:
        table = None
    return ReportDocument(gp, table, consistency, Provenance(model_hash(model)), precision)


def session_results(
    session: ElicitationSession,
    model: ModelDocument,
    tol: float = 1e-10,
    max_iter: int = 1000,
    precision: Optional[int] = 6,
    cr_threshold: float = DEFAULT_CR_THRESHOLD,
) -> ReportDocument:
    """Report for a completed elicitation session.

    Every internal node's matrix is assembled from the session's answers;
    incomplete sessions are refused by the assembly step.
    """
    h = session.hierarchy
    consistency = {}
    for node_id in h.internal_ids:
        matrix = session.matrix_for(node_id)
        pv = derive_priorities_eigen(matrix, tol=tol, max_iter=max_iter)
        h = attach_local_priorities(h, node_id, pv)
        consistency[node_id] = consistency_report(matrix, pv, threshold=cr_threshold)
    gp = synthesize(h)
    try:
        table = contribution_matrix(h, gp)
    except HierarchyError:
        table = None
    provenance = Provenance(session.model_hash or model_hash(model))
    return ReportDocument(gp, table, consistency, provenance, precision)
