"""Durable document formats for models, sessions and reports.

All three artifacts share one textual JSON-based format: canonical key
order, two-space indent, UTF-8, trailing newline. Serialization is
deterministic, so identical values produce identical bytes and documents
diff cleanly. Matrix ratios may be written as decimals or as "p/q"
strings; on load the lower triangle is checked against the upper and then
recomputed exactly from it. The full schemas live in docs/formats.md.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from . import __version__ as TOOL_VERSION
from .elicitation import ElicitationSession
from .errors import DocumentError
from .hierarchy import (
    ContributionTable,
    GlobalPriorities,
    Hierarchy,
    Node,
    NodeKind,
    attach_judgment_matrix,
    attach_local_priorities,
    build_hierarchy,
)
from .matrix import (
    ConsistencyReport,
    Method,
    PairwiseMatrix,
    PriorityVector,
    WorstJudgment,
)

FORMAT_VERSION = 1
MODEL_FORMAT = "ahpkit/model"
SESSION_FORMAT = "ahpkit/session"
REPORT_FORMAT = "ahpkit/report"

# How far a document's lower-triangle entry may stray from the exact
# reciprocal of its upper mirror before the document is rejected. Loose
# enough for hand-written decimals ("0.333333"), tight enough to catch
# genuinely contradictory judgments.
DOCUMENT_RECIPROCITY_TOL = 1e-4

_RATIO_RE = re.compile(r"^\s*([0-9]+(?:\.[0-9]+)?)\s*/\s*([0-9]+(?:\.[0-9]+)?)\s*$")

_RESERVED_MODEL_KEYS = {"format", "format_version", "hierarchy", "judgments", "local_weights"}


def _dumps(payload: dict) -> bytes:
    text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False)
    return (text + "\n").encode("utf-8")


def _parse_json(data: bytes, kind: str) -> dict:
    try:
        payload = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DocumentError(f"malformed {kind} document: {exc}") from None
    if not isinstance(payload, dict):
        raise DocumentError(f"malformed {kind} document: top level must be an object")
    return payload


def _check_header(payload: dict, expected_format: str) -> None:
    fmt = payload.get("format")
    if fmt != expected_format:
        raise DocumentError(f"expected format {expected_format!r}, got {fmt!r}", location="format")
    version = payload.get("format_version")
    if not isinstance(version, int):
        raise DocumentError("format_version must be an integer", location="format_version")
    if version != FORMAT_VERSION:
        raise DocumentError(
            f"unsupported format_version {version}; this build reads version {FORMAT_VERSION}",
            location="format_version",
        )


def parse_ratio(value: Union[int, float, str], location: str) -> float:
    """A ratio written as a number, a decimal string, or "p/q"."""
    if isinstance(value, bool):
        raise DocumentError(f"ratio must be a number or ratio string, got {value!r}", location)
    if isinstance(value, (int, float)):
        result = float(value)
    elif isinstance(value, str):
        m = _RATIO_RE.match(value)
        if m:
            num, den = float(m.group(1)), float(m.group(2))
            if den == 0:
                raise DocumentError(f"zero denominator in ratio {value!r}", location)
            result = num / den
        else:
            try:
                result = float(value)
            except ValueError:
                raise DocumentError(f"cannot parse ratio {value!r}", location) from None
    else:
        raise DocumentError(f"ratio must be a number or ratio string, got {type(value).__name__}", location)
    if not (result > 0 and math.isfinite(result)):
        raise DocumentError(f"ratio must be positive and finite, got {result}", location)
    return result


@dataclass(frozen=True)
class ModelDocument:
    """A parsed model plus any unknown top-level fields, kept for
    round-tripping documents written by newer or foreign tooling."""

    hierarchy: Hierarchy
    extras: dict = field(default_factory=dict)


def save_model(model: Union[Hierarchy, ModelDocument]) -> bytes:
    """Serialize a model deterministically; same value, same bytes."""
    if isinstance(model, ModelDocument):
        h, extras = model.hierarchy, model.extras
    else:
        h, extras = model, {}
    payload = dict(extras)
    payload["format"] = MODEL_FORMAT
    payload["format_version"] = FORMAT_VERSION
    payload["hierarchy"] = {
        "root": h.root,
        "nodes": [
            {
                "id": n.id,
                "label": n.label,
                "kind": n.kind.value,
                "children": list(n.children),
                "metadata": dict(n.metadata),
            }
            for n in h.nodes.values()
        ],
    }
    payload["judgments"] = {
        node_id: [[float(v) for v in row] for row in m.entries]
        for node_id, m in h.judgment_matrices.items()
    }
    payload["local_weights"] = {
        node_id: {
            "method": pv.method.value,
            "weights": list(pv.weights),
            **({"lambda_max": pv.lambda_max} if pv.lambda_max is not None else {}),
        }
        for node_id, pv in h.local_priorities.items()
    }
    return _dumps(payload)


def _load_matrix(grid, node: Node, node_id: str) -> PairwiseMatrix:
    n = len(node.children)
    loc = f"judgments.{node_id}"
    if not isinstance(grid, list) or len(grid) != n or any(not isinstance(r, list) or len(r) != n for r in grid):
        raise DocumentError(f"judgment grid must be {n}x{n} to match the node's children", loc)
    upper: dict[tuple[int, int], float] = {}
    missing: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(i, n):
            raw = grid[i][j]
            if raw is None:
                if i != j:  # a null diagonal is implicitly 1
                    missing.append((i, j))
                continue
            v = parse_ratio(raw, f"{loc}[{i}][{j}]")
            if i == j:
                if abs(v - 1.0) > DOCUMENT_RECIPROCITY_TOL:
                    raise DocumentError(f"diagonal entry must be 1, got {v}", f"{loc}[{i}][{j}]")
            else:
                upper[(i, j)] = v
    if missing:
        raise DocumentError(
            f"incomplete judgment matrix for node {node_id!r}: missing pairs {missing}", loc
        )
    for i in range(n):
        for j in range(i + 1, n):
            low = grid[j][i]
            if low is None:
                continue  # omitted lower entries are implied by reciprocity
            v = parse_ratio(low, f"{loc}[{j}][{i}]")
            if abs(v * upper[(i, j)] - 1.0) > DOCUMENT_RECIPROCITY_TOL:
                raise DocumentError(
                    f"reciprocity violation at node {node_id!r}: entry [{j}][{i}] = {v} "
                    f"is not the reciprocal of entry [{i}][{j}] = {upper[(i, j)]}",
                    f"{loc}[{j}][{i}]",
                )
    return PairwiseMatrix.from_judgments(node.children, upper)


def _load_priority_vector(spec, node: Node, node_id: str) -> PriorityVector:
    loc = f"local_weights.{node_id}"
    if not isinstance(spec, dict):
        raise DocumentError("local weights entry must be an object", loc)
    try:
        method = Method(spec.get("method", "assigned"))
    except ValueError:
        raise DocumentError(f"unknown derivation method {spec.get('method')!r}", f"{loc}.method") from None
    weights = spec.get("weights")
    if not isinstance(weights, list) or not all(isinstance(w, (int, float)) and not isinstance(w, bool) for w in weights):
        raise DocumentError("weights must be a list of numbers", f"{loc}.weights")
    if len(weights) != len(node.children):
        raise DocumentError(
            f"{len(weights)} weights for node {node_id!r} with {len(node.children)} children",
            f"{loc}.weights",
        )
    lambda_max = spec.get("lambda_max")
    if lambda_max is not None and method is not Method.EIGENVECTOR:
        raise DocumentError("lambda_max is only valid with the eigenvector method", f"{loc}.lambda_max")
    w = [float(x) for x in weights]
    if any(x < 0 for x in w) or sum(w) <= 0:
        raise DocumentError("weights must be nonnegative with a positive sum", f"{loc}.weights")
    if abs(math.fsum(w) - 1.0) <= 1e-12:
        # already normalized: keep the exact stored floats so round trips
        # are bit-identical
        return PriorityVector(tuple(w), method, lambda_max)
    normalized = PriorityVector.assigned(w)
    return PriorityVector(normalized.weights, method, lambda_max)


def load_model_document(data: bytes) -> ModelDocument:
    """Parse and validate a model document, preserving unknown fields."""
    payload = _parse_json(data, "model")
    _check_header(payload, MODEL_FORMAT)

    hspec = payload.get("hierarchy")
    if not isinstance(hspec, dict):
        raise DocumentError("missing hierarchy object", "hierarchy")
    nodes_spec = hspec.get("nodes")
    if not isinstance(nodes_spec, list) or not nodes_spec:
        raise DocumentError("hierarchy.nodes must be a non-empty list", "hierarchy.nodes")
    nodes = []
    for idx, ns in enumerate(nodes_spec):
        loc = f"hierarchy.nodes[{idx}]"
        if not isinstance(ns, dict):
            raise DocumentError("node must be an object", loc)
        for key in ("id", "kind"):
            if not isinstance(ns.get(key), str):
                raise DocumentError(f"node {key} must be a string", f"{loc}.{key}")
        try:
            kind = NodeKind(ns["kind"])
        except ValueError:
            raise DocumentError(f"unknown node kind {ns['kind']!r}", f"{loc}.kind") from None
        children = ns.get("children", [])
        if not isinstance(children, list) or not all(isinstance(c, str) for c in children):
            raise DocumentError("children must be a list of node ids", f"{loc}.children")
        metadata = ns.get("metadata", {})
        if not isinstance(metadata, dict):
            raise DocumentError("metadata must be an object", f"{loc}.metadata")
        nodes.append(Node(ns["id"], str(ns.get("label", ns["id"])), kind, tuple(children), metadata))
    try:
        h = build_hierarchy(nodes)
    except Exception as exc:
        raise DocumentError(f"invalid hierarchy: {exc}", "hierarchy") from None
    declared_root = hspec.get("root")
    if declared_root is not None and declared_root != h.root:
        raise DocumentError(f"declared root {declared_root!r} is not the goal node {h.root!r}", "hierarchy.root")

    judgments = payload.get("judgments", {})
    if not isinstance(judgments, dict):
        raise DocumentError("judgments must be an object keyed by node id", "judgments")
    for node_id, grid in judgments.items():
        if node_id not in h.nodes:
            raise DocumentError(f"judgments reference unknown node {node_id!r}", "judgments")
        h = attach_judgment_matrix(h, node_id, _load_matrix(grid, h.nodes[node_id], node_id))

    weights = payload.get("local_weights", {})
    if not isinstance(weights, dict):
        raise DocumentError("local_weights must be an object keyed by node id", "local_weights")
    for node_id, spec in weights.items():
        if node_id not in h.nodes:
            raise DocumentError(f"local_weights reference unknown node {node_id!r}", "local_weights")
        h = attach_local_priorities(h, node_id, _load_priority_vector(spec, h.nodes[node_id], node_id))

    extras = {k: v for k, v in payload.items() if k not in _RESERVED_MODEL_KEYS}
    return ModelDocument(h, extras)


def load_model(data: bytes) -> Hierarchy:
    """Parse a model document into a validated hierarchy."""
    return load_model_document(data).hierarchy


def model_hash(model: Union[Hierarchy, ModelDocument, bytes]) -> str:
    """Hash of a model's canonical serialization.

    Raw bytes are parsed and re-serialized first, so differently formatted
    documents of the same model hash identically.
    """
    if isinstance(model, bytes):
        model = load_model_document(model)
    return hashlib.sha256(save_model(model)).hexdigest()


def save_session(session: ElicitationSession) -> bytes:
    payload = {
        "format": SESSION_FORMAT,
        "format_version": FORMAT_VERSION,
        "session_id": session.session_id,
        "model_hash": session.model_hash,
        "mode": session.mode,
        "created_at": session.created_at,
        "updated_at": session.updated_at,
        "answered": [
            {"node": node_id, "i": pair[0], "j": pair[1], "value": value}
            for (node_id, pair), value in session.answered.items()
        ],
        "pending": [{"node": node_id, "i": pair[0], "j": pair[1]} for node_id, pair in session.pending],
    }
    return _dumps(payload)


def _parse_pair_entry(entry, idx: int, section: str) -> tuple[str, tuple[int, int]]:
    loc = f"{section}[{idx}]"
    if not isinstance(entry, dict) or not isinstance(entry.get("node"), str):
        raise DocumentError("entry must be an object with a node id", loc)
    i, j = entry.get("i"), entry.get("j")
    if not isinstance(i, int) or not isinstance(j, int) or isinstance(i, bool) or isinstance(j, bool):
        raise DocumentError("pair indices i and j must be integers", loc)
    return entry["node"], (i, j)


def load_session(data: bytes, model: Union[Hierarchy, ModelDocument]) -> ElicitationSession:
    """Rebuild a session against the model it was captured for.

    The session's stored model hash must match the hash of the supplied
    model; a mismatch means the judgments belong to a different model and
    the load is rejected.
    """
    payload = _parse_json(data, "session")
    _check_header(payload, SESSION_FORMAT)
    h = model.hierarchy if isinstance(model, ModelDocument) else model

    stored_hash = payload.get("model_hash")
    if stored_hash is not None:
        actual = model_hash(model)
        if stored_hash != actual:
            raise DocumentError(
                f"session was captured for model {stored_hash[:12]}..., but the supplied model hashes to {actual[:12]}...",
                "model_hash",
            )

    mode = payload.get("mode")
    if mode not in ("discrete", "continuous"):
        raise DocumentError(f"mode must be 'discrete' or 'continuous', got {mode!r}", "mode")
    session_id = payload.get("session_id")
    if not isinstance(session_id, str) or not session_id:
        raise DocumentError("session_id must be a non-empty string", "session_id")
    created_at, updated_at = payload.get("created_at"), payload.get("updated_at")
    if not isinstance(created_at, str) or not isinstance(updated_at, str):
        raise DocumentError("created_at and updated_at must be timestamp strings", "created_at")

    answered_spec = payload.get("answered", [])
    pending_spec = payload.get("pending", [])
    if not isinstance(answered_spec, list) or not isinstance(pending_spec, list):
        raise DocumentError("answered and pending must be lists", "answered")
    answered: dict[tuple[str, tuple[int, int]], float] = {}
    for idx, entry in enumerate(answered_spec):
        key = _parse_pair_entry(entry, idx, "answered")
        value = entry.get("value")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise DocumentError("answered value must be a number", f"answered[{idx}].value")
        answered[key] = float(value)
    pending = [_parse_pair_entry(entry, idx, "pending") for idx, entry in enumerate(pending_spec)]

    try:
        return ElicitationSession.restore(
            h, mode, session_id, stored_hash, answered, pending, created_at, updated_at
        )
    except Exception as exc:
        raise DocumentError(f"invalid session state: {exc}") from None


@dataclass(frozen=True)
class Provenance:
    model_hash: str
    tool_version: str = TOOL_VERSION
    created_at: Optional[str] = None


@dataclass(frozen=True)
class ReportDocument:
    """Synthesized results in durable form."""

    priorities: GlobalPriorities
    contribution: Optional[ContributionTable]
    consistency: dict[str, ConsistencyReport]
    provenance: Provenance
    precision: Optional[int] = 6


def _rounded(value: float, precision: Optional[int]) -> float:
    return value if precision is None else round(value, precision)


def _report_payload(doc: ReportDocument) -> dict:
    p = doc.precision
    gp = doc.priorities
    payload: dict = {
        "format": REPORT_FORMAT,
        "format_version": FORMAT_VERSION,
        "precision": p,
        "global_priorities": {
            "per_node": {k: _rounded(v, p) for k, v in gp.per_node.items()},
            "alternatives": {k: _rounded(v, p) for k, v in gp.alternatives.items()},
            "ranking": [[alt, _rounded(score, p)] for alt, score in gp.ranking],
        },
        "consistency": {
            node_id: {
                "lambda_max": _rounded(r.lambda_max, p),
                "ci": _rounded(r.ci, p),
                "ri": r.ri,
                "cr": _rounded(r.cr, p),
                "consistent": r.consistent,
                "threshold": r.threshold,
                "worst_judgment": (
                    None
                    if r.worst_judgment is None
                    else {
                        "i": r.worst_judgment.i,
                        "j": r.worst_judgment.j,
                        "deviation": _rounded(r.worst_judgment.deviation, p),
                    }
                ),
            }
            for node_id, r in doc.consistency.items()
        },
        "provenance": {
            "model_hash": doc.provenance.model_hash,
            "tool_version": doc.provenance.tool_version,
            "created_at": doc.provenance.created_at,
        },
    }
    ct = doc.contribution
    payload["contribution_table"] = (
        None
        if ct is None
        else {
            "rows": list(ct.rows),
            "columns": list(ct.columns),
            "cells": [[_rounded(ct.cells[(r, c)], p) for c in ct.columns] for r in ct.rows],
            "row_totals": [_rounded(ct.row_totals[r], p) for r in ct.rows],
            "column_totals": [_rounded(ct.column_totals[c], p) for c in ct.columns],
        }
    )
    return payload


def save_report(doc: ReportDocument) -> bytes:
    return _dumps(_report_payload(doc))


def load_report(data: bytes) -> ReportDocument:
    payload = _parse_json(data, "report")
    _check_header(payload, REPORT_FORMAT)
    gp_spec = payload.get("global_priorities")
    if not isinstance(gp_spec, dict):
        raise DocumentError("missing global_priorities object", "global_priorities")
    gp = GlobalPriorities(
        per_node={str(k): float(v) for k, v in gp_spec.get("per_node", {}).items()},
        alternatives={str(k): float(v) for k, v in gp_spec.get("alternatives", {}).items()},
        ranking=tuple((str(alt), float(score)) for alt, score in gp_spec.get("ranking", [])),
    )
    ct_spec = payload.get("contribution_table")
    contribution = None
    if ct_spec is not None:
        rows = tuple(str(r) for r in ct_spec["rows"])
        columns = tuple(str(c) for c in ct_spec["columns"])
        cells = {
            (r, c): float(ct_spec["cells"][ri][ci])
            for ri, r in enumerate(rows)
            for ci, c in enumerate(columns)
        }
        contribution = ContributionTable(
            rows,
            columns,
            cells,
            {r: float(ct_spec["row_totals"][ri]) for ri, r in enumerate(rows)},
            {c: float(ct_spec["column_totals"][ci]) for ci, c in enumerate(columns)},
        )
    consistency = {}
    for node_id, r in payload.get("consistency", {}).items():
        worst = r.get("worst_judgment")
        consistency[str(node_id)] = ConsistencyReport(
            lambda_max=float(r["lambda_max"]),
            ci=float(r["ci"]),
            ri=float(r["ri"]),
            cr=float(r["cr"]),
            consistent=bool(r["consistent"]),
            worst_judgment=None if worst is None else WorstJudgment(int(worst["i"]), int(worst["j"]), float(worst["deviation"])),
            threshold=float(r.get("threshold", 0.10)),
        )
    prov_spec = payload.get("provenance", {})
    provenance = Provenance(
        model_hash=str(prov_spec.get("model_hash", "")),
        tool_version=str(prov_spec.get("tool_version", "")),
        created_at=prov_spec.get("created_at"),
    )
    return ReportDocument(gp, contribution, consistency, provenance, payload.get("precision"))


def _format_number(value: float, precision: Optional[int]) -> str:
    return repr(value) if precision is None else f"{value:.{precision}f}"


def export_report(
    doc: ReportDocument,
    format: str = "structured",
    labels: Optional[Mapping[str, str]] = None,
) -> bytes:
    """Render results as bytes in one of three layouts.

    ``structured`` is the canonical JSON report (identical to
    :func:`save_report`). ``tabular`` is a CSV grid mirroring the
    published final-result layout: one row per criterion, one column per
    alternative, a TOTAL column and a TOTAL row. ``text`` is a aligned
    human-readable summary. Numbers use the document's precision; pass a
    3-decimal document to reproduce published tables digit for digit.
    """
    if format == "structured":
        return save_report(doc)
    if format not in ("tabular", "text"):
        raise DocumentError(f"unknown export format {format!r}; expected structured, tabular or text")
    ct = doc.contribution
    if ct is None:
        raise DocumentError(f"{format} export requires a three-level contribution table")
    label_map = dict(labels or {})

    def name(node_id: str) -> str:
        return label_map.get(node_id, node_id)

    p = doc.precision

    if format == "tabular":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow([""] + [name(c) for c in ct.columns] + ["TOTAL"])
        for r in ct.rows:
            writer.writerow(
                [name(r)]
                + [_format_number(ct.cells[(r, c)], p) for c in ct.columns]
                + [_format_number(ct.row_totals[r], p)]
            )
        writer.writerow(["TOTAL"] + [_format_number(ct.column_totals[c], p) for c in ct.columns] + [""])
        return out.getvalue().encode("utf-8")

    width = max(
        [len(name(r)) for r in ct.rows] + [len("TOTAL")]
    )
    col_width = max([len(name(c)) for c in ct.columns] + [12])
    lines = []
    header = " " * width + "".join(f"  {name(c):>{col_width}}" for c in ct.columns) + f"  {'TOTAL':>{col_width}}"
    lines.append(header)
    for r in ct.rows:
        row = f"{name(r):<{width}}"
        for c in ct.columns:
            row += f"  {_format_number(ct.cells[(r, c)], p):>{col_width}}"
        row += f"  {_format_number(ct.row_totals[r], p):>{col_width}}"
        lines.append(row)
    total_row = f"{'TOTAL':<{width}}"
    for c in ct.columns:
        total_row += f"  {_format_number(ct.column_totals[c], p):>{col_width}}"
    lines.append(total_row)
    lines.append("")
    lines.append("ranking:")
    for pos, (alt, score) in enumerate(doc.priorities.ranking, start=1):
        lines.append(f"  {pos}. {name(alt)}  {_format_number(score, p)}")
    if doc.consistency:
        lines.append("")
        lines.append("consistency:")
        for node_id, r in doc.consistency.items():
            verdict = "consistent" if r.consistent else "INCONSISTENT"
            lines.append(
                f"  {name(node_id)}: lambda_max={_format_number(r.lambda_max, p)} "
                f"CR={_format_number(r.cr, p)} ({verdict})"
            )
    return ("\n".join(lines) + "\n").encode("utf-8")
