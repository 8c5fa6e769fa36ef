"""Command-line entry point.

Subcommands: ``new`` scaffolds a model document, ``ask`` runs the
interactive elicitation loop, ``compute`` derives and synthesizes a
report, ``sensitivity`` answers what-if queries, ``validate-paper``
checks the built-in e-banking model against its published results, and
``serve`` starts the HTTP service. Every load/save accepts ``-`` for
stdin/stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import __version__
from .banking_case import banking_model_with_weights, validate_against_reference
from .documents import (
    ModelDocument,
    export_report,
    load_model_document,
    load_session,
    model_hash,
    save_model,
    save_session,
)
from .elicitation import (
    SCALE_VALUES,
    Descriptor,
    ElicitationSession,
    question_text,
    value_to_verbal,
)
from .errors import AhpError
from .hierarchy import Node, NodeKind, attach_local_priorities, build_hierarchy, sensitivity
from .matrix import derive_priorities_eigen
from .workflow import compute_results, session_results

VERBAL_MENU = [
    (Descriptor.EQUAL, "equally important"),
    (Descriptor.INTERMEDIATE_2, "between equal and weak"),
    (Descriptor.WEAK, "weakly more important"),
    (Descriptor.INTERMEDIATE_4, "between weak and strong"),
    (Descriptor.STRONG, "strongly more important"),
    (Descriptor.INTERMEDIATE_6, "between strong and very strong"),
    (Descriptor.VERY_STRONG, "very strongly more important"),
    (Descriptor.INTERMEDIATE_8, "between very strong and absolute"),
    (Descriptor.ABSOLUTE, "absolutely more important"),
]


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write_bytes(path: Optional[str], data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _slug(label: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in label.strip().lower()).strip("_") or "node"


def _load_model_arg(args) -> ModelDocument:
    if getattr(args, "bundled", None):
        from .banking_case import bundled_model_document

        return load_model_document(bundled_model_document())
    return load_model_document(_read_bytes(args.model))


def _precision(args) -> Optional[int]:
    return None if args.full_precision else args.decimals


def _labels(doc: ModelDocument) -> dict[str, str]:
    return {n.id: n.label for n in doc.hierarchy.nodes.values()}


def cmd_new(args) -> int:
    if len(args.criteria) < 2:
        raise AhpError("at least two criteria are required")
    if len(args.alternatives) < 2:
        raise AhpError("at least two alternatives are required")
    alt_ids = [_slug(a) for a in args.alternatives]
    nodes = [Node(_slug(args.goal), args.goal, NodeKind.GOAL, tuple(_slug(c) for c in args.criteria))]
    for label in args.criteria:
        nodes.append(Node(_slug(label), label, NodeKind.CRITERION, tuple(alt_ids)))
    for node_id, label in zip(alt_ids, args.alternatives):
        nodes.append(Node(node_id, label, NodeKind.ALTERNATIVE))
    _write_bytes(args.output, save_model(build_hierarchy(nodes)))
    return 0


def cmd_compute(args) -> int:
    doc = _load_model_arg(args)
    report = compute_results(doc, tol=args.tolerance, max_iter=args.max_iter, precision=_precision(args))
    _write_bytes(args.output, export_report(report, format=args.format, labels=_labels(doc)))
    return 0


def cmd_sensitivity(args) -> int:
    doc = _load_model_arg(args)
    h = doc.hierarchy
    for node_id in h.internal_ids:
        matrix = h.judgment_matrices.get(node_id)
        if matrix is not None:
            h = attach_local_priorities(
                h, node_id, derive_priorities_eigen(matrix, tol=args.tolerance, max_iter=args.max_iter)
            )
    result = sensitivity(h, args.criterion, args.weight)
    payload = {
        "criterion": result.criterion,
        "old_weight": result.old_weight,
        "new_weight": result.new_weight,
        "alternatives": result.priorities.alternatives,
        "ranking": [[alt, score] for alt, score in result.priorities.ranking],
        "rank_changes": [
            {"alternative": rc.alternative, "before": rc.before, "after": rc.after}
            for rc in result.rank_changes
        ],
    }
    if args.format == "structured":
        out = (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode()
    else:
        labels = _labels(doc)
        lines = [
            f"criterion {labels.get(result.criterion, result.criterion)}: "
            f"weight {result.old_weight:.6f} -> {result.new_weight:.6f}",
            "scores:",
        ]
        for alt, score in result.priorities.ranking:
            lines.append(f"  {labels.get(alt, alt)}  {score:.6f}")
        if result.rank_changes:
            lines.append("rank changes:")
            for rc in result.rank_changes:
                lines.append(f"  {labels.get(rc.alternative, rc.alternative)}: {rc.before} -> {rc.after}")
        else:
            lines.append("rank changes: none")
        out = ("\n".join(lines) + "\n").encode()
    _write_bytes(args.output, out)
    return 0


def cmd_validate_paper(args) -> int:
    report = validate_against_reference(banking_model_with_weights())
    print(report.describe())
    return 0 if report.passed else 1


def _parse_answer(text: str) -> Optional[float]:
    """One elicitation answer: '5' is a scale value, '/5' its reciprocal,
    'p/q' a fraction, and 's' skips the pair."""
    text = text.strip().lower()
    if text in ("s", "skip"):
        return None
    if text.startswith("/"):
        return 1.0 / float(text[1:])
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def cmd_ask(args) -> int:
    doc = _load_model_arg(args)
    h = doc.hierarchy
    if args.session:
        session = load_session(_read_bytes(args.session), doc)
    else:
        mode = "continuous" if args.continuous else "discrete"
        session = ElicitationSession(h, mode=mode, model_hash=model_hash(doc))

    labels = _labels(doc)
    print(f"model: {labels[h.root]}  ({len(session.pending)} comparisons pending, mode {session.mode})")
    print("answers: 1..9 from the scale below, /k for the reverse direction, s to skip")
    for d, text in VERBAL_MENU:
        print(f"  {SCALE_VALUES[d]}  {text}")

    for node_id in h.internal_ids:
        node_pairs = [(nid, pair) for nid, pair in session.pending if nid == node_id]
        if not node_pairs:
            continue
        print(f"\n-- {labels[node_id]} --")
        for nid, pair in node_pairs:
            _ask_pair(session, nid, pair)
        if session.node_complete(node_id):
            _review_node(session, node_id, labels)

    status = session.status()
    print(f"\nprogress: {status.answered}/{status.total} ({status.percent:.0f}%)")
    if args.save_session:
        _write_bytes(args.save_session, save_session(session))
        print(f"session saved to {args.save_session}")
    if status.complete:
        report = session_results(session, doc, tol=args.tolerance, max_iter=args.max_iter,
                                 precision=_precision(args))
        _write_bytes(args.output, export_report(report, format=args.format, labels=labels))
    else:
        print("session incomplete; re-run with --session to continue")
    return 0


def _ask_pair(session, node_id, pair) -> None:
    prompt = question_text(session.hierarchy, node_id, pair)
    while True:
        try:
            raw = input(f"{prompt} ")
        except EOFError:
            return
        try:
            value = _parse_answer(raw)
        except (ValueError, ZeroDivisionError):
            print("  could not parse that answer; enter 1..9, /k, p/q or s")
            continue
        if value is None:
            return
        try:
            session.record_judgment(node_id, pair, value)
            return
        except AhpError as exc:
            print(f"  {exc}")


def _review_node(session, node_id, labels) -> None:
    """Show live consistency for a finished node and offer the worst
    judgment for revision until the matrix is acceptable or declined."""
    while True:
        status = session.status()
        report = status.per_node[node_id].consistency
        verdict = "consistent" if report.consistent else "INCONSISTENT"
        print(f"  consistency of {labels[node_id]}: CR = {report.cr:.3f} ({verdict})")
        if report.consistent or report.worst_judgment is None:
            return
        children = session.hierarchy.children(node_id)
        wj = report.worst_judgment
        pair = (wj.i, wj.j)
        current = session.answered[(node_id, pair)]
        verbal = value_to_verbal(current)
        print(
            f"  most deviant judgment: {labels[children[wj.i]]} vs {labels[children[wj.j]]} "
            f"(currently {current:g}, read as {verbal.descriptor.value})"
        )
        try:
            again = input("  revise it? [y/N] ").strip().lower()
        except EOFError:
            return
        if again != "y":
            return
        _ask_pair(session, node_id, pair)


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    host = args.host or os.environ.get("AHPKIT_HOST", "127.0.0.1")
    port = args.port if args.port is not None else int(os.environ.get("AHPKIT_PORT", "8000"))
    uvicorn.run(create_app(), host=host, port=port)
    return 0


def _add_model_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("model", nargs="?", help="model document path, or - for stdin")
    group.add_argument("--bundled", choices=["banking"], help="use a bundled model instead of a file")


def _add_solver_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tolerance", type=float, default=1e-10, help="eigen solver stop tolerance")
    parser.add_argument("--max-iter", type=int, default=1000, help="eigen solver iteration cap")


def _add_output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    parser.add_argument("--format", choices=["structured", "tabular", "text"], default="text")
    parser.add_argument("--decimals", type=int, default=6, help="decimal places in reports")
    parser.add_argument("--full-precision", action="store_true", help="emit full float precision")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ahpkit",
        description="Analytic Hierarchy Process decision support",
    )
    parser.add_argument("--version", action="version", version=f"ahpkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_new = sub.add_parser("new", help="scaffold a model document")
    p_new.add_argument("--goal", required=True, help="goal label")
    p_new.add_argument("--criteria", nargs="+", required=True, metavar="LABEL")
    p_new.add_argument("--alternatives", nargs="+", required=True, metavar="LABEL")
    p_new.add_argument("-o", "--output", default=None)
    p_new.set_defaults(func=cmd_new)

    p_ask = sub.add_parser("ask", help="interactive pairwise elicitation")
    _add_model_source(p_ask)
    p_ask.add_argument("--session", default=None, help="resume a saved session")
    p_ask.add_argument("--save-session", default=None, help="write the session document here")
    p_ask.add_argument("--continuous", action="store_true", help="accept any positive ratio, not just the scale")
    _add_solver_options(p_ask)
    _add_output_options(p_ask)
    p_ask.set_defaults(func=cmd_ask)

    p_compute = sub.add_parser("compute", help="derive priorities, synthesize and report")
    _add_model_source(p_compute)
    _add_solver_options(p_compute)
    _add_output_options(p_compute)
    p_compute.set_defaults(func=cmd_compute)

    p_sens = sub.add_parser("sensitivity", help="what-if on one top-level criterion weight")
    _add_model_source(p_sens)
    p_sens.add_argument("--criterion", required=True, help="criterion node id")
    p_sens.add_argument("--weight", required=True, type=float, help="new weight in [0, 1]")
    _add_solver_options(p_sens)
    p_sens.add_argument("-o", "--output", default=None)
    p_sens.add_argument("--format", choices=["structured", "text"], default="text")
    p_sens.set_defaults(func=cmd_sensitivity)

    p_val = sub.add_parser("validate-paper", help="check the bundled e-banking model against its published results")
    p_val.set_defaults(func=cmd_validate_paper)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default=None, help="bind address (default $AHPKIT_HOST or 127.0.0.1)")
    p_serve.add_argument("--port", type=int, default=None, help="port (default $AHPKIT_PORT or 8000)")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except AhpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
