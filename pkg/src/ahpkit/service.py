"""HTTP service over the same pipeline the CLI uses.

Models are content-addressed: uploading one returns the hash of its
canonical serialization and sessions reference models by that hash.
Judgment submission and session creation are the only mutating
endpoints; everything else is a pure read, and results are byte-identical
to the CLI's structured export for the same model. Endpoint paths and
payload schemas are documented in docs/formats.md.
"""

from __future__ import annotations

import threading
from typing import Optional, Union

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__
from .banking_case import bundled_model_document
from .documents import (
    ModelDocument,
    export_report,
    load_model_document,
    model_hash,
    parse_ratio,
    save_model,
    save_session,
)
from .elicitation import (
    Descriptor,
    Direction,
    ElicitationSession,
    SessionStatus,
    VerbalJudgment,
    question_text,
    verbal_to_value,
)
from .errors import AhpError, DocumentError, ElicitationError
from .hierarchy import attach_local_priorities, sensitivity
from .matrix import derive_priorities_eigen
from .workflow import compute_results, session_results


class _SessionEntry:
    def __init__(self, session: ElicitationSession):
        self.session = session
        self.lock = threading.Lock()  # single writer per session


class SessionStore:
    """In-memory registry of models and elicitation sessions.

    Session ids are unguessable (uuid4), operations on one session are
    serialized through its lock, and models are immutable once uploaded.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._models: dict[str, ModelDocument] = {}
        self._sessions: dict[str, _SessionEntry] = {}

    def add_model(self, doc: ModelDocument) -> str:
        digest = model_hash(doc)
        with self._lock:
            self._models.setdefault(digest, doc)
        return digest

    def get_model(self, digest: str) -> ModelDocument:
        with self._lock:
            doc = self._models.get(digest)
        if doc is None:
            raise HTTPException(status_code=404, detail=f"unknown model {digest!r}")
        return doc

    def create_session(self, digest: str, mode: str) -> ElicitationSession:
        doc = self.get_model(digest)
        session = ElicitationSession(doc.hierarchy, mode=mode, model_hash=digest)
        with self._lock:
            self._sessions[session.session_id] = _SessionEntry(session)
        return session

    def entry(self, session_id: str) -> _SessionEntry:
        with self._lock:
            entry = self._sessions.get(session_id)
        if entry is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return entry


class CreateSessionBody(BaseModel):
    model_hash: str
    mode: str = "discrete"


class JudgmentBody(BaseModel):
    node: str
    i: int
    j: int
    value: Optional[Union[float, str]] = None
    descriptor: Optional[str] = None
    direction: str = Direction.FIRST_OVER_SECOND.value


def _status_payload(status: SessionStatus) -> dict:
    return {
        "answered": status.answered,
        "total": status.total,
        "percent": status.percent,
        "complete": status.complete,
        "per_node": {
            node_id: {
                "answered": p.answered,
                "total": p.total,
                "consistency": None
                if p.consistency is None
                else {
                    "lambda_max": p.consistency.lambda_max,
                    "ci": p.consistency.ci,
                    "ri": p.consistency.ri,
                    "cr": p.consistency.cr,
                    "consistent": p.consistency.consistent,
                    "threshold": p.consistency.threshold,
                    "worst_judgment": None
                    if p.consistency.worst_judgment is None
                    else {
                        "i": p.consistency.worst_judgment.i,
                        "j": p.consistency.worst_judgment.j,
                        "deviation": p.consistency.worst_judgment.deviation,
                    },
                },
            }
            for node_id, p in status.per_node.items()
        },
    }


def _precision_arg(decimals: int, full_precision: bool) -> Optional[int]:
    return None if full_precision else decimals


_MEDIA_TYPES = {"structured": "application/json", "tabular": "text/csv", "text": "text/plain"}


def create_app(store: Optional[SessionStore] = None) -> FastAPI:
    app = FastAPI(title="ahpkit", version=__version__)
    store = store or SessionStore()
    app.state.store = store

    banking_hash = store.add_model(load_model_document(bundled_model_document()))
    app.state.banking_hash = banking_hash

    @app.exception_handler(AhpError)
    def _domain_error(request, exc):
        status = 422 if isinstance(exc, (ElicitationError, DocumentError)) else 409
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.post("/models", status_code=201)
    async def create_model(request: Request):
        doc = load_model_document(await request.body())
        digest = store.add_model(doc)
        return {"model_hash": digest}

    @app.get("/models/banking")
    def get_banking_model():
        doc = store.get_model(app.state.banking_hash)
        return Response(content=save_model(doc), media_type="application/json")

    @app.get("/models/{digest}")
    def get_model(digest: str):
        doc = store.get_model(digest)
        return Response(content=save_model(doc), media_type="application/json")

    @app.get("/models/{digest}/results")
    def model_results(
        digest: str,
        format: str = "structured",
        decimals: int = 6,
        full_precision: bool = False,
        tolerance: float = 1e-10,
        max_iter: int = 1000,
    ):
        doc = store.get_model(digest)
        report = compute_results(
            doc, tol=tolerance, max_iter=max_iter, precision=_precision_arg(decimals, full_precision)
        )
        labels = {n.id: n.label for n in doc.hierarchy.nodes.values()}
        return Response(content=export_report(report, format=format, labels=labels),
                        media_type=_MEDIA_TYPES.get(format, "application/json"))

    @app.get("/models/{digest}/sensitivity")
    def model_sensitivity(
        digest: str,
        criterion: str,
        weight: float,
        tolerance: float = 1e-10,
        max_iter: int = 1000,
    ):
        doc = store.get_model(digest)
        h = doc.hierarchy
        for node_id in h.internal_ids:
            matrix = h.judgment_matrices.get(node_id)
            if matrix is not None:
                h = attach_local_priorities(h, node_id, derive_priorities_eigen(matrix, tolerance, max_iter))
        result = sensitivity(h, criterion, weight)
        return {
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

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        session = store.create_session(body.model_hash, body.mode)
        return Response(content=save_session(session), media_type="application/json", status_code=201)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        entry = store.entry(session_id)
        with entry.lock:
            return Response(content=save_session(entry.session), media_type="application/json")

    @app.get("/sessions/{session_id}/next")
    def next_comparison(session_id: str):
        entry = store.entry(session_id)
        with entry.lock:
            session = entry.session
            nxt = session.next_pending()
            if nxt is None:
                return {"done": True, "remaining": 0}
            node_id, (i, j) = nxt
            children = session.hierarchy.children(node_id)
            return {
                "done": False,
                "node": node_id,
                "i": i,
                "j": j,
                "first": children[i],
                "second": children[j],
                "question": question_text(session.hierarchy, node_id, (i, j)),
                "remaining": len(session.pending),
            }

    @app.post("/sessions/{session_id}/judgments")
    def submit_judgment(session_id: str, body: JudgmentBody):
        entry = store.entry(session_id)
        if body.descriptor is not None:
            try:
                judgment = VerbalJudgment(Descriptor(body.descriptor), Direction(body.direction))
            except ValueError:
                raise HTTPException(
                    status_code=422,
                    detail=f"descriptor must be one of {[d.value for d in Descriptor]} "
                    f"and direction one of {[d.value for d in Direction]}",
                ) from None
            value = verbal_to_value(judgment)
        elif body.value is not None:
            value = parse_ratio(body.value, "value")
        else:
            raise HTTPException(status_code=422, detail="provide either a value or a verbal descriptor")
        with entry.lock:
            session = entry.session
            session.record_judgment(body.node, (body.i, body.j), value)
            recorded = session.answered[(body.node, tuple(sorted((body.i, body.j))))]
            return {
                "node": body.node,
                "i": min(body.i, body.j),
                "j": max(body.i, body.j),
                "value": recorded,
                "reciprocal": 1.0 / recorded,
                "remaining": len(session.pending),
            }

    @app.get("/sessions/{session_id}/status")
    def session_status(session_id: str, tolerance: float = 1e-10, max_iter: int = 1000):
        entry = store.entry(session_id)
        with entry.lock:
            return _status_payload(entry.session.status(tol=tolerance, max_iter=max_iter))

    @app.get("/sessions/{session_id}/results")
    def session_results_endpoint(
        session_id: str,
        format: str = "structured",
        decimals: int = 6,
        full_precision: bool = False,
        tolerance: float = 1e-10,
        max_iter: int = 1000,
    ):
        entry = store.entry(session_id)
        with entry.lock:
            session = entry.session
            if not session.complete:
                raise HTTPException(
                    status_code=409,
                    detail=f"session has {len(session.pending)} unanswered comparisons",
                )
            doc = store.get_model(session.model_hash)
            report = session_results(
                session, doc, tol=tolerance, max_iter=max_iter,
                precision=_precision_arg(decimals, full_precision),
            )
            labels = {n.id: n.label for n in session.hierarchy.nodes.values()}
            return Response(content=export_report(report, format=format, labels=labels),
                            media_type=_MEDIA_TYPES.get(format, "application/json"))

    return app
