"""HTTP facade over the model library.

The service owns a read-only registry of combined models (loaded from the
bundled corpus by default) and a set of in-memory what-if sessions. Every
mutation names the session revision it was computed against; a mismatch
is answered with 409 and the current revision so clients can refetch and
retry. Errors carry a JSON body ``{"error": <code>, "message": <prose>}``.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware

from .. import __version__
from ..errors import UnknownStepError
from ..model import CombinedModel
from ..propagation import (
    Session,
    check_sequence,
    create_session,
    reset_session,
    root_impact,
    toggle_step,
)
from ..corpus import corpus_root
from ..xmlio import read_model
from .schemas import (
    ModelDetail,
    ModelSummary,
    ResetRequest,
    SessionCreate,
    SessionView,
    ToggleRequest,
    ToggleResponse,
    delta_out,
    model_detail,
    model_summary,
    root_impact_out,
    warnings_out,
)


@dataclass
class _SessionRecord:
    id: str
    model_id: str
    session: Session
    revision: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)


def load_registry(corpus_dir: Path | str | None = None) -> dict[str, CombinedModel]:
    """Combined models from the corpus, keyed by file stem."""
    registry: dict[str, CombinedModel] = {}
    for path in sorted(corpus_root(corpus_dir).glob("*/*.oiirp.xml")):
        model_id = path.name.removesuffix(".oiirp.xml")
        registry[model_id] = read_model(path.read_bytes()).payload
    return registry


def _error(status: int, code: str, message: str, **extra) -> HTTPException:
    return HTTPException(status, {"error": code, "message": message, **extra})


def create_app(
    models: dict[str, CombinedModel] | None = None,
    corpus_dir: Path | str | None = None,
) -> FastAPI:
    registry = dict(models) if models is not None else load_registry(corpus_dir)
    sessions: dict[str, _SessionRecord] = {}
    app = FastAPI(title="secmodel service", version=__version__)
    # analyst consoles are typically served from another local origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def _session(session_id: str) -> _SessionRecord:
        record = sessions.get(session_id)
        if record is None:
            raise _error(404, "unknown-session", f"no session {session_id!r}")
        return record

    def _view(record: _SessionRecord) -> SessionView:
        current = record.session
        return SessionView(
            sessionId=record.id,
            modelId=record.model_id,
            mode=current.mode.value,
            revision=record.revision,
            activeSteps=list(current.activation),
            states=dict(current.states),
            warnings=warnings_out(check_sequence(current)),
            rootImpact=root_impact_out(root_impact(current)),
        )

    @app.get("/models", response_model=list[ModelSummary])
    def list_models() -> list[ModelSummary]:
        return [model_summary(mid, model) for mid, model in sorted(registry.items())]

    @app.get("/models/{model_id}", response_model=ModelDetail)
    def get_model(model_id: str) -> ModelDetail:
        model = registry.get(model_id)
        if model is None:
            raise _error(404, "unknown-model", f"no model {model_id!r}")
        return model_detail(model_id, model)

    @app.post("/sessions", response_model=SessionView, status_code=201)
    def create(request: SessionCreate) -> SessionView:
        model = registry.get(request.modelId)
        if model is None:
            raise _error(404, "unknown-model", f"no model {request.modelId!r}")
        record = _SessionRecord(
            id=uuid.uuid4().hex,
            model_id=request.modelId,
            session=create_session(model, request.mode),
        )
        sessions[record.id] = record
        return _view(record)

    @app.get("/sessions/{session_id}", response_model=SessionView)
    def get_session(session_id: str) -> SessionView:
        return _view(_session(session_id))

    @app.post("/sessions/{session_id}/toggle", response_model=ToggleResponse)
    def toggle(session_id: str, request: ToggleRequest) -> ToggleResponse:
        record = _session(session_id)
        with record.lock:
            if request.revision != record.revision:
                raise _error(
                    409,
                    "revision-conflict",
                    f"session is at revision {record.revision}, "
                    f"request was computed against {request.revision}",
                    revision=record.revision,
                )
            try:
                new_session, delta = toggle_step(
                    record.session, request.stepId, request.active
                )
            except UnknownStepError as exc:
                raise _error(422, exc.code, str(exc)) from exc
            record.session = new_session
            record.revision += 1
            return ToggleResponse(
                sessionId=record.id,
                revision=record.revision,
                delta=delta_out(delta),
                warnings=warnings_out(check_sequence(new_session)),
                rootImpact=root_impact_out(root_impact(new_session)),
            )

    @app.post("/sessions/{session_id}/reset", response_model=SessionView)
    def reset(session_id: str, request: ResetRequest) -> SessionView:
        record = _session(session_id)
        with record.lock:
            if request.revision is not None and request.revision != record.revision:
                raise _error(
                    409,
                    "revision-conflict",
                    f"session is at revision {record.revision}, "
                    f"request was computed against {request.revision}",
                    revision=record.revision,
                )
            record.session, _ = reset_session(record.session)
            record.revision += 1
            return _view(record)

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete(session_id: str) -> Response:
        _session(session_id)
        del sessions[session_id]
        return Response(status_code=204)

    return app
