"""HTTP service: FastAPI app over the session manager.

Endpoint -> reducer event mapping:

    POST /sessions                         GoalSubmitted (+ QuestGenerated)
    GET  /sessions/{id}                    view only
    POST /sessions/{id}/strokes            StrokeAdded
    POST /sessions/{id}/helpers            provider draft (no event)
    POST /sessions/{id}/helpers/{hid}/place  HelperPlaced
    POST /sessions/{id}/check              CheckRequested (+ AnalysisArrived)
    POST /sessions/{id}/tasks/{tid}/complete TaskCompletionConfirmed
    POST /sessions/{id}/style              StyleRequested (+ StyleApplied)
    GET  /sessions/{id}/canvas.png         raster export
    GET  /sessions/{id}/canvas             document JSON
    GET  /sessions/{id}/style/{artifact}   styled PNG
"""

import uuid
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from ..canvas.model import Stroke
from ..canvas.raster import export_raster
from ..canvas.serde import doc_to_jsonable
from ..core.types import StyleKind
from ..errors import (
    AlreadyCompleted,
    BadDimensions,
    EmptyGoal,
    IllegalTransition,
    InvalidHelper,
    InvalidStroke,
    MalformedDocument,
    NoSuchHelper,
    OutOfOrderEvent,
    PhaseViolation,
    ProviderFailure,
    SketchQuestError,
    TaskNotReady,
    UnknownHelper,
    UnknownSession,
    UnknownTask,
    UnrepairableDraft,
    UnsafeMarkup,
)
from ..providers.remote import build_provider
from .config import ServiceConfig
from .manager import SessionManager
from .schemas import (
    CheckResponse,
    CompleteResponse,
    CreateSessionRequest,
    HelperHintRequest,
    HelperView,
    PlaceHelperRequest,
    SessionView,
    StrokeRequest,
    StyleRequest,
    StyleResponse,
    analysis_view,
    card_view,
    session_view,
)

_STATUS_BY_ERROR: tuple[tuple[type, int], ...] = (
    (UnknownSession, 404),
    (UnknownTask, 404),
    (UnknownHelper, 404),
    (NoSuchHelper, 404),
    (IllegalTransition, 409),
    (PhaseViolation, 409),
    (TaskNotReady, 409),
    (AlreadyCompleted, 409),
    (OutOfOrderEvent, 409),
    (EmptyGoal, 422),
    (InvalidStroke, 422),
    (InvalidHelper, 422),
    (UnsafeMarkup, 422),
    (BadDimensions, 422),
    (MalformedDocument, 422),
    (UnrepairableDraft, 422),
    (ProviderFailure, 502),
)


def _status_for(exc: SketchQuestError) -> int:
    for etype, status in _STATUS_BY_ERROR:
        if isinstance(exc, etype):
            return status
    return 500


def create_app(config: ServiceConfig | None = None, provider=None, manager: SessionManager | None = None) -> FastAPI:
    config = config or ServiceConfig()
    config.validate()
    if manager is None:
        provider = provider or build_provider(config.provider)
        manager = SessionManager(config, provider)
        manager.load_all()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        if config.enable_monitor:
            manager.start_monitor()
        yield
        manager.stop_monitor()

    app = FastAPI(title="sketchquest", version="0.1.0", lifespan=lifespan)
    app.state.manager = manager
    app.state.config = config
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(SketchQuestError)
    async def domain_error_handler(request: Request, exc: SketchQuestError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    def _session_or_404(session_id: str):
        try:
            return manager.get_session(session_id)
        except KeyError:
            raise UnknownSession(f"no session {session_id!r}")

    @app.post("/sessions", response_model=SessionView, status_code=201)
    def create_session(body: CreateSessionRequest):
        session = manager.create_session(body.goal)
        return session_view(session)

    @app.get("/sessions/{session_id}", response_model=SessionView)
    def get_session(session_id: str):
        return session_view(_session_or_404(session_id))

    @app.post("/sessions/{session_id}/strokes", response_model=SessionView)
    def add_stroke(session_id: str, body: StrokeRequest):
        _session_or_404(session_id)
        stroke = Stroke(
            stroke_id=uuid.uuid4().hex[:12],
            points=tuple(body.points),
            color=body.color,
            width=body.width,
            element_tag=body.element_tag,
        )
        session = manager.add_stroke(session_id, stroke)
        return session_view(session)

    @app.post("/sessions/{session_id}/helpers", response_model=HelperView)
    def request_helper(session_id: str, body: HelperHintRequest):
        _session_or_404(session_id)
        helper = manager.request_helper(session_id, body.hint)
        return HelperView(
            helper_id=helper.helper_id,
            label=helper.label,
            svg_body=helper.svg_body,
            x=helper.position[0],
            y=helper.position[1],
            scale=helper.scale,
        )

    @app.post("/sessions/{session_id}/helpers/{helper_id}/place", response_model=SessionView)
    def place_helper(session_id: str, helper_id: str, body: PlaceHelperRequest):
        _session_or_404(session_id)
        session = manager.place_helper(session_id, helper_id, (body.x, body.y))
        return session_view(session)

    @app.post("/sessions/{session_id}/check", response_model=CheckResponse)
    def check(session_id: str):
        _session_or_404(session_id)
        session, cards = manager.check(session_id)
        return CheckResponse(
            cards=[card_view(c) for c in cards],
            analysis=analysis_view(session),
            session=session_view(session),
        )

    @app.post("/sessions/{session_id}/tasks/{task_id}/complete", response_model=CompleteResponse)
    def complete_task(session_id: str, task_id: str):
        _session_or_404(session_id)
        session, cards = manager.complete_task(session_id, task_id)
        return CompleteResponse(
            cards=[card_view(c) for c in cards], session=session_view(session)
        )

    @app.post("/sessions/{session_id}/style", response_model=StyleResponse)
    def apply_style(session_id: str, body: StyleRequest):
        _session_or_404(session_id)
        try:
            style = StyleKind(body.style)
        except ValueError:
            raise MalformedDocument(f"unknown style {body.style!r}")
        session, artifact = manager.apply_style(session_id, style, body.seed)
        return StyleResponse(
            artifact=artifact,
            url=f"/sessions/{session_id}/style/{artifact}",
            session=session_view(session),
        )

    @app.get("/sessions/{session_id}/canvas.png")
    def canvas_png(
        session_id: str,
        width: int = Query(default=768, ge=1),
        height: int = Query(default=768, ge=1),
    ):
        session = _session_or_404(session_id)
        png = export_raster(session.canvas, width, height)
        return Response(content=png, media_type="image/png")

    @app.get("/sessions/{session_id}/canvas")
    def canvas_doc(session_id: str):
        session = _session_or_404(session_id)
        return doc_to_jsonable(session.canvas)

    @app.get("/sessions/{session_id}/style/{artifact}")
    def styled_image(session_id: str, artifact: str):
        _session_or_404(session_id)
        png = manager.get_artifact(session_id, artifact)
        if png is None:
            raise UnknownHelper(f"no styled artifact {artifact!r}")
        return Response(content=png, media_type="image/png")

    # repo root /frontend/dist, when the browser UI has been built
    frontend_dist = Path(__file__).resolve().parents[3] / "frontend" / "dist"
    if frontend_dist.is_dir():
        app.mount("/", StaticFiles(directory=frontend_dist, html=True), name="ui")

    return app
