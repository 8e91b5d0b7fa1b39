"""Request and response models for the HTTP API."""

from pydantic import BaseModel, Field

from ..core.types import Session


class CreateSessionRequest(BaseModel):
    goal: str


class StrokeRequest(BaseModel):
    points: list[tuple[float, float]] = Field(min_length=1)
    color: str = "#222222"
    width: float = 0.004
    element_tag: str | None = None


class HelperHintRequest(BaseModel):
    hint: str


class PlaceHelperRequest(BaseModel):
    x: float
    y: float


class StyleRequest(BaseModel):
    style: str
    seed: int = 0


class CriterionView(BaseModel):
    label: str
    min_count: int
    satisfied: bool


class TaskView(BaseModel):
    task_id: str
    index: int
    title: str
    prompt: str
    bloom: int
    bloom_name: str
    status: str
    criteria: list[CriterionView]


class QuestView(BaseModel):
    quest_id: str
    goal_text: str
    tasks: list[TaskView]


class CardView(BaseModel):
    dimension: str
    text: str
    seq: int
    color_code: str


class HelperView(BaseModel):
    helper_id: str
    label: str
    svg_body: str
    x: float
    y: float
    scale: float


class AnalysisView(BaseModel):
    elements: dict[str, int]
    stroke_count: int
    changed: bool
    source: str
    at_revision: int


class SessionView(BaseModel):
    session_id: str
    phase: str
    goal: str | None
    quest: QuestView | None
    gems: int
    canvas_revision: int
    stroke_count: int
    helpers: list[HelperView]
    feedback: list[CardView]
    style: str | None
    style_artifact: str | None
    event_seq: int


class CheckResponse(BaseModel):
    cards: list[CardView]
    analysis: AnalysisView | None
    session: SessionView


class CompleteResponse(BaseModel):
    cards: list[CardView]
    session: SessionView


class StyleResponse(BaseModel):
    artifact: str
    url: str
    session: SessionView


def card_view(card) -> CardView:
    return CardView(
        dimension=card.dimension.value, text=card.text, seq=card.seq, color_code=card.color_code
    )


def session_view(session: Session) -> SessionView:
    elements = session.last_analysis.elements if session.last_analysis else {}
    quest = None
    if session.quest is not None:
        quest = QuestView(
            quest_id=session.quest.quest_id,
            goal_text=session.quest.goal_text,
            tasks=[
                TaskView(
                    task_id=t.task_id,
                    index=t.index,
                    title=t.title,
                    prompt=t.prompt,
                    bloom=int(t.bloom),
                    bloom_name=t.bloom.label,
                    status=t.status.value,
                    criteria=[
                        CriterionView(
                            label=c.label,
                            min_count=c.min_count,
                            satisfied=elements.get(c.label, 0) >= c.min_count,
                        )
                        for c in t.criteria
                    ],
                )
                for t in session.quest.tasks
            ],
        )
    return SessionView(
        session_id=session.session_id,
        phase=session.phase.value,
        goal=session.goal,
        quest=quest,
        gems=session.gems.gem_count,
        canvas_revision=session.canvas.revision,
        stroke_count=len(session.canvas.strokes),
        helpers=[
            HelperView(
                helper_id=h.helper_id,
                label=h.label,
                svg_body=h.svg_body,
                x=h.position[0],
                y=h.position[1],
                scale=h.scale,
            )
            for h in session.canvas.helpers
        ],
        feedback=[card_view(c) for c in session.feedback_log],
        style=session.style.value if session.style else None,
        style_artifact=session.style_artifact,
        event_seq=session.event_seq,
    )


def analysis_view(session: Session) -> AnalysisView | None:
    analysis = session.last_analysis
    if analysis is None:
        return None
    return AnalysisView(
        elements=dict(sorted(analysis.elements.items())),
        stroke_count=analysis.stroke_count,
        changed=analysis.changed,
        source=analysis.source.value,
        at_revision=analysis.at_revision,
    )
