"""Session events and the effects a reduction can request.

Every event carries the session's next sequence number. Effects are value
objects describing work for other modules (quest generation, canvas
analysis, feedback delivery, style rendering); they never mutate state.
"""

from dataclasses import dataclass, field
from typing import Union

from ..canvas.model import HelperObject, Stroke
from .types import CanvasAnalysis, FeedbackCard, Quest, StyleKind


@dataclass(frozen=True)
class GoalSubmitted:
    seq: int
    text: str


@dataclass(frozen=True)
class QuestGenerated:
    seq: int
    quest: Quest


@dataclass(frozen=True)
class StrokeAdded:
    seq: int
    stroke: Stroke


@dataclass(frozen=True)
class HelperPlaced:
    seq: int
    helper: HelperObject


@dataclass(frozen=True)
class TickElapsed:
    seq: int
    tick: int  # monotone seconds counter from the session monitor


@dataclass(frozen=True)
class CheckRequested:
    seq: int


@dataclass(frozen=True)
class AnalysisArrived:
    seq: int
    analysis: CanvasAnalysis


@dataclass(frozen=True)
class TaskCompletionConfirmed:
    seq: int
    task_id: str


@dataclass(frozen=True)
class StyleRequested:
    seq: int
    style: StyleKind
    seed: int = 0


@dataclass(frozen=True)
class StyleApplied:
    seq: int
    artifact_ref: str


SessionEvent = Union[
    GoalSubmitted,
    QuestGenerated,
    StrokeAdded,
    HelperPlaced,
    TickElapsed,
    CheckRequested,
    AnalysisArrived,
    TaskCompletionConfirmed,
    StyleRequested,
    StyleApplied,
]

EVENT_TYPES: tuple[type, ...] = (
    GoalSubmitted,
    QuestGenerated,
    StrokeAdded,
    HelperPlaced,
    TickElapsed,
    CheckRequested,
    AnalysisArrived,
    TaskCompletionConfirmed,
    StyleRequested,
    StyleApplied,
)


# --- effects ------------------------------------------------------------------


@dataclass(frozen=True)
class GenerateQuest:
    goal: str


@dataclass(frozen=True)
class AnalyzeCanvas:
    revision: int
    manual: bool = False


@dataclass(frozen=True)
class ComposeFeedback:
    """Freshly composed cards ready for delivery to the learner."""

    cards: tuple[FeedbackCard, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class ApplyStyle:
    style: StyleKind
    seed: int


Effect = Union[GenerateQuest, AnalyzeCanvas, ComposeFeedback, ApplyStyle]
