"""Pure domain types for a drawing-quest learning session.

Everything here is an immutable value; state transitions live in the
reducer and always return new instances.
"""

from dataclasses import dataclass, field
from enum import Enum, IntEnum


class BloomLevel(IntEnum):
    """Cognitive complexity ladder, ordered 1 (recall) to 6 (synthesis)."""

    REMEMBER = 1
    UNDERSTAND = 2
    APPLY = 3
    ANALYZE = 4
    EVALUATE = 5
    CREATE = 6

    @property
    def label(self) -> str:
        return self.name.capitalize()


class TaskStatus(str, Enum):
    LOCKED = "locked"
    ACTIVE = "active"
    READY_TO_COMPLETE = "ready_to_complete"
    COMPLETED = "completed"


@dataclass(frozen=True)
class RequiredElement:
    """A labeled element the canvas must show before a task is completable."""

    label: str
    min_count: int = 1

    def __post_init__(self):
        if not self.label or self.label != self.label.lower():
            raise ValueError(f"criterion label {self.label!r} must be non-empty lowercase")
        if self.min_count < 1:
            raise ValueError("min_count must be >= 1")


@dataclass(frozen=True)
class QuestTask:
    task_id: str
    index: int
    title: str
    prompt: str
    bloom: BloomLevel
    criteria: tuple[RequiredElement, ...]
    status: TaskStatus = TaskStatus.LOCKED

    def __post_init__(self):
        labels = [c.label for c in self.criteria]
        if len(labels) != len(set(labels)):
            raise ValueError(f"duplicate criteria labels in task {self.task_id!r}")


@dataclass(frozen=True)
class Quest:
    """An ordered ladder of drawing tasks decomposing one learning goal.

    Invariants (checked on construction): 3..7 tasks, contiguous indices,
    non-decreasing Bloom ordinals, first ordinal <= 2, last ordinal >= 4.
    """

    quest_id: str
    goal_text: str
    tasks: tuple[QuestTask, ...]

    def __post_init__(self):
        if not self.goal_text.strip():
            raise ValueError("goal_text must be non-empty")
        n = len(self.tasks)
        if not (3 <= n <= 7):
            raise ValueError(f"quest must have 3..7 tasks, got {n}")
        for i, task in enumerate(self.tasks):
            if task.index != i:
                raise ValueError(f"task indices must be contiguous from 0, got {task.index} at {i}")
        ordinals = [int(t.bloom) for t in self.tasks]
        if any(ordinals[i] > ordinals[i + 1] for i in range(n - 1)):
            raise ValueError("Bloom ordinals must be non-decreasing")
        if ordinals[0] > 2:
            raise ValueError("first task Bloom ordinal must be <= 2")
        if ordinals[-1] < 4:
            raise ValueError("last task Bloom ordinal must be >= 4")

    def task_by_id(self, task_id: str) -> QuestTask | None:
        for task in self.tasks:
            if task.task_id == task_id:
                return task
        return None

    def active_task(self) -> QuestTask | None:
        for task in self.tasks:
            if task.status in (TaskStatus.ACTIVE, TaskStatus.READY_TO_COMPLETE):
                return task
        return None

    def completed_count(self) -> int:
        return sum(1 for t in self.tasks if t.status == TaskStatus.COMPLETED)

    def all_completed(self) -> bool:
        return all(t.status == TaskStatus.COMPLETED for t in self.tasks)


class FeedbackDimension(str, Enum):
    MOTIVATIONAL = "motivational"
    COGNITIVE = "cognitive"
    METACOGNITIVE = "metacognitive"
    SELF_RELEVANT = "self_relevant"


# Fixed card colors, keyed by dimension.
DIMENSION_COLORS: dict[FeedbackDimension, str] = {
    FeedbackDimension.MOTIVATIONAL: "#f59e0b",
    FeedbackDimension.COGNITIVE: "#3b82f6",
    FeedbackDimension.METACOGNITIVE: "#8b5cf6",
    FeedbackDimension.SELF_RELEVANT: "#10b981",
}


@dataclass(frozen=True)
class FeedbackCard:
    dimension: FeedbackDimension
    text: str
    seq: int
    color_code: str

    def __post_init__(self):
        if self.seq < 1:
            raise ValueError("card seq must be >= 1")
        if self.color_code != DIMENSION_COLORS[self.dimension]:
            raise ValueError(f"color {self.color_code!r} does not match {self.dimension.value}")


@dataclass(frozen=True)
class GemLedger:
    """Append-only reward ledger; one gem per completed task."""

    gem_count: int = 0
    awards: tuple[tuple[str, int], ...] = ()  # (task_id, event seq)

    def award(self, task_id: str, seq: int) -> "GemLedger":
        if any(t == task_id for t, _ in self.awards):
            raise ValueError(f"task {task_id!r} already awarded")
        return GemLedger(self.gem_count + 1, self.awards + ((task_id, seq),))


class SessionPhase(str, Enum):
    GOAL_ENTRY = "goal_entry"
    QUEST_ACTIVE = "quest_active"
    ALL_COMPLETE = "all_complete"
    STYLE_APPLIED = "style_applied"


PHASE_ORDER = {
    SessionPhase.GOAL_ENTRY: 0,
    SessionPhase.QUEST_ACTIVE: 1,
    SessionPhase.ALL_COMPLETE: 2,
    SessionPhase.STYLE_APPLIED: 3,
}


class StyleKind(str, Enum):
    OIL_PAINTING = "oil_painting"
    WATERCOLOR = "watercolor"
    ANIME = "anime"


class AnalysisSource(str, Enum):
    OFFLINE = "offline"
    REMOTE = "remote"


@dataclass(frozen=True)
class CanvasAnalysis:
    """Snapshot of what a provider saw on the canvas.

    ``draft_texts`` optionally carries provider-drafted feedback sentences,
    keyed by dimension value; composition validates them and falls back to
    templates when they break framing rules.
    """

    elements: dict[str, int]
    stroke_count: int
    changed: bool
    source: AnalysisSource
    at_revision: int
    draft_texts: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.stroke_count < 0:
            raise ValueError("stroke_count must be >= 0")
        if self.at_revision < 0:
            raise ValueError("at_revision must be >= 0")
        for label, count in self.elements.items():
            if count < 0:
                raise ValueError(f"negative count for {label!r}")

    def distinct_elements(self) -> int:
        return sum(1 for c in self.elements.values() if c > 0)


@dataclass(frozen=True)
class MonitorState:
    """Analysis scheduler state; mutated only through the reducer."""

    last_analysis_tick: int = -(10**9)
    last_requested_revision: int = -1
    stall_count: int = 0


@dataclass(frozen=True)
class Session:
    session_id: str
    phase: SessionPhase = SessionPhase.GOAL_ENTRY
    goal: str | None = None
    quest: Quest | None = None
    canvas: "CanvasDocument" = None  # type: ignore[assignment]
    gems: GemLedger = GemLedger()
    feedback_log: tuple[FeedbackCard, ...] = ()
    event_seq: int = 0
    last_analysis: CanvasAnalysis | None = None
    style: StyleKind | None = None
    style_artifact: str | None = None
    monitor: MonitorState = MonitorState()

    def __post_init__(self):
        if self.canvas is None:
            from ..canvas.model import CanvasDocument

            object.__setattr__(self, "canvas", CanvasDocument())

    def next_card_seq(self) -> int:
        return self.feedback_log[-1].seq + 1 if self.feedback_log else 1

    def progress(self) -> tuple[int, int]:
        if self.quest is None:
            return (0, 0)
        return (self.quest.completed_count(), len(self.quest.tasks))


def initial_session(session_id: str) -> Session:
    return Session(session_id=session_id)
