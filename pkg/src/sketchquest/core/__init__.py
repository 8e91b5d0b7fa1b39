from .types import (
    AnalysisSource,
    BloomLevel,
    CanvasAnalysis,
    DIMENSION_COLORS,
    FeedbackCard,
    FeedbackDimension,
    GemLedger,
    MonitorState,
    Quest,
    QuestTask,
    RequiredElement,
    Session,
    SessionPhase,
    StyleKind,
    TaskStatus,
    initial_session,
)
from .reducer import (
    ReducerContext,
    TRANSITIONS,
    confirm_task_completion,
    default_context,
    mark_task_ready,
    reduce,
)

__all__ = [
    "AnalysisSource",
    "BloomLevel",
    "CanvasAnalysis",
    "DIMENSION_COLORS",
    "FeedbackCard",
    "FeedbackDimension",
    "GemLedger",
    "MonitorState",
    "Quest",
    "QuestTask",
    "RequiredElement",
    "Session",
    "SessionPhase",
    "StyleKind",
    "TaskStatus",
    "initial_session",
    "ReducerContext",
    "TRANSITIONS",
    "confirm_task_completion",
    "default_context",
    "mark_task_ready",
    "reduce",
]
