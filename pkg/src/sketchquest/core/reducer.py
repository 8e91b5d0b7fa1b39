"""The session state machine.

``reduce`` is a pure function (session, event) -> (session', effects).
The workflow it encodes: a learner submits a goal, a quest arrives, the
learner draws while analyses stream in, tasks become ready and are
confirmed one by one for gem rewards, and once everything is complete a
style transformation can be requested and applied.

Feedback cards are composed inside the reduction (composition is pure
given the shipped phrase tables), so folding an event log reproduces the
feedback history exactly.
"""

from dataclasses import dataclass, replace
from typing import Callable, Protocol

from ..errors import (
    AlreadyCompleted,
    EmptyGoal,
    IllegalTransition,
    OutOfOrderEvent,
    TaskNotReady,
    UnknownTask,
)
from .events import (
    EVENT_TYPES,
    AnalysisArrived,
    AnalyzeCanvas,
    ApplyStyle,
    CheckRequested,
    ComposeFeedback,
    Effect,
    GenerateQuest,
    GoalSubmitted,
    HelperPlaced,
    QuestGenerated,
    SessionEvent,
    StrokeAdded,
    StyleApplied,
    StyleRequested,
    TaskCompletionConfirmed,
    TickElapsed,
)
from .types import (
    AnalysisSource,
    CanvasAnalysis,
    FeedbackCard,
    Session,
    SessionPhase,
    TaskStatus,
)
from ..canvas.model import apply_stroke, place_helper

_P = SessionPhase

# Legal phases per event type. TickElapsed is accepted everywhere because
# monitor timers race with phase changes; outside QUEST_ACTIVE it is a no-op.
TRANSITIONS: dict[type, frozenset[SessionPhase]] = {
    GoalSubmitted: frozenset({_P.GOAL_ENTRY}),
    QuestGenerated: frozenset({_P.GOAL_ENTRY}),
    StrokeAdded: frozenset({_P.QUEST_ACTIVE}),
    HelperPlaced: frozenset({_P.QUEST_ACTIVE}),
    TickElapsed: frozenset(_P),
    CheckRequested: frozenset({_P.QUEST_ACTIVE}),
    AnalysisArrived: frozenset({_P.QUEST_ACTIVE, _P.ALL_COMPLETE}),
    TaskCompletionConfirmed: frozenset({_P.QUEST_ACTIVE}),
    StyleRequested: frozenset({_P.ALL_COMPLETE, _P.STYLE_APPLIED}),
    StyleApplied: frozenset({_P.ALL_COMPLETE, _P.STYLE_APPLIED}),
}


class Composer(Protocol):
    def __call__(
        self,
        session: Session,
        analysis: CanvasAnalysis,
        *,
        newly_satisfied: tuple[str, ...] = (),
        completed_task: str | None = None,
        quest_completed: bool = False,
    ) -> tuple[FeedbackCard, ...]: ...


@dataclass(frozen=True)
class ReducerContext:
    """Pure collaborators the reducer needs: the analysis schedule policy,
    the scheduling predicate, and the feedback composer."""

    policy: object
    should_analyze: Callable
    compose: Composer


_default_ctx: ReducerContext | None = None


def default_context() -> ReducerContext:
    global _default_ctx
    if _default_ctx is None:
        from ..feedback.compose import MonitorPolicy, compose_feedback, should_analyze

        _default_ctx = ReducerContext(
            policy=MonitorPolicy(), should_analyze=should_analyze, compose=compose_feedback
        )
    return _default_ctx


def reduce(
    session: Session, event: SessionEvent, ctx: ReducerContext | None = None
) -> tuple[Session, list[Effect]]:
    """Apply one event; returns the new session and requested effects."""
    if ctx is None:
        ctx = default_context()
    if not isinstance(event, EVENT_TYPES):
        raise IllegalTransition(f"unknown event {type(event).__name__}")
    if event.seq != session.event_seq + 1:
        raise OutOfOrderEvent(
            f"event seq {event.seq} does not follow session seq {session.event_seq}"
        )
    if session.phase not in TRANSITIONS[type(event)]:
        raise IllegalTransition(
            f"{type(event).__name__} is not legal in phase {session.phase.value}"
        )
    handler = _HANDLERS[type(event)]
    new_session, effects = handler(session, event, ctx)
    return replace(new_session, event_seq=event.seq), effects


def _on_goal(session: Session, event: GoalSubmitted, ctx) -> tuple[Session, list[Effect]]:
    text = event.text.strip()
    if not text:
        raise EmptyGoal("learning goal must be non-empty")
    return replace(session, goal=text), [GenerateQuest(text)]


def _on_quest(session: Session, event: QuestGenerated, ctx) -> tuple[Session, list[Effect]]:
    if session.goal is None:
        raise IllegalTransition("quest arrived before a goal was submitted")
    quest = event.quest
    if quest.goal_text != session.goal:
        raise IllegalTransition("generated quest does not match the submitted goal")
    tasks = tuple(
        replace(t, status=TaskStatus.ACTIVE if i == 0 else TaskStatus.LOCKED)
        for i, t in enumerate(quest.tasks)
    )
    quest = replace(quest, tasks=tasks)
    return replace(session, quest=quest, phase=_P.QUEST_ACTIVE), []


def _on_stroke(session: Session, event: StrokeAdded, ctx) -> tuple[Session, list[Effect]]:
    return replace(session, canvas=apply_stroke(session.canvas, event.stroke)), []


def _on_helper(session: Session, event: HelperPlaced, ctx) -> tuple[Session, list[Effect]]:
    return replace(session, canvas=place_helper(session.canvas, event.helper)), []


def _on_tick(session: Session, event: TickElapsed, ctx) -> tuple[Session, list[Effect]]:
    if session.phase != _P.QUEST_ACTIVE:
        return session, []
    if not ctx.should_analyze(ctx.policy, session, event):
        return session, []
    monitor = replace(
        session.monitor,
        last_analysis_tick=event.tick,
        last_requested_revision=session.canvas.revision,
    )
    return replace(session, monitor=monitor), [
        AnalyzeCanvas(revision=session.canvas.revision, manual=False)
    ]


def _on_check(session: Session, event: CheckRequested, ctx) -> tuple[Session, list[Effect]]:
    monitor = replace(session.monitor, last_requested_revision=session.canvas.revision)
    return replace(session, monitor=monitor), [
        AnalyzeCanvas(revision=session.canvas.revision, manual=True)
    ]


def _on_analysis(session: Session, event: AnalysisArrived, ctx) -> tuple[Session, list[Effect]]:
    analysis = event.analysis
    newly = _newly_satisfied(session, analysis)
    monitor = replace(
        session.monitor,
        stall_count=0 if analysis.changed else session.monitor.stall_count + 1,
    )
    updated = replace(session, last_analysis=analysis, monitor=monitor)
    if updated.phase == _P.QUEST_ACTIVE:
        updated = mark_task_ready(updated, analysis)
    cards = ctx.compose(updated, analysis, newly_satisfied=newly)
    updated = replace(updated, feedback_log=updated.feedback_log + cards)
    return updated, [ComposeFeedback(cards)]


def _on_complete(
    session: Session, event: TaskCompletionConfirmed, ctx
) -> tuple[Session, list[Effect]]:
    task = session.quest.task_by_id(event.task_id) if session.quest else None
    updated = confirm_task_completion(session, event.task_id, award_seq=event.seq)
    quest_done = updated.phase == _P.ALL_COMPLETE
    analysis = updated.last_analysis or _placeholder_analysis(updated)
    cards = ctx.compose(
        updated,
        analysis,
        completed_task=task.title,
        quest_completed=quest_done,
    )
    updated = replace(updated, feedback_log=updated.feedback_log + cards)
    return updated, [ComposeFeedback(cards)]


def _on_style_requested(
    session: Session, event: StyleRequested, ctx
) -> tuple[Session, list[Effect]]:
    return replace(session, style=event.style), [ApplyStyle(style=event.style, seed=event.seed)]


def _on_style_applied(session: Session, event: StyleApplied, ctx) -> tuple[Session, list[Effect]]:
    if session.style is None:
        raise IllegalTransition("style result arrived before any style was requested")
    return replace(session, phase=_P.STYLE_APPLIED, style_artifact=event.artifact_ref), []


_HANDLERS: dict[type, Callable] = {
    GoalSubmitted: _on_goal,
    QuestGenerated: _on_quest,
    StrokeAdded: _on_stroke,
    HelperPlaced: _on_helper,
    TickElapsed: _on_tick,
    CheckRequested: _on_check,
    AnalysisArrived: _on_analysis,
    TaskCompletionConfirmed: _on_complete,
    StyleRequested: _on_style_requested,
    StyleApplied: _on_style_applied,
}

# Events whose reduction may add objects to the canvas. Used by the
# non-imposition scan: helper objects may only enter through HelperPlaced.
CANVAS_MUTATING_EVENTS: frozenset[type] = frozenset({StrokeAdded, HelperPlaced})


def confirm_task_completion(session: Session, task_id: str, award_seq: int | None = None) -> Session:
    """Learner confirms a ready task: mark it complete, unlock the next,
    award exactly one gem. The final confirmation moves the session to
    ALL_COMPLETE."""
    if session.quest is None:
        raise UnknownTask(f"no quest in session {session.session_id}")
    task = session.quest.task_by_id(task_id)
    if task is None:
        raise UnknownTask(f"no task {task_id!r}")
    if task.status == TaskStatus.COMPLETED:
        raise AlreadyCompleted(f"task {task_id!r} is already completed")
    if task.status != TaskStatus.READY_TO_COMPLETE:
        raise TaskNotReady(f"task {task_id!r} is {task.status.value}, not ready to complete")

    tasks = list(session.quest.tasks)
    tasks[task.index] = replace(task, status=TaskStatus.COMPLETED)
    if task.index + 1 < len(tasks):
        nxt = tasks[task.index + 1]
        if nxt.status == TaskStatus.LOCKED:
            tasks[task.index + 1] = replace(nxt, status=TaskStatus.ACTIVE)
    quest = replace(session.quest, tasks=tuple(tasks))
    gems = session.gems.award(task_id, award_seq if award_seq is not None else session.event_seq)
    phase = _P.ALL_COMPLETE if quest.all_completed() else session.phase
    return replace(session, quest=quest, gems=gems, phase=phase)


def mark_task_ready(session: Session, analysis: CanvasAnalysis) -> Session:
    """Gate the active task on its criteria: ready iff every required
    element appears in the analysis at least min_count times."""
    if session.phase != _P.QUEST_ACTIVE or session.quest is None:
        return session
    active = session.quest.active_task()
    if active is None or active.status != TaskStatus.ACTIVE:
        return session
    if all(analysis.elements.get(c.label, 0) >= c.min_count for c in active.criteria):
        tasks = list(session.quest.tasks)
        tasks[active.index] = replace(active, status=TaskStatus.READY_TO_COMPLETE)
        return replace(session, quest=replace(session.quest, tasks=tuple(tasks)))
    return session


def _newly_satisfied(session: Session, analysis: CanvasAnalysis) -> tuple[str, ...]:
    """Criteria of the active task met by this analysis but not the previous one."""
    if session.phase != _P.QUEST_ACTIVE or session.quest is None:
        return ()
    active = session.quest.active_task()
    if active is None:
        return ()
    prev = session.last_analysis.elements if session.last_analysis else {}
    return tuple(
        c.label
        for c in active.criteria
        if analysis.elements.get(c.label, 0) >= c.min_count and prev.get(c.label, 0) < c.min_count
    )


def _placeholder_analysis(session: Session) -> CanvasAnalysis:
    return CanvasAnalysis(
        elements={},
        stroke_count=len(session.canvas.strokes),
        changed=False,
        source=AnalysisSource.OFFLINE,
        at_revision=session.canvas.revision,
    )
