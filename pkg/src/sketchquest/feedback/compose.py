"""Feedback composition and the analysis schedule.

``compose_feedback`` turns one canvas analysis (plus completion context)
into at most one card per dimension:

  motivational   always
  cognitive      some required element of the active task is unmet; the
                 card names the lowest-index unmet criterion
  metacognitive  the learner stalled for ``stall_ticks`` consecutive
                 analyses, or stroke count exceeds 10x the distinct
                 elements detected
  self-relevant  a criterion newly became satisfied, or a task or the
                 whole quest was just completed

Provider-drafted sentences may override template text, but only when they
pass framing validation; otherwise the template rendering is used.
"""

from dataclasses import dataclass

from ..errors import FramingViolation, MissingSlot
from ..core.events import CheckRequested, TickElapsed
from ..core.types import (
    DIMENSION_COLORS,
    CanvasAnalysis,
    FeedbackCard,
    FeedbackDimension,
    Session,
    SessionPhase,
    TaskStatus,
)
from .rules import FeedbackConfig, default_config, placeholders, validate_framing

_D = FeedbackDimension


@dataclass(frozen=True)
class MonitorPolicy:
    """When automatic canvas analysis runs."""

    tick_interval: int = 30  # seconds between automatic analyses
    stall_ticks: int = 4  # unchanged analyses before a strategy nudge
    debounce: bool = True  # skip automatic analysis when nothing changed

    def __post_init__(self):
        if self.tick_interval < 5:
            raise ValueError("tick_interval must be >= 5 seconds")
        if self.stall_ticks < 1:
            raise ValueError("stall_ticks must be >= 1")


def should_analyze(policy: MonitorPolicy, session: Session, event) -> bool:
    """Manual checks always analyze; ticks analyze on the interval boundary,
    and with debounce on only when the canvas changed since the last request."""
    if isinstance(event, CheckRequested):
        return True
    if not isinstance(event, TickElapsed):
        return False
    if event.tick - session.monitor.last_analysis_tick < policy.tick_interval:
        return False
    if policy.debounce and session.canvas.revision <= session.monitor.last_requested_revision:
        return False
    return True


def render_card(
    dimension: FeedbackDimension,
    slots: dict,
    seq: int = 1,
    config: FeedbackConfig | None = None,
) -> FeedbackCard:
    """Render the first template of the dimension whose placeholders are all
    present in ``slots``."""
    config = config or default_config()
    for template in config.table.templates[dimension]:
        needed = placeholders(template)
        if needed <= set(slots):
            text = template.format(**{k: slots[k] for k in needed})
            return FeedbackCard(
                dimension=dimension,
                text=text,
                seq=seq,
                color_code=DIMENSION_COLORS[dimension],
            )
    raise MissingSlot(
        f"no {dimension.value} template renderable from slots {sorted(slots)}"
    )


def compose_feedback(
    session: Session,
    analysis: CanvasAnalysis,
    *,
    newly_satisfied: tuple[str, ...] = (),
    completed_task: str | None = None,
    quest_completed: bool = False,
    config: FeedbackConfig | None = None,
    policy: MonitorPolicy | None = None,
) -> tuple[FeedbackCard, ...]:
    if session.phase not in (SessionPhase.QUEST_ACTIVE, SessionPhase.ALL_COMPLETE):
        raise FramingViolation(f"cannot compose feedback in phase {session.phase.value}")
    config = config or default_config()
    policy = policy or MonitorPolicy()

    done, total = session.progress()
    active = session.quest.active_task() if session.quest else None
    unmet = []
    if active is not None:
        unmet = [
            c.label for c in active.criteria if analysis.elements.get(c.label, 0) < c.min_count
        ]

    plan: list[tuple[FeedbackDimension, dict]] = []
    plan.append((_D.MOTIVATIONAL, {"progress_done": done, "progress_total": total}))

    if unmet:
        plan.append((_D.COGNITIVE, {"missing_element": unmet[0]}))

    stalled = session.monitor.stall_count >= policy.stall_ticks
    busy = analysis.stroke_count > 10 * analysis.distinct_elements()
    if stalled or busy:
        hint_key = "stalled" if stalled else "busy_canvas"
        plan.append((_D.METACOGNITIVE, {"strategy_hint": config.table.strategy_hints[hint_key]}))

    if quest_completed:
        plan.append((_D.SELF_RELEVANT, {"quest_goal": session.goal or session.quest.goal_text}))
    elif completed_task is not None:
        plan.append((_D.SELF_RELEVANT, {"completed_task": completed_task}))
    elif newly_satisfied:
        plan.append((_D.SELF_RELEVANT, {"new_element": newly_satisfied[0]}))

    cards = []
    seq = session.next_card_seq()
    for dimension, slots in plan:
        text = _drafted_text(analysis, dimension, config)
        if text is None:
            card = render_card(dimension, slots, seq=seq, config=config)
        else:
            card = FeedbackCard(
                dimension=dimension,
                text=text,
                seq=seq,
                color_code=DIMENSION_COLORS[dimension],
            )
        violations = validate_framing(card.text, config.rules, dimension)
        if violations:
            raise FramingViolation(
                f"{dimension.value} card fails framing: {violations} ({card.text!r})"
            )
        cards.append(card)
        seq += 1
    return tuple(cards)


def _drafted_text(
    analysis: CanvasAnalysis, dimension: FeedbackDimension, config: FeedbackConfig
) -> str | None:
    """Provider-drafted sentence for a dimension, if present and clean."""
    text = analysis.draft_texts.get(dimension.value)
    if not text:
        return None
    if validate_framing(text, config.rules, dimension):
        return None
    return text


def active_task_unmet(session: Session, analysis: CanvasAnalysis) -> list[str]:
    """Unmet criteria labels of the active task, in criteria order."""
    if session.quest is None:
        return []
    active = session.quest.active_task()
    if active is None or active.status not in (TaskStatus.ACTIVE, TaskStatus.READY_TO_COMPLETE):
        return []
    return [c.label for c in active.criteria if analysis.elements.get(c.label, 0) < c.min_count]
