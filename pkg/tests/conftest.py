"""Shared builders for the test suite.

Oracles (independent re-implementations used to check DERIVED values) live
in the individual test modules; this file only holds random-value builders
and the scripted-session driver.
"""

import random
import string

import pytest

from sketchquest.canvas.model import CanvasDocument, HelperObject, Stroke, apply_stroke, place_helper
from sketchquest.core.types import (
    BloomLevel,
    Quest,
    QuestTask,
    RequiredElement,
    TaskStatus,
)

LABEL_POOL = (
    "membrane", "nucleus", "sun", "leaf", "cloud", "arrow", "vapor",
    "chloroplast", "water", "rain", "glucose", "ribosome",
)

SIMPLE_SVG = '<svg viewBox="0 0 100 100"><circle cx="50" cy="50" r="30" fill="#ccaa33"/></svg>'


def random_point(rng: random.Random) -> tuple[float, float]:
    return (round(rng.random(), 6), round(rng.random(), 6))


def random_stroke(rng: random.Random, tag: str | None = None, ident: str | None = None) -> Stroke:
    n = rng.randint(1, 6)
    return Stroke(
        stroke_id=ident or f"s{rng.randrange(10**9)}",
        points=tuple(random_point(rng) for _ in range(n)),
        color="#" + "".join(rng.choice("0123456789abcdef") for _ in range(6)),
        width=round(rng.uniform(0.001, 0.1), 6),
        element_tag=tag,
    )


def random_helper(rng: random.Random, label: str | None = None, ident: str | None = None) -> HelperObject:
    return HelperObject(
        helper_id=ident or f"h{rng.randrange(10**9)}",
        label=label or rng.choice(LABEL_POOL),
        svg_body=SIMPLE_SVG,
        position=random_point(rng),
        scale=round(rng.uniform(0.05, 0.4), 6),
    )


def random_document(rng: random.Random, max_mutations: int = 12) -> CanvasDocument:
    doc = CanvasDocument()
    for _ in range(rng.randint(0, max_mutations)):
        if rng.random() < 0.7:
            doc = apply_stroke(doc, random_stroke(rng, tag=rng.choice((None,) + LABEL_POOL)))
        else:
            doc = place_helper(doc, random_helper(rng))
    return doc


def make_quest(
    goal: str = "test goal",
    ordinals: tuple[int, ...] = (1, 3, 4),
    criteria_labels: tuple[tuple[str, ...], ...] | None = None,
) -> Quest:
    if criteria_labels is None:
        criteria_labels = tuple((LABEL_POOL[i],) for i in range(len(ordinals)))
    tasks = tuple(
        QuestTask(
            task_id=f"q-t{i}",
            index=i,
            title=f"Task {i}",
            prompt=f"Draw something for step {i}",
            bloom=BloomLevel(o),
            criteria=tuple(RequiredElement(lbl, 1) for lbl in criteria_labels[i]),
            status=TaskStatus.LOCKED,
        )
        for i, o in enumerate(ordinals)
    )
    return Quest(quest_id="q", goal_text=goal, tasks=tasks)


def random_word(rng: random.Random, n: int = 8) -> str:
    return "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(3, n)))


# --- random session runs ------------------------------------------------------

from sketchquest.core import events as ev  # noqa: E402
from sketchquest.core.types import AnalysisSource, CanvasAnalysis, Session, SessionPhase, StyleKind  # noqa: E402
from sketchquest.canvas.model import element_census  # noqa: E402
from sketchquest.errors import SketchQuestError  # noqa: E402
from sketchquest.core.reducer import reduce  # noqa: E402

GOALS = ("photosynthesis", "water cycle", "cell structure", "plate tectonics")


def build_fuzz_event(rng: random.Random, session: Session, tick_counter: list[int]) -> object:
    """One random event for the session; mostly sensible, sometimes chaotic."""
    seq = session.event_seq + 1
    if rng.random() < 0.03:
        seq += rng.choice((-1, 1, 5))  # out-of-order attempts

    sensible = rng.random() < 0.7
    phase = session.phase

    def analysis_event():
        elements = dict(element_census(session.canvas))
        if rng.random() < 0.3:
            elements[rng.choice(LABEL_POOL)] = rng.randint(0, 3)
        prev_rev = session.last_analysis.at_revision if session.last_analysis else -1
        return ev.AnalysisArrived(
            seq,
            CanvasAnalysis(
                elements=elements,
                stroke_count=len(session.canvas.strokes),
                changed=session.canvas.revision > prev_rev,
                source=AnalysisSource.OFFLINE,
                at_revision=session.canvas.revision,
            ),
        )

    def completion_event():
        if session.quest is None:
            return ev.TaskCompletionConfirmed(seq, "bogus")
        if sensible:
            ready = [t for t in session.quest.tasks if t.status.value == "ready_to_complete"]
            if ready:
                return ev.TaskCompletionConfirmed(seq, ready[0].task_id)
        return ev.TaskCompletionConfirmed(seq, rng.choice(session.quest.tasks).task_id)

    choices: list = []
    if sensible:
        if phase == SessionPhase.GOAL_ENTRY:
            if session.goal is None:
                choices = [lambda: ev.GoalSubmitted(seq, rng.choice(GOALS))]
            else:
                choices = [
                    lambda: ev.QuestGenerated(seq, make_quest(goal=session.goal)),
                ]
        elif phase == SessionPhase.QUEST_ACTIVE:
            active = session.quest.active_task()
            labels = [c.label for c in active.criteria] if active else list(LABEL_POOL)
            choices = [
                lambda: ev.StrokeAdded(
                    seq, random_stroke(rng, tag=rng.choice(labels + [None, None]))
                ),
                lambda: ev.HelperPlaced(seq, random_helper(rng, label=rng.choice(labels))),
                lambda: ev.CheckRequested(seq),
                analysis_event,
                completion_event,
                lambda: ev.TickElapsed(seq, tick_counter[0]),
            ]
        elif phase == SessionPhase.ALL_COMPLETE:
            choices = [
                lambda: ev.StyleRequested(seq, rng.choice(list(StyleKind)), rng.randint(0, 99)),
                analysis_event,
                lambda: ev.TickElapsed(seq, tick_counter[0]),
            ]
            if session.style is not None:
                choices.append(lambda: ev.StyleApplied(seq, f"art-{rng.randrange(999)}.png"))
        else:  # STYLE_APPLIED
            choices = [
                lambda: ev.StyleRequested(seq, rng.choice(list(StyleKind)), rng.randint(0, 99)),
                lambda: ev.StyleApplied(seq, f"art-{rng.randrange(999)}.png"),
                lambda: ev.TickElapsed(seq, tick_counter[0]),
            ]
    else:
        choices = [
            lambda: ev.GoalSubmitted(seq, rng.choice(GOALS + ("",))),
            lambda: ev.QuestGenerated(seq, make_quest(goal=session.goal or "x")),
            lambda: ev.StrokeAdded(seq, random_stroke(rng)),
            lambda: ev.HelperPlaced(seq, random_helper(rng)),
            lambda: ev.TickElapsed(seq, tick_counter[0]),
            lambda: ev.CheckRequested(seq),
            analysis_event,
            completion_event,
            lambda: ev.StyleRequested(seq, rng.choice(list(StyleKind)), 1),
            lambda: ev.StyleApplied(seq, "art.png"),
        ]

    tick_counter[0] += rng.randint(1, 40)
    return rng.choice(choices)()


def run_fuzz_session(rng: random.Random, steps: int, ctx=None, on_step=None):
    """Drive a fresh session through ``steps`` random events.

    Returns (applied_events, final_session, rejected_count). ``on_step`` is
    called after every accepted event with (prev, event, new, effects).
    """
    from sketchquest.core.types import initial_session

    session = initial_session(f"fuzz{rng.randrange(10**9)}")
    applied = []
    rejected = 0
    ticks = [0]
    for _ in range(steps):
        event = build_fuzz_event(rng, session, ticks)
        try:
            new_session, effects = reduce(session, event, ctx)
        except SketchQuestError:
            rejected += 1
            continue
        applied.append(event)
        if on_step is not None:
            on_step(session, event, new_session, effects)
        session = new_session
    return applied, session, rejected


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
