"""Canonical serialization of events and sessions.

Used for the event log, replay, and the bitwise purity checks. Builders
emit fixed field order; map-like dicts (element counts, draft texts) are
sorted by key.
"""

import json

from .. import canonjson
from ..canvas.model import HelperObject, Stroke
from ..canvas.serde import doc_from_jsonable, doc_to_jsonable
from ..errors import MalformedDocument
from . import events as ev
from .types import (
    AnalysisSource,
    BloomLevel,
    CanvasAnalysis,
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
)


def stroke_to_jsonable(s: Stroke) -> dict:
    return {
        "stroke_id": s.stroke_id,
        "points": [[x, y] for x, y in s.points],
        "color": s.color,
        "width": s.width,
        "element_tag": s.element_tag,
    }


def stroke_from_jsonable(d: dict) -> Stroke:
    return Stroke(
        stroke_id=d["stroke_id"],
        points=tuple((p[0], p[1]) for p in d["points"]),
        color=d["color"],
        width=d["width"],
        element_tag=d.get("element_tag"),
    )


def helper_to_jsonable(h: HelperObject) -> dict:
    return {
        "helper_id": h.helper_id,
        "label": h.label,
        "svg_body": h.svg_body,
        "position": [h.position[0], h.position[1]],
        "scale": h.scale,
    }


def helper_from_jsonable(d: dict) -> HelperObject:
    return HelperObject(
        helper_id=d["helper_id"],
        label=d["label"],
        svg_body=d["svg_body"],
        position=(d["position"][0], d["position"][1]),
        scale=d["scale"],
    )


def quest_to_jsonable(q: Quest) -> dict:
    return {
        "quest_id": q.quest_id,
        "goal_text": q.goal_text,
        "tasks": [
            {
                "task_id": t.task_id,
                "index": t.index,
                "title": t.title,
                "prompt": t.prompt,
                "bloom": int(t.bloom),
                "criteria": [{"label": c.label, "min_count": c.min_count} for c in t.criteria],
                "status": t.status.value,
            }
            for t in q.tasks
        ],
    }


def quest_from_jsonable(d: dict) -> Quest:
    return Quest(
        quest_id=d["quest_id"],
        goal_text=d["goal_text"],
        tasks=tuple(
            QuestTask(
                task_id=t["task_id"],
                index=t["index"],
                title=t["title"],
                prompt=t["prompt"],
                bloom=BloomLevel(t["bloom"]),
                criteria=tuple(
                    RequiredElement(c["label"], c["min_count"]) for c in t["criteria"]
                ),
                status=TaskStatus(t["status"]),
            )
            for t in d["tasks"]
        ),
    )


def analysis_to_jsonable(a: CanvasAnalysis) -> dict:
    return {
        "elements": dict(sorted(a.elements.items())),
        "stroke_count": a.stroke_count,
        "changed": a.changed,
        "source": a.source.value,
        "at_revision": a.at_revision,
        "draft_texts": dict(sorted(a.draft_texts.items())),
    }


def analysis_from_jsonable(d: dict) -> CanvasAnalysis:
    return CanvasAnalysis(
        elements=dict(d["elements"]),
        stroke_count=d["stroke_count"],
        changed=d["changed"],
        source=AnalysisSource(d["source"]),
        at_revision=d["at_revision"],
        draft_texts=dict(d.get("draft_texts", {})),
    )


_EVENT_TAGS: dict[type, str] = {
    ev.GoalSubmitted: "goal_submitted",
    ev.QuestGenerated: "quest_generated",
    ev.StrokeAdded: "stroke_added",
    ev.HelperPlaced: "helper_placed",
    ev.TickElapsed: "tick_elapsed",
    ev.CheckRequested: "check_requested",
    ev.AnalysisArrived: "analysis_arrived",
    ev.TaskCompletionConfirmed: "task_completion_confirmed",
    ev.StyleRequested: "style_requested",
    ev.StyleApplied: "style_applied",
}
_TAG_TO_TYPE = {tag: t for t, tag in _EVENT_TAGS.items()}


def event_to_jsonable(event: ev.SessionEvent) -> dict:
    tag = _EVENT_TAGS[type(event)]
    out: dict = {"type": tag, "seq": event.seq}
    if isinstance(event, ev.GoalSubmitted):
        out["text"] = event.text
    elif isinstance(event, ev.QuestGenerated):
        out["quest"] = quest_to_jsonable(event.quest)
    elif isinstance(event, ev.StrokeAdded):
        out["stroke"] = stroke_to_jsonable(event.stroke)
    elif isinstance(event, ev.HelperPlaced):
        out["helper"] = helper_to_jsonable(event.helper)
    elif isinstance(event, ev.TickElapsed):
        out["tick"] = event.tick
    elif isinstance(event, ev.AnalysisArrived):
        out["analysis"] = analysis_to_jsonable(event.analysis)
    elif isinstance(event, ev.TaskCompletionConfirmed):
        out["task_id"] = event.task_id
    elif isinstance(event, ev.StyleRequested):
        out["style"] = event.style.value
        out["seed"] = event.seed
    elif isinstance(event, ev.StyleApplied):
        out["artifact_ref"] = event.artifact_ref
    return out


def event_from_jsonable(d: dict) -> ev.SessionEvent:
    try:
        tag = d["type"]
        seq = d["seq"]
        etype = _TAG_TO_TYPE[tag]
    except (KeyError, TypeError) as exc:
        raise MalformedDocument(f"bad event record: {exc}") from exc
    if etype is ev.GoalSubmitted:
        return ev.GoalSubmitted(seq, d["text"])
    if etype is ev.QuestGenerated:
        return ev.QuestGenerated(seq, quest_from_jsonable(d["quest"]))
    if etype is ev.StrokeAdded:
        return ev.StrokeAdded(seq, stroke_from_jsonable(d["stroke"]))
    if etype is ev.HelperPlaced:
        return ev.HelperPlaced(seq, helper_from_jsonable(d["helper"]))
    if etype is ev.TickElapsed:
        return ev.TickElapsed(seq, d["tick"])
    if etype is ev.CheckRequested:
        return ev.CheckRequested(seq)
    if etype is ev.AnalysisArrived:
        return ev.AnalysisArrived(seq, analysis_from_jsonable(d["analysis"]))
    if etype is ev.TaskCompletionConfirmed:
        return ev.TaskCompletionConfirmed(seq, d["task_id"])
    if etype is ev.StyleRequested:
        return ev.StyleRequested(seq, StyleKind(d["style"]), d.get("seed", 0))
    return ev.StyleApplied(seq, d["artifact_ref"])


def serialize_event(event: ev.SessionEvent) -> str:
    return canonjson.dumps(event_to_jsonable(event))


def deserialize_event(payload: str) -> ev.SessionEvent:
    try:
        return event_from_jsonable(json.loads(payload))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad event payload: {exc}") from exc


def session_to_jsonable(s: Session) -> dict:
    return {
        "session_id": s.session_id,
        "phase": s.phase.value,
        "goal": s.goal,
        "quest": quest_to_jsonable(s.quest) if s.quest else None,
        "canvas": doc_to_jsonable(s.canvas),
        "gems": {
            "gem_count": s.gems.gem_count,
            "awards": [[task_id, seq] for task_id, seq in s.gems.awards],
        },
        "feedback_log": [
            {
                "dimension": c.dimension.value,
                "text": c.text,
                "seq": c.seq,
                "color_code": c.color_code,
            }
            for c in s.feedback_log
        ],
        "event_seq": s.event_seq,
        "last_analysis": analysis_to_jsonable(s.last_analysis) if s.last_analysis else None,
        "style": s.style.value if s.style else None,
        "style_artifact": s.style_artifact,
        "monitor": {
            "last_analysis_tick": s.monitor.last_analysis_tick,
            "last_requested_revision": s.monitor.last_requested_revision,
            "stall_count": s.monitor.stall_count,
        },
    }


def session_from_jsonable(d: dict) -> Session:
    return Session(
        session_id=d["session_id"],
        phase=SessionPhase(d["phase"]),
        goal=d.get("goal"),
        quest=quest_from_jsonable(d["quest"]) if d.get("quest") else None,
        canvas=doc_from_jsonable(d["canvas"]),
        gems=GemLedger(
            gem_count=d["gems"]["gem_count"],
            awards=tuple((a[0], a[1]) for a in d["gems"]["awards"]),
        ),
        feedback_log=tuple(
            FeedbackCard(
                dimension=FeedbackDimension(c["dimension"]),
                text=c["text"],
                seq=c["seq"],
                color_code=c["color_code"],
            )
            for c in d["feedback_log"]
        ),
        event_seq=d["event_seq"],
        last_analysis=analysis_from_jsonable(d["last_analysis"]) if d.get("last_analysis") else None,
        style=StyleKind(d["style"]) if d.get("style") else None,
        style_artifact=d.get("style_artifact"),
        monitor=MonitorState(
            last_analysis_tick=d["monitor"]["last_analysis_tick"],
            last_requested_revision=d["monitor"]["last_requested_revision"],
            stall_count=d["monitor"]["stall_count"],
        ),
    )


def serialize_session(s: Session) -> bytes:
    return canonjson.dumps_bytes(session_to_jsonable(s))
