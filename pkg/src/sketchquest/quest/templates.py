"""Quest template inventory and goal-to-template matching.

Templates are the offline stand-in for generative quest drafting: a
keyword-scored lookup over a versioned inventory file, with a generic
ladder as the zero-overlap fallback.
"""

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


@dataclass(frozen=True)
class DraftTask:
    """One unvalidated task as produced by a provider or template."""

    title: str
    prompt: str
    bloom: int
    criteria: tuple[tuple[str, int], ...]  # (label, min_count)


@dataclass(frozen=True)
class QuestDraft:
    goal_text: str
    tasks: tuple[DraftTask, ...]


@dataclass(frozen=True)
class QuestTemplate:
    name: str
    topic_keywords: tuple[str, ...]
    blueprints: tuple[DraftTask, ...]

    def __post_init__(self):
        for kw in self.topic_keywords:
            if kw != kw.lower():
                raise ValueError(f"template keyword {kw!r} must be lowercase")


@dataclass(frozen=True)
class TemplateInventory:
    templates: tuple[QuestTemplate, ...]
    fallback: QuestTemplate
    version: str = "1"


def _tasks_from_jsonable(items) -> tuple[DraftTask, ...]:
    return tuple(
        DraftTask(
            title=t["title"],
            prompt=t["prompt"],
            bloom=t["bloom"],
            criteria=tuple((c["label"], c["min_count"]) for c in t["criteria"]),
        )
        for t in items
    )


def _template_from_jsonable(data) -> QuestTemplate:
    return QuestTemplate(
        name=data["name"],
        topic_keywords=tuple(data["topic_keywords"]),
        blueprints=_tasks_from_jsonable(data["tasks"]),
    )


def load_templates(path=None) -> TemplateInventory:
    if path is None:
        raw = resources.files("sketchquest.data").joinpath("quest_templates.json").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    data = json.loads(raw)
    return TemplateInventory(
        templates=tuple(_template_from_jsonable(t) for t in data["templates"]),
        fallback=_template_from_jsonable(data["fallback"]),
        version=str(data.get("version", "1")),
    )


@lru_cache(maxsize=1)
def default_inventory() -> TemplateInventory:
    return load_templates()


_TOKEN_RE = re.compile(r"[a-z0-9]+")


def goal_tokens(goal: str) -> frozenset[str]:
    return frozenset(_TOKEN_RE.findall(goal.lower()))


def match_template(goal: str, inventory: TemplateInventory | None = None) -> QuestTemplate:
    """Highest keyword overlap wins; ties break on the lexicographically
    smallest first keyword; zero overlap falls back to the generic ladder."""
    inventory = inventory or default_inventory()
    tokens = goal_tokens(goal)
    best: QuestTemplate | None = None
    best_key: tuple[int, str] | None = None
    for template in inventory.templates:
        score = sum(1 for kw in template.topic_keywords if kw in tokens)
        if score == 0:
            continue
        first_kw = template.topic_keywords[0] if template.topic_keywords else ""
        key = (-score, first_kw)
        if best_key is None or key < best_key:
            best, best_key = template, key
    return best if best is not None else inventory.fallback
