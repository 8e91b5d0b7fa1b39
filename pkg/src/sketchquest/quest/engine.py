"""Quest generation: provider draft -> validation -> repair -> Quest.

Providers are noisy, so drafts pass through ``validate_quest`` and, on
violation, one round of ``repair_draft`` before giving up.
"""

import hashlib
from dataclasses import dataclass, replace

from .. import canonjson
from ..errors import EmptyGoal, UnrepairableDraft
from ..core.types import BloomLevel, Quest, QuestTask, RequiredElement, TaskStatus
from .templates import DraftTask, QuestDraft

MIN_TASKS = 3
MAX_TASKS = 7


@dataclass(frozen=True)
class Violation:
    code: str
    task_index: int | None
    message: str

    def __str__(self) -> str:
        where = f" (task {self.task_index})" if self.task_index is not None else ""
        return f"{self.code}{where}: {self.message}"


def validate_quest(draft: QuestDraft) -> tuple[Quest | None, list[Violation]]:
    """Check every quest invariant; returns (quest, []) or (None, violations)."""
    v: list[Violation] = []
    if not draft.goal_text.strip():
        v.append(Violation("empty_goal", None, "goal text is empty"))
    n = len(draft.tasks)
    if not (MIN_TASKS <= n <= MAX_TASKS):
        v.append(Violation("task_count", None, f"quest needs {MIN_TASKS}..{MAX_TASKS} tasks, got {n}"))

    ordinals: list[int] = []
    for i, task in enumerate(draft.tasks):
        if not str(task.title).strip():
            v.append(Violation("empty_title", i, "task title is empty"))
        if not str(task.prompt).strip():
            v.append(Violation("empty_prompt", i, "task prompt is empty"))
        if not isinstance(task.bloom, int) or not (1 <= task.bloom <= 6):
            v.append(Violation("bloom_range", i, f"Bloom ordinal {task.bloom!r} outside 1..6"))
            ordinals.append(0)
        else:
            ordinals.append(task.bloom)
        if not task.criteria:
            v.append(Violation("no_criteria", i, "task has no completion criteria"))
        seen: set[str] = set()
        for label, min_count in task.criteria:
            if not label or not isinstance(label, str) or label != label.lower() or label != label.strip():
                v.append(Violation("bad_label", i, f"criterion label {label!r} must be lowercase and non-empty"))
            elif label in seen:
                v.append(Violation("duplicate_label", i, f"criterion label {label!r} repeated"))
            seen.add(label if isinstance(label, str) else str(label))
            if not isinstance(min_count, int) or min_count < 1:
                v.append(Violation("bad_min_count", i, f"min_count {min_count!r} must be an integer >= 1"))

    if all(1 <= o <= 6 for o in ordinals) and ordinals:
        for i in range(len(ordinals) - 1):
            if ordinals[i] > ordinals[i + 1]:
                v.append(
                    Violation(
                        "bloom_order",
                        i + 1,
                        f"non-decreasing Bloom violated: {ordinals[i]} -> {ordinals[i + 1]}",
                    )
                )
        if ordinals[0] > 2:
            v.append(Violation("first_bloom", 0, f"first task Bloom {ordinals[0]} must be <= 2"))
        if ordinals[-1] < 4:
            v.append(Violation("last_bloom", len(ordinals) - 1, f"last task Bloom {ordinals[-1]} must be >= 4"))

    if v:
        return None, v
    return _build_quest(draft), []


def _build_quest(draft: QuestDraft) -> Quest:
    quest_id = _content_hash(draft)
    tasks = tuple(
        QuestTask(
            task_id=f"{quest_id}-t{i}",
            index=i,
            title=t.title.strip(),
            prompt=t.prompt.strip(),
            bloom=BloomLevel(t.bloom),
            criteria=tuple(RequiredElement(label, count) for label, count in t.criteria),
            status=TaskStatus.LOCKED,
        )
        for i, t in enumerate(draft.tasks)
    )
    return Quest(quest_id=quest_id, goal_text=draft.goal_text, tasks=tasks)


def _content_hash(draft: QuestDraft) -> str:
    payload = canonjson.dumps(
        {
            "goal": draft.goal_text,
            "tasks": [
                {
                    "title": t.title,
                    "prompt": t.prompt,
                    "bloom": t.bloom,
                    "criteria": [[label, count] for label, count in t.criteria],
                }
                for t in draft.tasks
            ],
        }
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def repair_draft(draft: QuestDraft) -> QuestDraft:
    """Best-effort normalization of a noisy draft: stable-sort tasks by
    Bloom ordinal, clamp to the first seven, trim text fields, and
    deduplicate criteria labels. Idempotent."""
    tasks = []
    for task in draft.tasks:
        seen: set[str] = set()
        criteria = []
        for label, min_count in task.criteria:
            clean = label.strip().lower() if isinstance(label, str) else label
            if clean in seen:
                continue
            if isinstance(clean, str):
                seen.add(clean)
            criteria.append((clean, min_count))
        tasks.append(
            replace(
                task,
                title=str(task.title).strip(),
                prompt=str(task.prompt).strip(),
                criteria=tuple(criteria),
            )
        )
    ordered = sorted(tasks, key=lambda t: t.bloom if isinstance(t.bloom, int) else 0)
    return QuestDraft(goal_text=draft.goal_text, tasks=tuple(ordered[:MAX_TASKS]))


def generate_quest(goal: str, provider, desired_length: int | None = None) -> Quest:
    """Turn a free-text goal into a validated quest via the provider."""
    if not goal or not goal.strip():
        raise EmptyGoal("learning goal must be non-empty")
    draft = provider.draft_quest(goal, desired_length)
    draft = QuestDraft(goal_text=goal, tasks=tuple(draft.tasks))
    quest, violations = validate_quest(draft)
    if quest is not None:
        return quest
    repaired = repair_draft(draft)
    quest, violations = validate_quest(repaired)
    if quest is None:
        raise UnrepairableDraft(violations)
    return quest
