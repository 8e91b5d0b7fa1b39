"""Framing rules: the lexical guardrails that keep feedback collaborative.

Forbidden patterns (controlling directives, fault language) fail any text;
cognitive-dimension texts must additionally carry at least one
collaborative marker. Matching is case-insensitive on whole words.
"""

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from ..core.types import FeedbackDimension


def _word_re(phrase: str) -> re.Pattern:
    return re.compile(r"\b" + re.escape(phrase) + r"\b", re.IGNORECASE)


@dataclass(frozen=True)
class FramingRuleSet:
    forbidden_patterns: tuple[str, ...]
    collaborative_markers: tuple[str, ...]
    version: str = "1"
    _forbidden_res: tuple[re.Pattern, ...] = field(
        default=(), repr=False, compare=False
    )
    _marker_res: tuple[re.Pattern, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if not self.forbidden_patterns or not self.collaborative_markers:
            raise ValueError("rule set needs both forbidden patterns and markers")
        object.__setattr__(
            self, "_forbidden_res", tuple(_word_re(p) for p in self.forbidden_patterns)
        )
        object.__setattr__(
            self, "_marker_res", tuple(_word_re(m) for m in self.collaborative_markers)
        )


def validate_framing(
    text: str,
    rules: FramingRuleSet,
    dimension: FeedbackDimension | None = None,
) -> list[str]:
    """Return violations; an empty list means the text passes."""
    violations = []
    for pattern, compiled in zip(rules.forbidden_patterns, rules._forbidden_res):
        if compiled.search(text):
            violations.append(f"forbidden pattern {pattern!r}")
    if dimension == FeedbackDimension.COGNITIVE:
        if not any(m.search(text) for m in rules._marker_res):
            violations.append("cognitive text lacks a collaborative marker")
    return violations


@dataclass(frozen=True)
class TemplateTable:
    """Per-dimension template texts with {slot} placeholders. Selection is
    first-match: the first template whose placeholders are all provided."""

    templates: dict[FeedbackDimension, tuple[str, ...]]
    strategy_hints: dict[str, str]
    version: str = "1"

    def __post_init__(self):
        for dim in FeedbackDimension:
            if not self.templates.get(dim):
                raise ValueError(f"no templates for dimension {dim.value}")


_PLACEHOLDER_RE = re.compile(r"\{(\w+)\}")


def placeholders(template: str) -> frozenset[str]:
    return frozenset(_PLACEHOLDER_RE.findall(template))


@dataclass(frozen=True)
class FeedbackConfig:
    rules: FramingRuleSet
    table: TemplateTable


def config_from_jsonable(data: dict) -> FeedbackConfig:
    version = str(data.get("version", "1"))
    rules = FramingRuleSet(
        forbidden_patterns=tuple(data["forbidden_patterns"]),
        collaborative_markers=tuple(data["collaborative_markers"]),
        version=version,
    )
    table = TemplateTable(
        templates={
            FeedbackDimension(name): tuple(texts)
            for name, texts in data["templates"].items()
        },
        strategy_hints=dict(data["strategy_hints"]),
        version=version,
    )
    return FeedbackConfig(rules=rules, table=table)


def load_config(path=None) -> FeedbackConfig:
    if path is None:
        raw = resources.files("sketchquest.data").joinpath("feedback_rules.json").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    return config_from_jsonable(json.loads(raw))


@lru_cache(maxsize=1)
def default_config() -> FeedbackConfig:
    return load_config()
