"""Uniform capability interface over AI backends.

Five capabilities cover every AI touchpoint: quest drafting, canvas
analysis, feedback drafting, helper markup, style transfer. The offline
provider implements all five deterministically; the remote provider
speaks a small HTTP contract and every reply is validated by the module
that consumes it before anything reaches a session.
"""

import os
from dataclasses import dataclass
from enum import Enum
from typing import Protocol, runtime_checkable

from ..canvas.model import CanvasDocument
from ..core.types import CanvasAnalysis, QuestTask, StyleKind
from ..quest.templates import QuestDraft


class ProviderCapability(str, Enum):
    DRAFT_QUEST = "draft_quest"
    ANALYZE_CANVAS = "analyze_canvas"
    DRAFT_FEEDBACK = "draft_feedback"
    DRAFT_HELPER = "draft_helper"
    TRANSFER_STYLE = "transfer_style"


class ProviderMode(str, Enum):
    OFFLINE = "offline"
    REMOTE = "remote"
    REMOTE_WITH_OFFLINE_FALLBACK = "remote_with_offline_fallback"


@dataclass(frozen=True)
class ProviderConfig:
    mode: ProviderMode = ProviderMode.OFFLINE
    endpoint: str | None = None
    token_env: str | None = None
    timeout: float = 20.0
    retries: int = 2
    cache_dir: str | None = None

    def __post_init__(self):
        if self.mode != ProviderMode.OFFLINE and (not self.endpoint or not self.token_env):
            raise ValueError("remote modes require endpoint and token_env")
        if self.retries < 0:
            raise ValueError("retries must be >= 0")

    def token(self) -> str:
        value = os.environ.get(self.token_env or "", "")
        return value


@dataclass(frozen=True)
class HelperDraft:
    label: str
    svg_body: str
    default_scale: float = 0.15


@runtime_checkable
class Provider(Protocol):
    """What any backend must offer. ``analyze_canvas`` here returns raw
    counts; the service layer decorates the result with change tracking."""

    def draft_quest(self, goal: str, desired_length: int | None = None) -> QuestDraft: ...

    def analyze_canvas(self, doc: CanvasDocument, task: QuestTask | None = None) -> CanvasAnalysis: ...

    def draft_feedback(self, goal: str, analysis: CanvasAnalysis) -> dict[str, str]: ...

    def draft_helper(self, hint: str) -> HelperDraft: ...

    def transfer_style(
        self, doc: CanvasDocument, style: StyleKind, seed: int, size: int = 768
    ) -> bytes: ...
