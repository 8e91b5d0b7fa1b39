"""Remote HTTP provider and the offline-fallback wrapper.

Wire contract: POST ``endpoint`` with JSON ``{"capability", "version",
"payload"}`` and a bearer token; replies are ``{"status": "ok",
"payload": {...}}``. Transient failures retry with exponential backoff
(base 1 s, factor 2). When a cache directory is configured, successful
replies are stored by content hash of (capability, payload) and replayed
byte-identically without touching the network.
"""

import base64
import hashlib
import json
import time
from pathlib import Path

import httpx

from .. import canonjson
from ..canvas.model import CanvasDocument
from ..canvas.raster import export_raster
from ..canvas.serde import doc_to_jsonable
from ..core.types import AnalysisSource, CanvasAnalysis, QuestTask, StyleKind
from ..errors import MalformedProviderReply, ProviderFailure, RemoteError, Timeout
from ..quest.templates import DraftTask, QuestDraft
from .base import HelperDraft, ProviderCapability, ProviderConfig, ProviderMode
from .offline import OfflineProvider
from .prompts import PromptTemplate, default_prompts, load_prompts

WIRE_VERSION = 1
BACKOFF_BASE = 1.0
BACKOFF_FACTOR = 2.0
ANALYSIS_SNAPSHOT_PX = 512


def cache_key(capability: ProviderCapability, payload: dict) -> str:
    body = canonjson.dumps({"capability": capability.value, "payload": payload})
    return hashlib.sha256(body.encode("utf-8")).hexdigest()


def call_remote(
    capability: ProviderCapability,
    payload: dict,
    config: ProviderConfig,
    *,
    client: httpx.Client | None = None,
    sleep=time.sleep,
) -> dict:
    """One capability call: cache lookup, then POST with retries."""
    if config.mode == ProviderMode.OFFLINE:
        raise ProviderFailure("config does not permit remote calls")

    cache_path = None
    if config.cache_dir:
        cache_path = Path(config.cache_dir) / f"{cache_key(capability, payload)}.json"
        if cache_path.exists():
            return json.loads(cache_path.read_text())

    body = {"capability": capability.value, "version": WIRE_VERSION, "payload": payload}
    headers = {"Authorization": f"Bearer {config.token()}"}
    owns_client = client is None
    if owns_client:
        client = httpx.Client(timeout=config.timeout)
    last_error: ProviderFailure | None = None
    try:
        for attempt in range(config.retries + 1):
            if attempt:
                sleep(BACKOFF_BASE * BACKOFF_FACTOR ** (attempt - 1))
            try:
                response = client.post(config.endpoint, json=body, headers=headers)
            except httpx.TimeoutException as exc:
                last_error = Timeout(f"provider timed out: {exc}")
                continue
            except httpx.HTTPError as exc:
                last_error = ProviderFailure(f"transport error: {exc}")
                continue
            if response.status_code != 200:
                last_error = RemoteError(response.status_code)
                continue
            try:
                reply = response.json()
            except (json.JSONDecodeError, ValueError) as exc:
                raise MalformedProviderReply(f"reply is not JSON: {exc}") from exc
            status = reply.get("status")
            if status == "ok" and isinstance(reply.get("payload"), dict):
                result = reply["payload"]
                if cache_path is not None:
                    cache_path.parent.mkdir(parents=True, exist_ok=True)
                    cache_path.write_text(json.dumps(result, sort_keys=True))
                return result
            if status == "error":
                last_error = RemoteError(response.status_code, str(reply.get("error", "")))
                continue
            raise MalformedProviderReply(f"reply missing status/payload: {reply!r}")
    finally:
        if owns_client:
            client.close()
    raise last_error or ProviderFailure("remote call failed")


class RemoteProvider:
    """Speaks the wire contract; every reply is parsed defensively and the
    consuming module still runs its own validators. Prompt text comes from
    the versioned per-capability template files, never from code."""

    def __init__(
        self,
        config: ProviderConfig,
        *,
        client: httpx.Client | None = None,
        sleep=time.sleep,
        prompt_dir: str | None = None,
    ):
        self.config = config
        self._client = client
        self._sleep = sleep
        self.prompts: dict[ProviderCapability, PromptTemplate] = (
            load_prompts(prompt_dir) if prompt_dir else default_prompts()
        )

    def _call(self, capability: ProviderCapability, payload: dict, **slots) -> dict:
        template = self.prompts[capability]
        payload = {
            "prompt": template.render(**slots),
            "prompt_version": template.version,
            **payload,
        }
        return call_remote(
            capability, payload, self.config, client=self._client, sleep=self._sleep
        )

    def draft_quest(self, goal: str, desired_length: int | None = None) -> QuestDraft:
        reply = self._call(
            ProviderCapability.DRAFT_QUEST,
            {"goal": goal, "desired_length": desired_length},
            goal=goal,
            desired_length=desired_length if desired_length is not None else "provider's choice",
        )
        try:
            tasks = tuple(
                DraftTask(
                    title=t["title"],
                    prompt=t["prompt"],
                    bloom=t["bloom"],
                    criteria=tuple((c["label"], c["min_count"]) for c in t.get("criteria", [])),
                )
                for t in reply["tasks"]
            )
        except (KeyError, TypeError) as exc:
            raise MalformedProviderReply(f"bad quest draft: {exc}") from exc
        return QuestDraft(goal_text=goal, tasks=tasks)

    def analyze_canvas(self, doc: CanvasDocument, task: QuestTask | None = None) -> CanvasAnalysis:
        snapshot = export_raster(doc, ANALYSIS_SNAPSHOT_PX, ANALYSIS_SNAPSHOT_PX)
        criteria = (
            [{"label": c.label, "min_count": c.min_count} for c in task.criteria] if task else []
        )
        reply = self._call(
            ProviderCapability.ANALYZE_CANVAS,
            {
                "png_base64": base64.b64encode(snapshot).decode("ascii"),
                "criteria": criteria,
                "revision": doc.revision,
            },
            criteria=", ".join(f"{c['label']} x{c['min_count']}" for c in criteria) or "none",
        )
        elements_raw = reply.get("elements")
        if not isinstance(elements_raw, dict):
            raise MalformedProviderReply(f"bad elements map: {elements_raw!r}")
        elements: dict[str, int] = {}
        for label, count in elements_raw.items():
            if not isinstance(label, str) or not isinstance(count, int):
                raise MalformedProviderReply(f"bad element entry {label!r}: {count!r}")
            if count < 0:
                raise MalformedProviderReply(f"negative count {count} for {label!r}")
            elements[label.lower()] = count
        stroke_count = reply.get("stroke_count", len(doc.strokes))
        if not isinstance(stroke_count, int):
            stroke_count = len(doc.strokes)
        return CanvasAnalysis(
            elements=elements,
            stroke_count=max(0, stroke_count),
            changed=False,
            source=AnalysisSource.REMOTE,
            at_revision=doc.revision,
        )

    def draft_feedback(self, goal: str, analysis: CanvasAnalysis) -> dict[str, str]:
        elements = dict(sorted(analysis.elements.items()))
        reply = self._call(
            ProviderCapability.DRAFT_FEEDBACK,
            {"goal": goal, "elements": elements, "stroke_count": analysis.stroke_count},
            goal=goal,
            elements=", ".join(f"{k}: {v}" for k, v in elements.items()) or "none detected",
            stroke_count=analysis.stroke_count,
        )
        texts = reply.get("texts", {})
        if not isinstance(texts, dict):
            raise MalformedProviderReply(f"bad feedback texts: {texts!r}")
        return {str(k): str(v) for k, v in texts.items()}

    def draft_helper(self, hint: str) -> HelperDraft:
        reply = self._call(ProviderCapability.DRAFT_HELPER, {"hint": hint}, hint=hint)
        label = reply.get("label")
        svg = reply.get("svg")
        if not isinstance(label, str) or not isinstance(svg, str):
            raise MalformedProviderReply(f"bad helper draft: {reply!r}")
        scale = reply.get("default_scale", 0.15)
        if not isinstance(scale, (int, float)) or scale <= 0:
            scale = 0.15
        return HelperDraft(label=label.lower(), svg_body=svg, default_scale=float(scale))

    def transfer_style(
        self, doc: CanvasDocument, style: StyleKind, seed: int, size: int = 768
    ) -> bytes:
        reply = self._call(
            ProviderCapability.TRANSFER_STYLE,
            {"doc": doc_to_jsonable(doc), "style": style.value, "seed": seed, "size": size},
            style=style.value,
            seed=seed,
            size=size,
        )
        encoded = reply.get("png_base64")
        if not isinstance(encoded, str):
            raise MalformedProviderReply("style reply lacks png_base64")
        try:
            return base64.b64decode(encoded, validate=True)
        except (ValueError, TypeError) as exc:
            raise MalformedProviderReply(f"bad png payload: {exc}") from exc


class FallbackProvider:
    """Remote first, offline on any provider failure. Failures never escape:
    the learner just sees offline-sourced results."""

    def __init__(self, remote: RemoteProvider, offline: OfflineProvider | None = None):
        self.remote = remote
        self.offline = offline or OfflineProvider()

    def _try(self, remote_fn, offline_fn):
        try:
            return remote_fn()
        except ProviderFailure:
            return offline_fn()

    def draft_quest(self, goal: str, desired_length: int | None = None) -> QuestDraft:
        return self._try(
            lambda: self.remote.draft_quest(goal, desired_length),
            lambda: self.offline.draft_quest(goal, desired_length),
        )

    def analyze_canvas(self, doc: CanvasDocument, task: QuestTask | None = None) -> CanvasAnalysis:
        return self._try(
            lambda: self.remote.analyze_canvas(doc, task),
            lambda: self.offline.analyze_canvas(doc, task),
        )

    def draft_feedback(self, goal: str, analysis: CanvasAnalysis) -> dict[str, str]:
        return self._try(
            lambda: self.remote.draft_feedback(goal, analysis),
            lambda: self.offline.draft_feedback(goal, analysis),
        )

    def draft_helper(self, hint: str) -> HelperDraft:
        return self._try(
            lambda: self.remote.draft_helper(hint),
            lambda: self.offline.draft_helper(hint),
        )

    def transfer_style(
        self, doc: CanvasDocument, style: StyleKind, seed: int, size: int = 768
    ) -> bytes:
        return self._try(
            lambda: self.remote.transfer_style(doc, style, seed, size=size),
            lambda: self.offline.transfer_style(doc, style, seed, size=size),
        )


def build_provider(config: ProviderConfig, *, client: httpx.Client | None = None):
    if config.mode == ProviderMode.OFFLINE:
        return OfflineProvider()
    remote = RemoteProvider(config, client=client)
    if config.mode == ProviderMode.REMOTE:
        return remote
    return FallbackProvider(remote)
