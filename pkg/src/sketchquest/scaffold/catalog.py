"""Helper object catalog: learner-requestable vector scaffolds.

The catalog is a directory of SVG files plus an index carrying label,
keywords and default scale. Resolution scores hint tokens against each
entry (label hits weigh double) with a lexicographic tie-break on label.

Requesting a helper never places it; placement is a separate learner
action on the canvas.
"""

import hashlib
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..canvas.model import HelperObject
from ..core.types import Session, SessionPhase
from ..errors import NoSuchHelper, PhaseViolation, UnsafeMarkup
from .svg import sanitize_svg

_TOKEN_RE = re.compile(r"[a-z0-9_]+")


@dataclass(frozen=True)
class HelperCatalogEntry:
    label: str
    svg_body: str
    default_scale: float
    topic_keywords: tuple[str, ...]

    def __post_init__(self):
        result = sanitize_svg(self.svg_body)
        if not result.ok:
            raise UnsafeMarkup(f"catalog entry {self.label!r}: {result.reason}")
        object.__setattr__(self, "svg_body", result.markup)


@dataclass(frozen=True)
class HelperCatalog:
    entries: tuple[HelperCatalogEntry, ...]
    version: str = "1"

    def by_label(self, label: str) -> HelperCatalogEntry | None:
        for entry in self.entries:
            if entry.label == label:
                return entry
        return None

    def topic_entries(self, topic: str) -> list[HelperCatalogEntry]:
        return [e for e in self.entries if topic in e.topic_keywords]


def load_catalog(directory=None) -> HelperCatalog:
    if directory is None:
        base = resources.files("sketchquest.data").joinpath("helpers")
        raw_index = base.joinpath("index.json").read_text()
        read = lambda name: base.joinpath(name).read_text()
    else:
        import pathlib

        base = pathlib.Path(directory)
        raw_index = (base / "index.json").read_text()
        read = lambda name: (base / name).read_text()
    data = json.loads(raw_index)
    entries = tuple(
        HelperCatalogEntry(
            label=item["label"],
            svg_body=read(item["file"]),
            default_scale=item["default_scale"],
            topic_keywords=tuple(item["keywords"]),
        )
        for item in data["helpers"]
    )
    return HelperCatalog(entries=entries, version=str(data.get("version", "1")))


@lru_cache(maxsize=1)
def default_catalog() -> HelperCatalog:
    return load_catalog()


def score_entry(hint: str, entry: HelperCatalogEntry) -> int:
    """Keyword overlap; an exact label token counts double so direct
    requests always beat keyword coincidences."""
    tokens = set(_TOKEN_RE.findall(hint.lower()))
    score = sum(1 for kw in entry.topic_keywords if kw in tokens)
    if entry.label in tokens:
        score += 2
    return score


def resolve_hint(hint: str, catalog: HelperCatalog | None = None) -> HelperCatalogEntry:
    catalog = catalog or default_catalog()
    scored = [(score_entry(hint, e), e) for e in catalog.entries]
    best_score = max((s for s, _ in scored), default=0)
    if best_score == 0:
        raise NoSuchHelper(f"no catalog match for {hint!r}")
    candidates = sorted((e.label for s, e in scored if s == best_score))
    return catalog.by_label(candidates[0])


def request_helper(session: Session, label_or_hint: str, provider, nonce: int = 0) -> HelperObject:
    """Resolve a helper through the provider; the result is returned to the
    learner, not placed."""
    if session.phase != SessionPhase.QUEST_ACTIVE:
        raise PhaseViolation("helpers can only be requested while the quest is active")
    draft = provider.draft_helper(label_or_hint)
    result = sanitize_svg(draft.svg_body)
    if not result.ok:
        raise UnsafeMarkup(result.reason)
    digest = hashlib.sha256(
        f"{session.session_id}:{draft.label}:{nonce}".encode("utf-8")
    ).hexdigest()[:8]
    return HelperObject(
        helper_id=f"{draft.label}-{digest}",
        label=draft.label,
        svg_body=result.markup,
        position=(0.5, 0.5),
        scale=draft.default_scale,
    )
