"""Prompt templates for remote capabilities.

Prompt content is configuration, not code: one versioned text file per
capability with named placeholders. File format: a ``version:`` header
line, then the template body.
"""

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .base import ProviderCapability


@dataclass(frozen=True)
class PromptTemplate:
    capability: ProviderCapability
    version: str
    body: str

    def render(self, **slots) -> str:
        return self.body.format(**slots)


def _parse(capability: ProviderCapability, raw: str) -> PromptTemplate:
    first, _, rest = raw.partition("\n")
    version = "1"
    if first.lower().startswith("version:"):
        version = first.split(":", 1)[1].strip()
    else:
        rest = raw
    return PromptTemplate(capability=capability, version=version, body=rest.strip())


def load_prompts(directory: str | None = None) -> dict[ProviderCapability, PromptTemplate]:
    out: dict[ProviderCapability, PromptTemplate] = {}
    for capability in ProviderCapability:
        name = f"{capability.value}.txt"
        if directory is None:
            raw = resources.files("sketchquest.data").joinpath("prompts").joinpath(name).read_text()
        else:
            raw = (Path(directory) / name).read_text()
        out[capability] = _parse(capability, raw)
    return out


@lru_cache(maxsize=1)
def default_prompts() -> dict[ProviderCapability, PromptTemplate]:
    return load_prompts()
