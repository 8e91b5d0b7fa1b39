"""The deterministic offline provider.

Every capability is a pure function of its inputs (plus the explicit seed
for style transfer): quests come from the template inventory, analyses
from the element census, helpers from the catalog, styles from the fixed
filter pipelines. No randomness, no network, no hidden state.
"""

from ..canvas.model import CanvasDocument, element_census
from ..core.types import AnalysisSource, CanvasAnalysis, QuestTask, StyleKind
from ..quest.templates import QuestDraft, TemplateInventory, default_inventory, match_template
from ..scaffold.catalog import HelperCatalog, default_catalog, resolve_hint
from ..scaffold.style import offline_style
from .base import HelperDraft


class OfflineProvider:
    def __init__(
        self,
        inventory: TemplateInventory | None = None,
        catalog: HelperCatalog | None = None,
    ):
        self._inventory = inventory or default_inventory()
        self._catalog = catalog or default_catalog()

    def draft_quest(self, goal: str, desired_length: int | None = None) -> QuestDraft:
        template = match_template(goal, self._inventory)
        tasks = template.blueprints
        if desired_length is not None and 3 <= desired_length < len(tasks):
            # keep the opening ramp and the closing synthesis task
            tasks = tasks[: desired_length - 1] + (tasks[-1],)
        return QuestDraft(goal_text=goal, tasks=tuple(tasks))

    def analyze_canvas(self, doc: CanvasDocument, task: QuestTask | None = None) -> CanvasAnalysis:
        return CanvasAnalysis(
            elements=element_census(doc),
            stroke_count=len(doc.strokes),
            changed=False,  # decorated by the caller, which knows the prior revision
            source=AnalysisSource.OFFLINE,
            at_revision=doc.revision,
        )

    def draft_feedback(self, goal: str, analysis: CanvasAnalysis) -> dict[str, str]:
        # offline composition renders directly from the template table
        return {}

    def draft_helper(self, hint: str) -> HelperDraft:
        entry = resolve_hint(hint, self._catalog)
        return HelperDraft(
            label=entry.label, svg_body=entry.svg_body, default_scale=entry.default_scale
        )

    def transfer_style(
        self, doc: CanvasDocument, style: StyleKind, seed: int, size: int = 768
    ) -> bytes:
        return offline_style(doc, style, seed, size=size)
