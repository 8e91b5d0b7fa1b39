from .engine import Violation, generate_quest, repair_draft, validate_quest
from .templates import (
    DraftTask,
    QuestDraft,
    QuestTemplate,
    TemplateInventory,
    default_inventory,
    load_templates,
    match_template,
)

__all__ = [
    "Violation",
    "generate_quest",
    "repair_draft",
    "validate_quest",
    "DraftTask",
    "QuestDraft",
    "QuestTemplate",
    "TemplateInventory",
    "default_inventory",
    "load_templates",
    "match_template",
]
