from .compose import MonitorPolicy, compose_feedback, render_card, should_analyze
from .rules import (
    FeedbackConfig,
    FramingRuleSet,
    TemplateTable,
    default_config,
    load_config,
    placeholders,
    validate_framing,
)

__all__ = [
    "MonitorPolicy",
    "compose_feedback",
    "render_card",
    "should_analyze",
    "FeedbackConfig",
    "FramingRuleSet",
    "TemplateTable",
    "default_config",
    "load_config",
    "placeholders",
    "validate_framing",
]
