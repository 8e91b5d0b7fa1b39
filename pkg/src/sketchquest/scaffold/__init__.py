from .catalog import (
    HelperCatalog,
    HelperCatalogEntry,
    default_catalog,
    load_catalog,
    request_helper,
    resolve_hint,
    score_entry,
)
from .style import apply_style, offline_style
from .svg import ATTR_WHITELIST, ELEMENT_WHITELIST, SanitizeResult, sanitize_svg

__all__ = [
    "HelperCatalog",
    "HelperCatalogEntry",
    "default_catalog",
    "load_catalog",
    "request_helper",
    "resolve_hint",
    "score_entry",
    "apply_style",
    "offline_style",
    "ATTR_WHITELIST",
    "ELEMENT_WHITELIST",
    "SanitizeResult",
    "sanitize_svg",
]
