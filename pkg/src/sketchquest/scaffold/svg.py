"""Safety boundary for vector markup entering the canvas.

Restricted profile: paths, basic shapes, groups. Scripts, event handler
attributes and external references are grounds for rejection; merely
unknown elements and attributes are stripped. Output is a canonical
re-serialization, so sanitizing twice is a fixed point.
"""

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

ELEMENT_WHITELIST = (
    "svg",
    "g",
    "path",
    "rect",
    "circle",
    "ellipse",
    "line",
    "polyline",
    "polygon",
    "title",
    "desc",
)

ATTR_WHITELIST = (
    "viewBox",
    "width",
    "height",
    "id",
    "d",
    "x",
    "y",
    "x1",
    "y1",
    "x2",
    "y2",
    "cx",
    "cy",
    "r",
    "rx",
    "ry",
    "points",
    "fill",
    "stroke",
    "stroke-width",
    "stroke-linecap",
    "stroke-linejoin",
    "stroke-dasharray",
    "opacity",
    "fill-opacity",
    "stroke-opacity",
    "transform",
)

_ATTR_ORDER = {name: i for i, name in enumerate(ATTR_WHITELIST)}

DANGEROUS_ELEMENTS = frozenset(
    {"script", "foreignobject", "image", "use", "iframe", "embed", "object", "animate", "set"}
)
_REF_ATTRS = frozenset({"href", "xlink:href"})

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class SanitizeResult:
    markup: str | None
    reason: str | None

    @property
    def ok(self) -> bool:
        return self.markup is not None


def _reject(reason: str) -> SanitizeResult:
    return SanitizeResult(markup=None, reason=reason)


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def sanitize_svg(markup: str) -> SanitizeResult:
    """Whitelist-filter SVG markup; rejection names the offending part."""
    try:
        root = ET.fromstring(markup)
    except ET.ParseError as exc:
        return _reject(f"unparseable markup: {exc}")
    if _local(root.tag).lower() != "svg":
        return _reject(f"root element {_local(root.tag)!r} is not svg")

    out: list[str] = []
    problem = _emit(root, out, is_root=True)
    if problem is not None:
        return _reject(problem)
    return SanitizeResult(markup="".join(out), reason=None)


def _emit(node, out: list[str], is_root: bool = False) -> str | None:
    """Append the sanitized form of ``node``; returns a rejection reason or None."""
    name = _local(node.tag)
    lowered = name.lower()
    if lowered in DANGEROUS_ELEMENTS:
        return f"forbidden element {lowered!r}"
    if name not in ELEMENT_WHITELIST:
        # unknown but harmless: drop the element and its subtree
        return None

    kept: list[tuple[str, str]] = []
    for raw_name, value in node.attrib.items():
        attr = _local(raw_name)
        if attr.lower().startswith("on"):
            return f"event attribute {attr!r}"
        if attr.lower() in _REF_ATTRS or raw_name.endswith("}href"):
            return f"external reference attribute {attr!r}"
        low_value = value.lower()
        if "url(" in low_value or "javascript:" in low_value:
            return f"external reference in attribute {attr!r}"
        if attr in _ATTR_ORDER:
            kept.append((attr, value))
    kept.sort(key=lambda kv: _ATTR_ORDER[kv[0]])

    out.append(f"<{name}")
    if is_root:
        out.append(f' xmlns="{SVG_NS}"')
    for attr, value in kept:
        out.append(f" {attr}={quoteattr(value)}")

    text = (node.text or "").strip() if name in ("title", "desc") else ""
    children = list(node)
    if not children and not text:
        out.append("/>")
        return None
    out.append(">")
    if text:
        out.append(escape(text))
    for child in children:
        problem = _emit(child, out)
        if problem is not None:
            return problem
    out.append(f"</{name}>")
    return None
