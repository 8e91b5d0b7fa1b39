"""Drawing document: strokes, placed helper objects, revision bookkeeping.

Documents are immutable values; every mutator returns a new document with
the revision counter advanced by one. Coordinates are normalized to the
unit square and quantized to six decimals on construction so the canonical
serialization round-trips exactly.
"""

from collections import Counter
from dataclasses import dataclass, replace

from ..errors import InvalidHelper, InvalidStroke, UnknownHelper

MAX_STROKE_WIDTH = 0.1

_HEX_DIGITS = set("0123456789abcdefABCDEF")


def q6(x: float) -> float:
    """Quantize to the 6-decimal grid used by the canonical serialization."""
    return round(float(x), 6)


def _valid_hex_color(color: str) -> bool:
    return (
        isinstance(color, str)
        and len(color) == 7
        and color[0] == "#"
        and all(c in _HEX_DIGITS for c in color[1:])
    )


def _valid_label(label: str) -> bool:
    return bool(label) and label == label.lower() and not label.isspace()


@dataclass(frozen=True)
class Stroke:
    stroke_id: str
    points: tuple[tuple[float, float], ...]
    color: str = "#222222"
    width: float = 0.004
    element_tag: str | None = None

    def __post_init__(self):
        if not self.stroke_id:
            raise InvalidStroke("stroke_id must be non-empty")
        if not self.points:
            raise InvalidStroke("stroke must have at least one point")
        pts = tuple((q6(x), q6(y)) for x, y in self.points)
        for x, y in pts:
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                raise InvalidStroke(f"point ({x}, {y}) outside unit square")
        object.__setattr__(self, "points", pts)
        w = q6(self.width)
        if not (0.0 < w <= MAX_STROKE_WIDTH):
            raise InvalidStroke(f"width {w} outside (0, {MAX_STROKE_WIDTH}]")
        object.__setattr__(self, "width", w)
        if not _valid_hex_color(self.color):
            raise InvalidStroke(f"color {self.color!r} is not #rrggbb")
        if self.element_tag is not None and not _valid_label(self.element_tag):
            raise InvalidStroke(f"element_tag {self.element_tag!r} must be lowercase and non-empty")


@dataclass(frozen=True)
class HelperObject:
    helper_id: str
    label: str
    svg_body: str
    position: tuple[float, float] = (0.5, 0.5)
    scale: float = 0.15

    def __post_init__(self):
        if not self.helper_id:
            raise InvalidHelper("helper_id must be non-empty")
        if not _valid_label(self.label):
            raise InvalidHelper(f"label {self.label!r} must be lowercase and non-empty")
        if not self.svg_body.strip():
            raise InvalidHelper("svg_body must be non-empty")
        x, y = self.position
        pos = (q6(x), q6(y))
        if not (0.0 <= pos[0] <= 1.0 and 0.0 <= pos[1] <= 1.0):
            raise InvalidHelper(f"position {pos} outside unit square")
        object.__setattr__(self, "position", pos)
        s = q6(self.scale)
        if s <= 0.0:
            raise InvalidHelper("scale must be positive")
        object.__setattr__(self, "scale", s)


@dataclass(frozen=True)
class CanvasDocument:
    strokes: tuple[Stroke, ...] = ()
    helpers: tuple[HelperObject, ...] = ()
    revision: int = 0


def apply_stroke(doc: CanvasDocument, stroke: Stroke) -> CanvasDocument:
    """Append a stroke; prior strokes are untouched."""
    if not isinstance(stroke, Stroke):
        raise InvalidStroke("not a Stroke")
    return replace(doc, strokes=doc.strokes + (stroke,), revision=doc.revision + 1)


def place_helper(doc: CanvasDocument, helper: HelperObject) -> CanvasDocument:
    """Append a helper object the learner chose to drop onto the canvas.

    Placing an id that is already on the canvas repositions it (a drag).
    """
    if not isinstance(helper, HelperObject):
        raise InvalidHelper("not a HelperObject")
    for existing in doc.helpers:
        if existing.helper_id == helper.helper_id:
            return move_helper(doc, helper.helper_id, helper.position)
    return replace(doc, helpers=doc.helpers + (helper,), revision=doc.revision + 1)


def move_helper(doc: CanvasDocument, helper_id: str, position: tuple[float, float]) -> CanvasDocument:
    pos = (q6(position[0]), q6(position[1]))
    if not (0.0 <= pos[0] <= 1.0 and 0.0 <= pos[1] <= 1.0):
        raise InvalidHelper(f"position {pos} outside unit square")
    out = []
    found = False
    for helper in doc.helpers:
        if helper.helper_id == helper_id:
            out.append(replace(helper, position=pos))
            found = True
        else:
            out.append(helper)
    if not found:
        raise UnknownHelper(f"no helper {helper_id!r} on canvas")
    return replace(doc, helpers=tuple(out), revision=doc.revision + 1)


def element_census(doc: CanvasDocument) -> dict[str, int]:
    """Count labeled elements: helper labels plus tagged strokes.

    Untagged strokes carry no element information and are excluded.
    """
    counts: Counter[str] = Counter()
    for stroke in doc.strokes:
        if stroke.element_tag:
            counts[stroke.element_tag] += 1
    for helper in doc.helpers:
        counts[helper.label] += 1
    return dict(sorted(counts.items()))
