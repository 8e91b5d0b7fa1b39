from .model import (
    CanvasDocument,
    HelperObject,
    Stroke,
    apply_stroke,
    element_census,
    move_helper,
    place_helper,
    q6,
)
from .raster import export_raster, render_image
from .serde import deserialize, serialize

__all__ = [
    "CanvasDocument",
    "HelperObject",
    "Stroke",
    "apply_stroke",
    "element_census",
    "move_helper",
    "place_helper",
    "q6",
    "export_raster",
    "render_image",
    "serialize",
    "deserialize",
]
