"""End-of-quest style transformations.

The offline filters are honest deterministic stand-ins, not imitations of
generative style transfer: fixed palette quantization, stroke geometry
tweaks and seeded jitter over the document raster. Identical
(document, style, seed) always yields identical PNG bytes.
"""

import random
from dataclasses import replace

from PIL import Image, ImageFilter

from ..canvas.model import CanvasDocument, q6
from ..canvas.raster import encode_png, render_image
from ..core.types import SessionPhase, StyleKind
from ..errors import PhaseViolation

STYLE_RENDER_SIZE = 768

OIL_PALETTE_COLORS = 12
OIL_WIDTH_FACTOR = 1.5
WATERCOLOR_OPACITY = 0.55
WATERCOLOR_JITTER = 0.004
ANIME_PALETTE_COLORS = 6
_EDGE_THRESHOLD = 40


def apply_style(
    doc: CanvasDocument,
    style: StyleKind,
    seed: int,
    provider,
    phase: SessionPhase | None = None,
    size: int = STYLE_RENDER_SIZE,
) -> bytes:
    """Render the styled canvas through the provider as PNG bytes."""
    if phase is not None and phase not in (SessionPhase.ALL_COMPLETE, SessionPhase.STYLE_APPLIED):
        raise PhaseViolation(f"style transformation is not available in phase {phase.value}")
    return provider.transfer_style(doc, style, seed, size=size)


def offline_style(doc: CanvasDocument, style: StyleKind, seed: int, size: int = STYLE_RENDER_SIZE) -> bytes:
    if style == StyleKind.OIL_PAINTING:
        image = render_image(doc, size, size, width_multiplier=OIL_WIDTH_FACTOR)
        image = _quantize(image, OIL_PALETTE_COLORS)
    elif style == StyleKind.WATERCOLOR:
        jittered = _jitter_points(doc, seed, WATERCOLOR_JITTER)
        image = render_image(
            jittered, size, size, stroke_alpha=round(WATERCOLOR_OPACITY * 255)
        )
    elif style == StyleKind.ANIME:
        image = render_image(doc, size, size)
        image = _quantize(image, ANIME_PALETTE_COLORS)
        image = _outline_pass(image)
    else:
        raise ValueError(f"unknown style {style!r}")
    return encode_png(image)


def _quantize(image: Image.Image, colors: int) -> Image.Image:
    return image.quantize(colors=colors, method=Image.Quantize.MEDIANCUT).convert("RGB")


def _outline_pass(image: Image.Image) -> Image.Image:
    edges = image.filter(ImageFilter.FIND_EDGES).convert("L")
    mask = edges.point(lambda v: 255 if v > _EDGE_THRESHOLD else 0)
    # the convolution leaves the 1 px border unfiltered; keep it outline-free
    w, h = mask.size
    interior = mask.crop((1, 1, w - 1, h - 1))
    mask = Image.new("L", (w, h), 0)
    mask.paste(interior, (1, 1))
    out = image.copy()
    out.paste((0, 0, 0), mask=mask)
    return out


def _jitter_points(doc: CanvasDocument, seed: int, amplitude: float) -> CanvasDocument:
    """Seeded jitter of every stroke point; helpers stay put. The RNG is
    consumed in document order, so the result is a pure function of
    (doc, seed)."""
    rng = random.Random(seed)
    strokes = []
    for stroke in doc.strokes:
        points = []
        for x, y in stroke.points:
            dx = rng.uniform(-amplitude, amplitude)
            dy = rng.uniform(-amplitude, amplitude)
            points.append((q6(min(1.0, max(0.0, x + dx))), q6(min(1.0, max(0.0, y + dy)))))
        strokes.append(replace(stroke, points=tuple(points)))
    return replace(doc, strokes=tuple(strokes))
