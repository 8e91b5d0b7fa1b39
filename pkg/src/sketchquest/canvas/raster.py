"""Deterministic rasterization of canvas documents to PNG.

Strokes render as round-capped polylines in document order; helper objects
render above strokes through a small rasterizer for the restricted vector
profile (paths, basic shapes, groups). Identical documents produce
byte-identical PNG output.
"""

import io
import math
import re
import xml.etree.ElementTree as ET

from PIL import Image, ImageDraw

from ..errors import BadDimensions
from .model import CanvasDocument, HelperObject, Stroke

MIN_DIM = 64
MAX_DIM = 4096

BACKGROUND = (255, 255, 255, 255)

_NAMED_COLORS = {
    "black": (0, 0, 0),
    "white": (255, 255, 255),
    "red": (220, 50, 47),
    "green": (70, 150, 60),
    "blue": (60, 100, 200),
    "yellow": (250, 210, 60),
    "orange": (240, 150, 40),
    "brown": (140, 90, 50),
    "gray": (128, 128, 128),
    "grey": (128, 128, 128),
    "pink": (240, 140, 180),
    "purple": (140, 80, 200),
    "cyan": (60, 190, 210),
    "lightblue": (150, 200, 240),
    "lightgreen": (160, 220, 150),
    "darkgreen": (30, 100, 40),
    "darkblue": (30, 50, 120),
    "gold": (230, 180, 40),
    "skyblue": (135, 206, 235),
    "tan": (210, 180, 140),
}


def parse_color(value: str | None, alpha: int = 255) -> tuple[int, int, int, int] | None:
    if value is None:
        return None
    value = value.strip().lower()
    if value in ("none", "transparent", ""):
        return None
    if value.startswith("#"):
        hexpart = value[1:]
        if len(hexpart) == 3:
            hexpart = "".join(c * 2 for c in hexpart)
        if len(hexpart) == 6 and all(c in "0123456789abcdef" for c in hexpart):
            r, g, b = (int(hexpart[i : i + 2], 16) for i in (0, 2, 4))
            return (r, g, b, alpha)
        return None
    rgb = _NAMED_COLORS.get(value)
    return (rgb[0], rgb[1], rgb[2], alpha) if rgb else None


def export_raster(doc: CanvasDocument, width_px: int, height_px: int) -> bytes:
    """Render the document to PNG bytes at the requested pixel size."""
    image = render_image(doc, width_px, height_px)
    return encode_png(image)


def render_image(
    doc: CanvasDocument,
    width_px: int,
    height_px: int,
    *,
    width_multiplier: float = 1.0,
    stroke_alpha: int = 255,
) -> Image.Image:
    """Render to an RGB image; the keyword knobs exist for the style filters."""
    for dim in (width_px, height_px):
        if not isinstance(dim, int) or not (MIN_DIM <= dim <= MAX_DIM):
            raise BadDimensions(f"dimensions must be integers in [{MIN_DIM}, {MAX_DIM}]")

    base = Image.new("RGBA", (width_px, height_px), BACKGROUND)
    if stroke_alpha >= 255:
        draw = ImageDraw.Draw(base)
        for stroke in doc.strokes:
            _draw_stroke(draw, stroke, width_px, height_px, width_multiplier, 255)
    else:
        # Translucent strokes composite layer by layer so overlaps darken.
        for stroke in doc.strokes:
            layer = Image.new("RGBA", (width_px, height_px), (0, 0, 0, 0))
            _draw_stroke(ImageDraw.Draw(layer), stroke, width_px, height_px, width_multiplier, stroke_alpha)
            base = Image.alpha_composite(base, layer)

    draw = ImageDraw.Draw(base)
    for helper in doc.helpers:
        _draw_helper(draw, helper, width_px, height_px)
    return base.convert("RGB")


def encode_png(image: Image.Image) -> bytes:
    buf = io.BytesIO()
    image.save(buf, format="PNG")
    return buf.getvalue()


def _draw_stroke(draw, stroke: Stroke, w: int, h: int, width_multiplier: float, alpha: int) -> None:
    color = parse_color(stroke.color, alpha) or (34, 34, 34, alpha)
    wpx = max(1, round(stroke.width * width_multiplier * min(w, h)))
    pts = [(x * (w - 1), y * (h - 1)) for x, y in stroke.points]
    if len(pts) == 1:
        x, y = pts[0]
        r = wpx / 2
        draw.ellipse([x - r, y - r, x + r, y + r], fill=color)
        return
    draw.line(pts, fill=color, width=wpx, joint="curve")
    # round caps at both ends
    for x, y in (pts[0], pts[-1]):
        r = wpx / 2
        draw.ellipse([x - r, y - r, x + r, y + r], fill=color)


def _draw_helper(draw, helper: HelperObject, w: int, h: int) -> None:
    side = helper.scale * min(w, h)
    cx, cy = helper.position[0] * (w - 1), helper.position[1] * (h - 1)
    box = (cx - side / 2, cy - side / 2, side, side)
    try:
        draw_svg(draw, helper.svg_body, box)
    except ET.ParseError:
        # Unparseable markup should have been stopped by the sanitizer;
        # render nothing rather than fail the whole export.
        pass


# --- restricted-profile SVG rasterizer ---------------------------------------

_NUM_RE = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")
_CURVE_STEPS = 24


def draw_svg(draw, markup: str, box: tuple[float, float, float, float]) -> None:
    """Rasterize restricted SVG markup into the pixel box (x, y, w, h)."""
    root = ET.fromstring(markup)
    viewbox = _parse_viewbox(root)
    bx, by, bw, bh = box
    vx, vy, vw, vh = viewbox
    scale = min(bw / vw, bh / vh) if vw > 0 and vh > 0 else 1.0
    # center the viewBox in the target box, preserving aspect
    tx = bx + (bw - vw * scale) / 2 - vx * scale
    ty = by + (bh - vh * scale) / 2 - vy * scale
    ctm = (scale, scale, tx, ty)
    style = {"fill": (0, 0, 0, 255), "stroke": None, "stroke_width": 1.0}
    for child in root:
        _render_node(draw, child, ctm, style)


def _parse_viewbox(root) -> tuple[float, float, float, float]:
    raw = root.get("viewBox")
    if raw:
        nums = [float(n) for n in _NUM_RE.findall(raw)]
        if len(nums) == 4 and nums[2] > 0 and nums[3] > 0:
            return (nums[0], nums[1], nums[2], nums[3])
    return (0.0, 0.0, 100.0, 100.0)


def _local_name(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _apply_ctm(ctm, x: float, y: float) -> tuple[float, float]:
    sx, sy, tx, ty = ctm
    return (x * sx + tx, y * sy + ty)


def _child_ctm(ctm, transform: str | None):
    if not transform:
        return ctm
    sx, sy, tx, ty = ctm
    for name, args in re.findall(r"(translate|scale)\s*\(([^)]*)\)", transform):
        nums = [float(n) for n in _NUM_RE.findall(args)]
        if name == "translate" and nums:
            dx = nums[0]
            dy = nums[1] if len(nums) > 1 else 0.0
            tx, ty = tx + dx * sx, ty + dy * sy
        elif name == "scale" and nums:
            fx = nums[0]
            fy = nums[1] if len(nums) > 1 else fx
            sx, sy = sx * fx, sy * fy
    return (sx, sy, tx, ty)


def _node_style(node, inherited: dict) -> dict:
    style = dict(inherited)
    if node.get("fill") is not None:
        style["fill"] = parse_color(node.get("fill"))
    if node.get("stroke") is not None:
        style["stroke"] = parse_color(node.get("stroke"))
    if node.get("stroke-width") is not None:
        try:
            style["stroke_width"] = float(node.get("stroke-width"))
        except ValueError:
            pass
    return style


def _render_node(draw, node, ctm, inherited: dict) -> None:
    name = _local_name(node.tag)
    if name in ("title", "desc"):
        return
    style = _node_style(node, inherited)
    ctm = _child_ctm(ctm, node.get("transform"))
    if name in ("g", "svg"):
        for child in node:
            _render_node(draw, child, ctm, style)
        return

    sx = ctm[0]
    wpx = max(1, round(style["stroke_width"] * abs(sx)))
    fill, stroke = style["fill"], style["stroke"]

    def fget(attr, default=0.0):
        try:
            return float(node.get(attr, default))
        except (TypeError, ValueError):
            return default

    if name == "rect":
        x, y = fget("x"), fget("y")
        rw, rh = fget("width"), fget("height")
        p0 = _apply_ctm(ctm, x, y)
        p1 = _apply_ctm(ctm, x + rw, y + rh)
        bbox = [min(p0[0], p1[0]), min(p0[1], p1[1]), max(p0[0], p1[0]), max(p0[1], p1[1])]
        draw.rectangle(bbox, fill=fill, outline=stroke, width=wpx)
    elif name in ("circle", "ellipse"):
        cx, cy = fget("cx"), fget("cy")
        if name == "circle":
            rx = ry = fget("r")
        else:
            rx, ry = fget("rx"), fget("ry")
        p0 = _apply_ctm(ctm, cx - rx, cy - ry)
        p1 = _apply_ctm(ctm, cx + rx, cy + ry)
        bbox = [min(p0[0], p1[0]), min(p0[1], p1[1]), max(p0[0], p1[0]), max(p0[1], p1[1])]
        draw.ellipse(bbox, fill=fill, outline=stroke, width=wpx)
    elif name == "line":
        p0 = _apply_ctm(ctm, fget("x1"), fget("y1"))
        p1 = _apply_ctm(ctm, fget("x2"), fget("y2"))
        draw.line([p0, p1], fill=stroke or fill or (0, 0, 0, 255), width=wpx)
    elif name in ("polyline", "polygon"):
        nums = [float(n) for n in _NUM_RE.findall(node.get("points", ""))]
        pts = [_apply_ctm(ctm, nums[i], nums[i + 1]) for i in range(0, len(nums) - 1, 2)]
        if len(pts) < 2:
            return
        if name == "polygon":
            draw.polygon(pts, fill=fill, outline=stroke)
        else:
            draw.line(pts, fill=stroke or (0, 0, 0, 255), width=wpx, joint="curve")
    elif name == "path":
        for pts, closed in _flatten_path(node.get("d", "")):
            tpts = [_apply_ctm(ctm, x, y) for x, y in pts]
            if len(tpts) < 2:
                continue
            if closed and fill:
                draw.polygon(tpts, fill=fill, outline=stroke)
            elif closed:
                draw.polygon(tpts, fill=None, outline=stroke or (0, 0, 0, 255))
            else:
                if fill and len(tpts) > 2:
                    draw.polygon(tpts, fill=fill)
                if stroke or not fill:
                    draw.line(tpts, fill=stroke or (0, 0, 0, 255), width=wpx, joint="curve")


def _flatten_path(d: str) -> list[tuple[list[tuple[float, float]], bool]]:
    """Flatten a path's M/L/H/V/C/Q/Z commands into polyline subpaths."""
    tokens = re.findall(r"[MmLlHhVvCcQqZz]|" + _NUM_RE.pattern, d)
    subpaths: list[tuple[list[tuple[float, float]], bool]] = []
    pts: list[tuple[float, float]] = []
    cx = cy = 0.0
    start = (0.0, 0.0)
    i = 0
    cmd = ""

    def take(n):
        nonlocal i
        vals = [float(t) for t in tokens[i : i + n]]
        i += n
        return vals

    while i < len(tokens):
        tok = tokens[i]
        if tok.isalpha():
            cmd = tok
            i += 1
            if cmd in "Zz":
                if pts:
                    subpaths.append((pts, True))
                    cx, cy = start
                    pts = []
                continue
        elif not cmd:
            break
        rel = cmd.islower()
        op = cmd.upper()
        try:
            if op == "M":
                (x, y) = take(2)
                if rel:
                    x, y = cx + x, cy + y
                if pts:
                    subpaths.append((pts, False))
                cx, cy = x, y
                start = (x, y)
                pts = [(x, y)]
                cmd = "l" if rel else "L"
            elif op == "L":
                (x, y) = take(2)
                if rel:
                    x, y = cx + x, cy + y
                cx, cy = x, y
                pts.append((x, y))
            elif op == "H":
                (x,) = take(1)
                cx = cx + x if rel else x
                pts.append((cx, cy))
            elif op == "V":
                (y,) = take(1)
                cy = cy + y if rel else y
                pts.append((cx, cy))
            elif op in ("C", "Q"):
                n = 6 if op == "C" else 4
                vals = take(n)
                if rel:
                    vals = [v + (cx if k % 2 == 0 else cy) for k, v in enumerate(vals)]
                ctrl = [(vals[k], vals[k + 1]) for k in range(0, n, 2)]
                pts.extend(_bezier((cx, cy), ctrl))
                cx, cy = ctrl[-1]
            else:
                break
        except (ValueError, IndexError):
            break
    if pts:
        subpaths.append((pts, False))
    return subpaths


def _bezier(p0, ctrl) -> list[tuple[float, float]]:
    points = [p0] + ctrl
    out = []
    for step in range(1, _CURVE_STEPS + 1):
        t = step / _CURVE_STEPS
        layer = points
        while len(layer) > 1:
            layer = [
                ((1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1])
                for a, b in zip(layer, layer[1:])
            ]
        out.append(layer[0])
    return out


def white_image_png(width_px: int, height_px: int) -> bytes:
    return encode_png(Image.new("RGB", (width_px, height_px), (255, 255, 255)))


def luminance_bounds(png: bytes) -> tuple[int, int]:
    """Min/max grayscale values of a PNG, handy for geometry checks."""
    img = Image.open(io.BytesIO(png)).convert("L")
    lo, hi = img.getextrema()
    return (lo, hi)


def is_blank(png: bytes) -> bool:
    lo, hi = luminance_bounds(png)
    return lo == 255 and hi == 255


def approx_length(points: list[tuple[float, float]]) -> float:
    return sum(
        math.dist(points[k], points[k + 1]) for k in range(len(points) - 1)
    )
