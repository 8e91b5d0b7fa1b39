"""Canonical serialization of canvas documents.

Schema (version 1):

    {"version": 1,
     "strokes": [{"stroke_id", "points", "color", "width", "element_tag"}],
     "helpers": [{"helper_id", "label", "svg_body", "position", "scale"}],
     "revision": N}

Field order is fixed and floats carry six decimal digits, so
serialize(deserialize(b)) == b for any b produced here.
"""

import json

from .. import canonjson
from ..errors import InvalidHelper, InvalidStroke, MalformedDocument
from .model import CanvasDocument, HelperObject, Stroke

SCHEMA_VERSION = 1


def doc_to_jsonable(doc: CanvasDocument) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "strokes": [
            {
                "stroke_id": s.stroke_id,
                "points": [[x, y] for x, y in s.points],
                "color": s.color,
                "width": s.width,
                "element_tag": s.element_tag,
            }
            for s in doc.strokes
        ],
        "helpers": [
            {
                "helper_id": h.helper_id,
                "label": h.label,
                "svg_body": h.svg_body,
                "position": [h.position[0], h.position[1]],
                "scale": h.scale,
            }
            for h in doc.helpers
        ],
        "revision": doc.revision,
    }


def serialize(doc: CanvasDocument) -> bytes:
    return canonjson.dumps_bytes(doc_to_jsonable(doc))


def doc_from_jsonable(data) -> CanvasDocument:
    if not isinstance(data, dict):
        raise MalformedDocument("document must be an object")
    if data.get("version") != SCHEMA_VERSION:
        raise MalformedDocument(f"unsupported document version {data.get('version')!r}")
    for key in ("strokes", "helpers", "revision"):
        if key not in data:
            raise MalformedDocument(f"missing field {key!r}")
    try:
        strokes = tuple(
            Stroke(
                stroke_id=s["stroke_id"],
                points=tuple((p[0], p[1]) for p in s["points"]),
                color=s["color"],
                width=s["width"],
                element_tag=s.get("element_tag"),
            )
            for s in data["strokes"]
        )
        helpers = tuple(
            HelperObject(
                helper_id=h["helper_id"],
                label=h["label"],
                svg_body=h["svg_body"],
                position=(h["position"][0], h["position"][1]),
                scale=h["scale"],
            )
            for h in data["helpers"]
        )
    except (InvalidStroke, InvalidHelper, KeyError, TypeError, IndexError) as exc:
        raise MalformedDocument(f"bad document content: {exc}") from exc
    revision = data["revision"]
    if not isinstance(revision, int) or revision < 0:
        raise MalformedDocument(f"bad revision {revision!r}")
    return CanvasDocument(strokes=strokes, helpers=helpers, revision=revision)


def deserialize(payload: bytes | str) -> CanvasDocument:
    if isinstance(payload, bytes):
        payload = payload.decode("utf-8", errors="strict")
    try:
        data = json.loads(payload)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from exc
    return doc_from_jsonable(data)
