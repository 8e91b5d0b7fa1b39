"""Canonical JSON emitter.

All persisted artifacts (canvas documents, event log records, session
snapshots) must re-serialize byte-identically, so floats are rendered with
exactly six decimal digits and dict key order is taken as given (builders
are responsible for constructing dicts in canonical field order and for
sorting map-like dicts by key).
"""

import json
import math


def dumps(value) -> str:
    out: list[str] = []
    _emit(value, out)
    return "".join(out)


def dumps_bytes(value) -> bytes:
    return dumps(value).encode("utf-8")


def _emit(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError("non-finite float in canonical JSON")
        out.append(f"{value:.6f}")
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _emit(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        for i, (key, item) in enumerate(value.items()):
            if i:
                out.append(",")
            if not isinstance(key, str):
                raise TypeError(f"non-string key {key!r} in canonical JSON")
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(":")
            _emit(item, out)
        out.append("}")
    else:
        raise TypeError(f"cannot canonicalize {type(value).__name__}")
