"""Canonical JSON for build artifacts.

Every artifact the pipeline writes must be byte-identical across runs, so
instead of relying on library defaults the encoder is pinned: keys sorted,
compact separators, UTF-8 pass-through (no \\uXXXX escapes beyond control
characters), floats at 17 significant digits (lossless for 64-bit floats),
a single trailing LF.  Reading uses the stdlib parser plus a schema-version
check (every artifact carries a ``"schema": "<kind>/<version>"`` field).
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .errors import SchemaError

_ESCAPES = {
    '"': '\\"',
    "\\": "\\\\",
    "\b": "\\b",
    "\f": "\\f",
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
}


def format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"non-finite float {value!r} cannot be serialized")
    return format(value, ".17g")


def _encode_str(s: str, out: list[str]) -> None:
    out.append('"')
    for ch in s:
        esc = _ESCAPES.get(ch)
        if esc is not None:
            out.append(esc)
        elif ch < "\x20":
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')


def _encode(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        _encode_str(obj, out)
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for key in sorted(obj):
            if not isinstance(key, str):
                raise TypeError(f"object keys must be str, got {type(key).__name__}")
            if not first:
                out.append(",")
            first = False
            _encode_str(key, out)
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _encode(item, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Canonical JSON text for ``obj`` (no trailing newline)."""
    out: list[str] = []
    _encode(obj, out)
    return "".join(out)


def dump_bytes(obj: Any) -> bytes:
    return (dumps(obj) + "\n").encode("utf-8")


def dump_jsonl(rows: list[Any]) -> bytes:
    """One canonical-JSON object per line, LF endings."""
    return "".join(dumps(row) + "\n" for row in rows).encode("utf-8")


def check_schema(payload: Any, kind: str) -> dict:
    """Validate the ``schema`` field of a loaded artifact."""
    if not isinstance(payload, dict):
        raise SchemaError(f"expected a JSON object for {kind!r} artifact")
    found = payload.get("schema")
    if found is None:
        raise SchemaError(f"artifact has no schema field (expected {kind!r})")
    if found != kind:
        raise SchemaError(f"schema version mismatch: found {found!r}, expected {kind!r}")
    return payload


def write_artifact(path: Path | str, kind: str, payload: dict) -> None:
    body = dict(payload)
    body["schema"] = kind
    Path(path).write_bytes(dump_bytes(body))


def read_artifact(path: Path | str, kind: str) -> dict:
    with open(path, "rb") as fh:
        payload = json.load(fh)
    return check_schema(payload, kind)
