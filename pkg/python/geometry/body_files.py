"""Body definition files.

A pair file holds the dimension, an optional exponent and the two bodies::

    {"n": 2, "p": 2, "K": {"kind": "ball", "radius": 1}, "L": {...}}

Body kinds and their fields:

    ball       radius, dim (defaults to the file's n)
    hpolytope  rows: [{"a": [...], "b": b}, ...]
    polygon2d  vertices: [[x, y], ...] counterclockwise
    cone       alpha, eps (default 0), R (default null = untruncated), dim

Every violation is reported with the JSON path of the offending field,
e.g. ``K.vertices[2]``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

from python.errors import BMGaussError, SchemaError
from python.geometry.bodies import Ball, Body, HPolytope, Polygon2D, TruncatedCone, body_dim

KINDS = ("ball", "hpolytope", "polygon2d", "cone")


@dataclass(frozen=True)
class BodyPairFile:
    n: int
    p: Optional[float]
    K: Body
    L: Body
    source: str = ""


def _number(obj: Dict[str, Any], key: str, path: str, default: Any = ..., allow_null: bool = False) -> Optional[float]:
    if key not in obj:
        if default is ...:
            raise SchemaError(f"{path}.{key}" if path else key, "missing required field")
        return default
    value = obj[key]
    field_path = f"{path}.{key}" if path else key
    if value is None and allow_null:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(field_path, f"expected a number, got {type(value).__name__}")
    if not math.isfinite(float(value)):
        raise SchemaError(field_path, "must be finite")
    return float(value)


def _integer(obj: Dict[str, Any], key: str, path: str, default: Any = ...) -> int:
    value = _number(obj, key, path, default)
    field_path = f"{path}.{key}" if path else key
    if value is None or float(value) != int(value):
        raise SchemaError(field_path, "expected an integer")
    return int(value)


def _vector(value: Any, path: str, length: Optional[int] = None) -> tuple:
    if not isinstance(value, list):
        raise SchemaError(path, f"expected a list of numbers, got {type(value).__name__}")
    if length is not None and len(value) != length:
        raise SchemaError(path, f"expected {length} coordinates, got {len(value)}")
    out = []
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(float(v)):
            raise SchemaError(f"{path}[{i}]", "expected a finite number")
        out.append(float(v))
    return tuple(out)


def parse_body(obj: Any, path: str, n: int) -> Body:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"{path}.kind", f"expected one of {', '.join(KINDS)}, got {kind!r}")
    try:
        if kind == "ball":
            return Ball(_number(obj, "radius", path), _integer(obj, "dim", path, n))
        if kind == "cone":
            r = _number(obj, "R", path, None, allow_null=True)
            return TruncatedCone(
                _number(obj, "alpha", path),
                _number(obj, "eps", path, 0.0),
                math.inf if r is None else r,
                _integer(obj, "dim", path, n),
            )
        if kind == "polygon2d":
            verts = obj.get("vertices")
            if not isinstance(verts, list):
                raise SchemaError(f"{path}.vertices", "expected a list of [x, y] pairs")
            return Polygon2D(tuple(_vector(v, f"{path}.vertices[{i}]", 2) for i, v in enumerate(verts)))
        rows = obj.get("rows")
        if not isinstance(rows, list) or not rows:
            raise SchemaError(f"{path}.rows", "expected a nonempty list of {a, b} rows")
        normals, offsets = [], []
        for i, row in enumerate(rows):
            row_path = f"{path}.rows[{i}]"
            if not isinstance(row, dict):
                raise SchemaError(row_path, "expected an object with a and b")
            if "a" not in row:
                raise SchemaError(f"{row_path}.a", "missing required field")
            normals.append(_vector(row["a"], f"{row_path}.a", n))
            offsets.append(_number(row, "b", row_path))
        return HPolytope(tuple(normals), tuple(offsets))
    except SchemaError:
        raise
    except BMGaussError as exc:
        raise SchemaError(path, str(exc)) from exc


def parse_pair(doc: Any, source: str = "") -> BodyPairFile:
    if not isinstance(doc, dict):
        raise SchemaError("", "top level must be an object")
    n = _integer(doc, "n", "")
    if n < 2:
        raise SchemaError("n", "dimension must be >= 2")
    p = _number(doc, "p", "", None, allow_null=True)
    bodies = {}
    for key in ("K", "L"):
        if key not in doc:
            raise SchemaError(key, "missing required field")
        body = parse_body(doc[key], key, n)
        if body_dim(body) != n:
            raise SchemaError(key, f"body dimension {body_dim(body)} does not match n={n}")
        bodies[key] = body
    return BodyPairFile(n=n, p=p, K=bodies["K"], L=bodies["L"], source=source)


def load_body_pair(path: str | Path) -> BodyPairFile:
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read body file {file_path}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"{file_path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return parse_pair(doc, source=str(file_path))


def body_to_dict(body: Body) -> Dict[str, Any]:
    if isinstance(body, Ball):
        return {"kind": "ball", "radius": body.radius, "dim": body.dim}
    if isinstance(body, TruncatedCone):
        return {
            "kind": "cone",
            "alpha": body.alpha,
            "eps": body.eps,
            "R": body.R if math.isfinite(body.R) else None,
            "dim": body.dim,
        }
    if isinstance(body, Polygon2D):
        return {"kind": "polygon2d", "vertices": [list(v) for v in body.vertices]}
    if isinstance(body, HPolytope):
        return {"kind": "hpolytope", "rows": [{"a": list(a), "b": b} for a, b in zip(body.normals, body.offsets)]}
    raise SchemaError("", "combinations are not serializable")
