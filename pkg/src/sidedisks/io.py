"""Polygon and scalar JSON encoding.

Scalars are written as ``"p/q"`` strings (or plain integers as strings) so
round trips are exact. On input decimal strings like ``"0.25"`` also work.
"""
from __future__ import annotations

import json

from gmpy2 import mpq

from .geom import Point
from .poly import ConvexPolygon, PolygonError, validate
from .qext import QuadExt, as_scalar

__all__ = [
    "InputError", "scalar_str", "parse_scalar", "point_json", "parse_point",
    "polygon_to_json", "polygon_from_json", "load_polygon", "dumps",
]


class InputError(ValueError):
    """Malformed user input (bad JSON, bad scalar, invalid polygon)."""


def scalar_str(v) -> str:
    if isinstance(v, QuadExt):
        return str(v)
    q = mpq(v)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_scalar(s):
    if isinstance(s, bool) or s is None:
        raise InputError(f"not a scalar: {s!r}")
    if isinstance(s, float):
        raise InputError("floats are not accepted; write the number as a string")
    try:
        return as_scalar(s)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a scalar: {s!r}") from exc


def point_json(p: Point) -> list[str]:
    return [scalar_str(p.x), scalar_str(p.y)]


def parse_point(v) -> Point:
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise InputError(f"a point is a pair of scalars, got {v!r}")
    return Point(parse_scalar(v[0]), parse_scalar(v[1]))


def polygon_to_json(p: ConvexPolygon) -> dict:
    out = {"kind": p.kind, "vertices": [point_json(v) for v in p.vertices]}
    if not p.bounded:
        out["first_dir"] = point_json(p.first_dir)
        out["last_dir"] = point_json(p.last_dir)
    return out


def polygon_from_json(obj) -> ConvexPolygon:
    if not isinstance(obj, dict):
        raise InputError("polygon must be a JSON object")
    kind = obj.get("kind", "bounded")
    verts = obj.get("vertices")
    if not isinstance(verts, list):
        raise InputError("missing 'vertices' list")
    pts = [parse_point(v) for v in verts]
    normalize = bool(obj.get("normalize", False))
    try:
        if kind == "bounded":
            return validate(pts, normalize=normalize)
        if kind == "unbounded":
            if "first_dir" not in obj or "last_dir" not in obj:
                raise InputError("unbounded polygon needs first_dir and last_dir")
            return validate(pts, parse_point(obj["first_dir"]), parse_point(obj["last_dir"]),
                            normalize=normalize)
    except PolygonError as exc:
        raise InputError(f"invalid polygon: {exc}") from exc
    raise InputError(f"unknown polygon kind {kind!r}")


def load_polygon(text: str) -> ConvexPolygon:
    """Parse polygon JSON; syntax errors report line and column."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return polygon_from_json(obj)


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
