"""JSON documents for foldings, loops, polylines, stick diagrams and reports.

Every document carries ``"format": "orikami/1"``. Writing goes through a
temporary file in the target directory followed by a rename, and the output
is canonical, so write -> read -> write reproduces the same bytes.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from .folding import Folding, PaperLoop, SpatialPolyline, build_pattern
from .geometry import RigidEmbedding

FORMAT = "orikami/1"


class SchemaError(ValueError):
    pass


def _require(data: Any, key: str, where: str):
    if not isinstance(data, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    if key not in data:
        raise SchemaError(f"{where}: missing key '{key}'")
    return data[key]


def _check_format(data: dict, where: str):
    fmt = data.get("format", FORMAT) if isinstance(data, dict) else None
    if fmt != FORMAT:
        raise SchemaError(f"{where}: unsupported format {fmt!r} under key 'format'")


def _array(value, where: str, key: str, width: int | None = None) -> np.ndarray:
    try:
        arr = np.array(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{where}: key '{key}' is not numeric") from exc
    if width is not None and (arr.ndim != 2 or arr.shape[1] != width):
        if not (arr.size == 0 and width):
            raise SchemaError(f"{where}: key '{key}' must be a list of {width}-vectors")
        arr = arr.reshape(0, width)
    return arr


# --------------------------------------------------------------------------


def folding_to_dict(f: Folding) -> dict:
    p = f.pattern
    return {
        "format": FORMAT,
        "vertices": p.vertices.tolist(),
        "creases": [list(c) for c in p.creases],
        "faces": [list(face) for face in p.faces],
        "face_maps": [{"linear": m.linear.tolist(), "translation": m.translation.tolist()} for m in f.face_maps],
    }


def folding_from_dict(data: dict) -> Folding:
    where = "folding"
    _check_format(data, where)
    verts = _array(_require(data, "vertices", where), where, "vertices", 2)
    creases = [tuple(int(i) for i in c) for c in _require(data, "creases", where)]
    faces = data.get("faces")
    maps = []
    for k, m in enumerate(_require(data, "face_maps", where)):
        lin = _array(_require(m, "linear", f"{where}.face_maps[{k}]"), where, f"face_maps[{k}].linear")
        tr = _array(_require(m, "translation", f"{where}.face_maps[{k}]"), where, f"face_maps[{k}].translation")
        if lin.shape != (3, 2) or tr.shape != (3,):
            raise SchemaError(f"{where}: key 'face_maps[{k}]' needs a 3x2 'linear' and a 3-vector 'translation'")
        maps.append(RigidEmbedding(lin, tr))
    pattern = build_pattern(verts, creases, faces)
    return Folding(pattern, tuple(maps))


def loop_to_dict(loop: PaperLoop) -> dict:
    return {"format": FORMAT, "waypoints": loop.waypoints.tolist()}


def loop_from_dict(data: dict) -> PaperLoop:
    _check_format(data, "loop")
    return PaperLoop(_array(_require(data, "waypoints", "loop"), "loop", "waypoints", 2))


def polyline_to_dict(pl: SpatialPolyline) -> dict:
    return {"format": FORMAT, "waypoints": pl.waypoints.tolist(), "injective": bool(pl.injective)}


def polyline_from_dict(data: dict) -> SpatialPolyline:
    _check_format(data, "polyline")
    pts = _array(_require(data, "waypoints", "polyline"), "polyline", "waypoints", 3)
    return SpatialPolyline.from_points(pts)


def sticks_from_dict(data: dict):
    from .construct import StickDiagram

    _check_format(data, "sticks")
    _require(data, "vertices", "sticks")
    crossings = data.get("crossings", [])
    for k, c in enumerate(crossings):
        _require(c, "edges", f"sticks.crossings[{k}]")
        _require(c, "over", f"sticks.crossings[{k}]")
    return StickDiagram.from_dict(data)


# --------------------------------------------------------------------------


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_json(path: str | os.PathLike, data: dict) -> Path:
    """Write canonical JSON atomically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dumps(data))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def write_text(path: str | os.PathLike, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def read_json(path: str | os.PathLike) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")
    return data


def read_folding(path) -> Folding:
    return folding_from_dict(read_json(path))


def read_loop(path) -> PaperLoop:
    return loop_from_dict(read_json(path))


def read_polyline(path) -> SpatialPolyline:
    return polyline_from_dict(read_json(path))


def read_sticks(path):
    return sticks_from_dict(read_json(path))
