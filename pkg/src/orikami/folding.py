"""Crease patterns on the unit square and foldings given as per-face rigid maps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .geometry import (
    GeometryError,
    RigidEmbedding,
    SegmentHit,
    SegmentOverlap,
    Degenerate,
    point_in_polygon,
    point_segment_distance,
    polygon_area,
    polyline_is_simple,
    segment_intersect,
    tolerance,
    trace_faces,
)


class PatternError(GeometryError):
    pass


class NonPlanarError(PatternError):
    pass


class DomainError(GeometryError):
    pass


class FoldingError(GeometryError):
    pass


SQUARE_CORNERS = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))


def _in_square(p, eps: float) -> bool:
    return -eps <= p[0] <= 1 + eps and -eps <= p[1] <= 1 + eps


def _boundary_param(p, eps: float) -> float | None:
    """Position of a boundary point along the square's perimeter in [0, 4), or None."""
    x, y = p
    if abs(y) <= eps:
        return min(max(x, 0.0), 1.0)
    if abs(x - 1) <= eps:
        return 1.0 + min(max(y, 0.0), 1.0)
    if abs(y - 1) <= eps:
        return 2.0 + (1.0 - min(max(x, 0.0), 1.0))
    if abs(x) <= eps:
        return (3.0 + (1.0 - min(max(y, 0.0), 1.0))) % 4.0
    return None


def _canonical_cycle(face: Sequence[int]) -> tuple[int, ...]:
    k = int(np.argmin(face))
    return tuple(face[k:]) + tuple(face[:k])


@dataclass(frozen=True, eq=False)
class CreasePattern:
    vertices: np.ndarray
    creases: tuple[tuple[int, int], ...]
    faces: tuple[tuple[int, ...], ...]
    # crease index -> (left face, right face)
    crease_faces: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def n_creases(self) -> int:
        return len(self.creases)

    def face_polygon(self, k: int) -> np.ndarray:
        return self.vertices[list(self.faces[k])]

    def face_area(self, k: int) -> float:
        return polygon_area(self.face_polygon(k))

    def locate(self, p) -> int:
        """Index of the first face whose closed polygon contains ``p``."""
        eps = tolerance().geom
        p = np.asarray(p, dtype=float)
        if not _in_square(p, eps):
            raise DomainError(f"point {p.tolist()} lies outside the unit square")
        for k in range(len(self.faces)):
            if point_in_polygon(p, self.face_polygon(k)):
                return k
        # rounding at the outer boundary; fall back to the nearest face
        dists = [
            min(point_segment_distance(p, poly[i], poly[(i + 1) % len(poly)]) for i in range(len(poly)))
            for poly in (self.face_polygon(k) for k in range(len(self.faces)))
        ]
        return int(np.argmin(dists))

    def adjacent_faces(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {k: set() for k in range(len(self.faces))}
        for a, b in self.crease_faces:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def shares_vertex(self, a: int, b: int) -> bool:
        return bool(set(self.faces[a]) & set(self.faces[b]))


def build_pattern(vertices, creases, faces=None) -> CreasePattern:
    """Build a crease pattern and extract its faces.

    ``vertices`` must lie in the unit square and every crease is a pair of
    vertex indices. Square corners are appended when missing. If ``faces`` is
    given it must agree (as a set of cycles) with the extracted faces; its
    order is then kept, so per-face data stays aligned on reload.
    """
    eps = tolerance().geom
    verts = [tuple(map(float, v)) for v in vertices]
    for v in verts:
        if len(v) != 2 or not all(math.isfinite(c) for c in v):
            raise PatternError(f"bad vertex {v!r}")
        if not _in_square(v, eps):
            raise DomainError(f"vertex {v} lies outside the unit square")
    for c in SQUARE_CORNERS:
        if not any(abs(v[0] - c[0]) <= eps and abs(v[1] - c[1]) <= eps for v in verts):
            verts.append(c)
    V = np.array(verts, dtype=float)
    n = len(V)
    for i in range(n):
        for j in range(i + 1, n):
            if np.linalg.norm(V[i] - V[j]) <= eps:
                raise PatternError(f"vertices {i} and {j} coincide")

    cr: list[tuple[int, int]] = []
    seen = set()
    for e in creases:
        i, j = int(e[0]), int(e[1])
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise PatternError(f"invalid crease {e!r}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise PatternError(f"duplicate crease {e!r}")
        seen.add(key)
        pi, pj = _boundary_param(V[i], eps), _boundary_param(V[j], eps)
        if pi is not None and pj is not None:
            mid = 0.5 * (V[i] + V[j])
            if _boundary_param(mid, eps) is not None:
                raise PatternError(f"crease {e!r} runs along the square boundary")
        cr.append((i, j))

    # planarity: creases meet only at shared endpoints, no T-junctions
    for a in range(len(cr)):
        for b in range(a + 1, len(cr)):
            ea, eb = cr[a], cr[b]
            shared = set(ea) & set(eb)
            hit = segment_intersect((V[ea[0]], V[ea[1]]), (V[eb[0]], V[eb[1]]))
            if hit is None:
                continue
            if isinstance(hit, SegmentOverlap):
                raise NonPlanarError(f"creases {ea} and {eb} overlap")
            if shared and isinstance(hit, (SegmentHit, Degenerate)):
                s = V[next(iter(shared))]
                pt = np.array(hit.point) if isinstance(hit, SegmentHit) else s
                if np.linalg.norm(pt - s) <= 10 * eps:
                    continue
            raise NonPlanarError(f"creases {ea} and {eb} cross without a shared vertex")
    for k, (i, j) in enumerate(cr):
        for v in range(n):
            if v in (i, j):
                continue
            if point_segment_distance(V[v], V[i], V[j]) <= eps:
                raise NonPlanarError(f"vertex {v} lies on the interior of crease {(i, j)}")

    # boundary edges between consecutive boundary vertices
    on_boundary = sorted(
        ((_boundary_param(V[v], eps), v) for v in range(n) if _boundary_param(V[v], eps) is not None),
    )
    bnd = [(on_boundary[k][1], on_boundary[(k + 1) % len(on_boundary)][1]) for k in range(len(on_boundary))]

    for v in range(n):
        if not any(v in e for e in list(cr) + bnd):
            raise PatternError(f"vertex {v} is isolated")
    cycles, halfedge_face = trace_faces(V, list(cr) + bnd)
    traced = [_canonical_cycle(c) for c in cycles]
    area = sum(polygon_area(V[list(f)]) for f in traced)
    if abs(area - 1.0) > max(eps, 1e-12) * max(1, len(traced)):
        raise PatternError(f"faces cover area {area}, not 1")

    if faces is not None:
        given = [_canonical_cycle([int(x) for x in f]) for f in faces]
        if sorted(given) != sorted(traced):
            raise PatternError("listed faces do not match the faces of the crease graph")
        remap = {f: k for k, f in enumerate(given)}
        halfedge_face = {he: remap[traced[fid]] for he, fid in halfedge_face.items()}
        traced = given

    crease_faces = []
    for i, j in cr:
        fa, fb = halfedge_face.get((i, j)), halfedge_face.get((j, i))
        if fa is None or fb is None or fa == fb:
            raise PatternError(f"crease {(i, j)} does not separate two distinct faces")
        crease_faces.append((fa, fb))
    V.setflags(write=False)
    return CreasePattern(V, tuple(cr), tuple(traced), tuple(crease_faces))


# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Folding:
    pattern: CreasePattern
    face_maps: tuple[RigidEmbedding, ...]

    def __post_init__(self):
        maps = tuple(self.face_maps)
        if len(maps) != len(self.pattern.faces):
            raise FoldingError(f"{len(maps)} face maps for {len(self.pattern.faces)} faces")
        object.__setattr__(self, "face_maps", maps)

    def face_image(self, k: int) -> np.ndarray:
        return self.face_maps[k](self.pattern.face_polygon(k))


@dataclass
class ValidationReport:
    orthonormality_defects: list[tuple[int, float]] = field(default_factory=list)
    crease_defects: list[tuple[int, float]] = field(default_factory=list)
    spurious_creases: list[int] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not (self.orthonormality_defects or self.crease_defects or self.spurious_creases)

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "orthonormality_defects": [{"face": f, "defect": d} for f, d in self.orthonormality_defects],
            "crease_defects": [{"crease": c, "defect": d} for c, d in self.crease_defects],
            "spurious_creases": list(self.spurious_creases),
        }


def validate_folding(f: Folding, strict: bool = False) -> ValidationReport:
    tol = tolerance()
    report = ValidationReport()
    for k, m in enumerate(f.face_maps):
        d = m.orthonormality_defect()
        if d > tol.iso:
            report.orthonormality_defects.append((k, d))
    V = f.pattern.vertices
    for c, ((i, j), (fa, fb)) in enumerate(zip(f.pattern.creases, f.pattern.crease_faces)):
        ma, mb = f.face_maps[fa], f.face_maps[fb]
        d = max(float(np.linalg.norm(ma(V[i]) - mb(V[i]))), float(np.linalg.norm(ma(V[j]) - mb(V[j]))))
        if d > tol.iso:
            report.crease_defects.append((c, d))
        if strict and ma.close_to(mb, 10 * tol.iso):
            report.spurious_creases.append(c)
    return report


def crease_edge_count(f: Folding | CreasePattern) -> int:
    pattern = f.pattern if isinstance(f, Folding) else f
    return pattern.n_creases


def fold_point(f: Folding, p) -> np.ndarray:
    return f.face_maps[f.pattern.locate(p)](np.asarray(p, dtype=float))


# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PaperLoop:
    waypoints: np.ndarray

    def __post_init__(self):
        w = np.array(self.waypoints, dtype=float)
        if w.ndim != 2 or w.shape[1] != 2 or len(w) < 3:
            raise GeometryError("a paper loop needs at least three plane waypoints")
        eps = tolerance().geom
        for p in w:
            if not _in_square(p, eps):
                raise DomainError(f"loop waypoint {p.tolist()} lies outside the unit square")
        if not polyline_is_simple(w, closed=True):
            raise GeometryError("paper loop is not simple")
        w.setflags(write=False)
        object.__setattr__(self, "waypoints", w)

    def length(self) -> float:
        return polyline_length(self.waypoints)


@dataclass(frozen=True, eq=False)
class SpatialPolyline:
    waypoints: np.ndarray
    injective: bool

    def __post_init__(self):
        w = np.array(self.waypoints, dtype=float)
        if w.ndim != 2 or w.shape[1] != 3:
            raise GeometryError("spatial polyline waypoints must be 3-vectors")
        w.setflags(write=False)
        object.__setattr__(self, "waypoints", w)

    @classmethod
    def from_points(cls, points) -> "SpatialPolyline":
        pts = np.asarray(points, dtype=float)
        return cls(pts, polyline_is_simple(pts, closed=True))

    def length(self) -> float:
        return polyline_length(self.waypoints)


def polyline_length(points, closed: bool = True) -> float:
    p = np.asarray(points, dtype=float)
    q = np.roll(p, -1, axis=0) if closed else p[1:]
    p = p if closed else p[:-1]
    return float(np.sum(np.linalg.norm(q - p, axis=1)))


def _crease_params(f: Folding, a: np.ndarray, b: np.ndarray) -> list[float]:
    V = f.pattern.vertices
    ts = [0.0, 1.0]
    d = b - a
    dd = float(d @ d)
    for i, j in f.pattern.creases:
        hit = segment_intersect((a, b), (V[i], V[j]))
        if hit is None:
            continue
        if isinstance(hit, SegmentHit):
            ts.append(hit.t_a)
        elif isinstance(hit, SegmentOverlap):
            for q in (hit.start, hit.end):
                ts.append(float((np.asarray(q) - a) @ d / dd))
        else:
            for q in (V[i], V[j]):
                ts.append(min(1.0, max(0.0, float((q - a) @ d / dd))))
    return sorted(ts)


def fold_loop(f: Folding, loop: PaperLoop) -> SpatialPolyline:
    """Image of a paper loop, subdivided wherever it crosses a crease."""
    eps = tolerance().geom
    w = loop.waypoints
    out: list[np.ndarray] = []
    for k in range(len(w)):
        a, b = w[k], w[(k + 1) % len(w)]
        seglen = float(np.linalg.norm(b - a))
        ts = _crease_params(f, a, b)
        for t0, t1 in zip(ts[:-1], ts[1:]):
            if (t1 - t0) * seglen <= eps:
                continue
            face = f.pattern.locate(a + 0.5 * (t0 + t1) * (b - a))
            out.append(f.face_maps[face](a + t0 * (b - a)))
    return SpatialPolyline.from_points(np.array(out))
