"""Cone foldings realising a stick diagram.

A stick diagram is coned off to an apex lifted out of the plane until the
angles between consecutive spokes sum to a full turn. The cone then unrolls
into the unit square as ``n`` wedges around the centre, the spokes become the
creases, and the polygon of spoke tips is a paper loop whose image is the
diagram. Over-strands are pushed up by small detours toward the apex.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .folding import CreasePattern, Folding, PaperLoop, build_pattern, validate_folding
from .geometry import (
    GeometryError,
    SegmentHit,
    SegmentOverlap,
    angle_between,
    embedding_from_triangles,
    point_in_polygon,
    point_segment_distance,
    polygon_area,
    segment_intersect,
    tolerance,
    trace_faces,
)
from .knotid import KnotDiagram, diagram_from_planar

DETOUR_SEGMENTS = 8
PAPER_RADIUS = 0.45


class StickDiagramError(GeometryError):
    pass


class ConstructionError(GeometryError):
    pass


def double_points(vertices) -> dict[frozenset, tuple[float, float, np.ndarray]]:
    """Transversal double points of a closed polygon, keyed by edge pair.

    Values are the parameters along both edges (lower index first) and the
    point. Raises on overlaps or on crossings through a vertex.
    """
    V = np.asarray(vertices, dtype=float)
    n = len(V)
    eps = tolerance().geom
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            hit = segment_intersect((V[i], V[(i + 1) % n]), (V[j], V[(j + 1) % n]))
            if adjacent:
                if isinstance(hit, SegmentOverlap):
                    raise StickDiagramError(f"edges {i} and {j} overlap")
                continue
            if hit is None:
                continue
            if not isinstance(hit, SegmentHit):
                raise StickDiagramError(f"edges {i} and {j} meet non-transversally")
            if min(hit.t_a, 1 - hit.t_a, hit.t_b, 1 - hit.t_b) <= eps:
                raise StickDiagramError(f"edges {i} and {j} meet at a vertex")
            out[frozenset((i, j))] = (hit.t_a, hit.t_b, np.array(hit.point))
    return out


@dataclass(frozen=True, eq=False)
class StickDiagram:
    """Closed plane polygon with over/under data at its double points.

    Edge ``i`` joins ``vertices[i]`` to ``vertices[i + 1]`` (cyclically).
    ``crossings`` maps each crossing edge pair ``frozenset({i, j})`` to the
    index of the edge passing over.
    """

    vertices: np.ndarray
    crossings: Mapping[frozenset, int]

    def __post_init__(self):
        V = np.array(self.vertices, dtype=float)
        if V.ndim != 2 or V.shape[1] != 2 or len(V) < 3:
            raise StickDiagramError("a stick diagram needs at least three plane vertices")
        V.setflags(write=False)
        object.__setattr__(self, "vertices", V)
        cr = {frozenset(map(int, k)): int(v) for k, v in dict(self.crossings).items()}
        object.__setattr__(self, "crossings", cr)
        self._check()

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices[i % self.n], self.vertices[(i + 1) % self.n]

    def intersections(self) -> dict[frozenset, tuple[float, float, np.ndarray]]:
        return double_points(self.vertices)

    def _check(self):
        n = self.n
        for i in range(n):
            a, b = self.edge(i)
            _, c = self.edge(i + 1)
            u, v = b - a, c - b
            if np.linalg.norm(u) <= tolerance().geom:
                raise StickDiagramError(f"edge {i} has zero length")
            if abs(u[0] * v[1] - u[1] * v[0]) <= tolerance().geom * np.linalg.norm(u) * np.linalg.norm(v):
                raise StickDiagramError(f"edges {i} and {(i + 1) % n} are collinear")
        geo = set(self.intersections())
        given = set(self.crossings)
        if geo != given:
            missing = sorted(tuple(sorted(k)) for k in geo - given)
            extra = sorted(tuple(sorted(k)) for k in given - geo)
            raise StickDiagramError(f"crossing data mismatch: missing {missing}, spurious {extra}")
        for k, over in self.crossings.items():
            if over not in k:
                raise StickDiagramError(f"over-edge {over} is not part of crossing {sorted(k)}")

    def reference_diagram(self) -> KnotDiagram:
        """Knot diagram read directly off the plane polygon and its over/under data."""

        def over(i, ti, j, tj):
            return self.crossings[frozenset((i, j))] == i

        return diagram_from_planar(self.vertices, over)

    def with_flipped(self, *pairs) -> "StickDiagram":
        cr = dict(self.crossings)
        for pair in pairs:
            k = frozenset(pair)
            (other,) = k - {cr[k]}
            cr[k] = other
        return StickDiagram(self.vertices, cr)

    def to_dict(self) -> dict:
        return {
            "format": "orikami/1",
            "vertices": self.vertices.tolist(),
            "crossings": [
                {"edges": sorted(k), "over": v} for k, v in sorted(self.crossings.items(), key=lambda kv: sorted(kv[0]))
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "StickDiagram":
        try:
            verts = data["vertices"]
            cr = {frozenset(c["edges"]): c["over"] for c in data.get("crossings", [])}
        except (KeyError, TypeError) as exc:
            raise StickDiagramError(f"malformed stick diagram: missing key {exc}") from exc
        return cls(np.array(verts, dtype=float), cr)

    @classmethod
    def from_json(cls, text: str) -> "StickDiagram":
        return cls.from_dict(json.loads(text))


# --------------------------------------------------------------------------


def angle_sum(s: StickDiagram, apex) -> float:
    """Sum of angles between consecutive spokes from ``apex`` (plane or lifted) to the vertices."""
    q = np.asarray(apex, dtype=float)
    V = s.vertices
    if q.shape == (2,):
        spokes = V - q
    else:
        spokes = np.column_stack([V, np.zeros(len(V))]) - q
    return sum(angle_between(spokes[i], spokes[(i + 1) % len(V)]) for i in range(len(V)))


def clearance(s: StickDiagram, p) -> float:
    return min(point_segment_distance(p, *s.edge(i)) for i in range(s.n))


def arrangement_faces(s: StickDiagram) -> list[np.ndarray]:
    """Bounded faces of the plane arrangement cut out by the polygon."""
    pts = [tuple(v) for v in s.vertices]
    inter = s.intersections()
    on_edge: dict[int, list[tuple[float, int]]] = {i: [(0.0, i), (1.0, (i + 1) % s.n)] for i in range(s.n)}
    for key, (ta, tb, p) in inter.items():
        i, j = sorted(key)
        idx = len(pts)
        pts.append(tuple(p))
        on_edge[i].append((ta, idx))
        on_edge[j].append((tb, idx))
    edges = []
    for i, lst in on_edge.items():
        lst.sort()
        edges += [(lst[k][1], lst[k + 1][1]) for k in range(len(lst) - 1)]
    V = np.array(pts)
    faces, _ = trace_faces(V, edges)
    return [V[f] for f in faces]


def _polygon_centroid(poly: np.ndarray) -> np.ndarray:
    x, y = poly[:, 0], poly[:, 1]
    x1, y1 = np.roll(x, -1), np.roll(y, -1)
    cr = x * y1 - x1 * y
    a = cr.sum() / 2
    return np.array([((x + x1) * cr).sum() / (6 * a), ((y + y1) * cr).sum() / (6 * a)])


def _deepest_point(s: StickDiagram, poly: np.ndarray, grid: int = 48) -> np.ndarray:
    lo, hi = poly.min(axis=0), poly.max(axis=0)
    best, best_c = None, -1.0
    step = (hi - lo) / grid
    for _ in range(3):
        xs = np.linspace(lo[0], hi[0], grid + 1)
        ys = np.linspace(lo[1], hi[1], grid + 1)
        for x in xs:
            for y in ys:
                p = np.array([x, y])
                if not point_in_polygon(p, poly, boundary=False):
                    continue
                c = clearance(s, p)
                if c > best_c:
                    best, best_c = p, c
        if best is None:
            break
        lo, hi = best - 2 * step, best + 2 * step
        step = (hi - lo) / grid
    if best is None:
        raise ConstructionError("could not find an interior point of an arrangement face")
    return best


def choose_apex(s: StickDiagram) -> np.ndarray:
    """Plane apex inside a bounded face whose planar spoke angles already reach a full turn.

    Each face is represented by its centroid when that lies well inside the
    face, otherwise by a grid-searched point of maximal clearance; the face
    with the largest clearance wins, ties to the lowest face index.
    """
    tol = tolerance()
    candidates = []
    sums = []
    for k, poly in enumerate(arrangement_faces(s)):
        c = _polygon_centroid(poly)
        if not (point_in_polygon(c, poly, boundary=False) and clearance(s, c) > 1e-6 * math.sqrt(abs(polygon_area(poly)))):
            c = _deepest_point(s, poly)
        total = angle_sum(s, c)
        sums.append((k, total))
        if total >= 2 * math.pi - tol.angle:
            candidates.append((-clearance(s, c), k, c))
    if not candidates:
        detail = ", ".join(f"face {k}: {v:.6f}" for k, v in sums)
        raise ConstructionError(f"no bounded face has spoke angle sum >= 2*pi ({detail})")
    candidates.sort(key=lambda t: (t[0], t[1]))
    return candidates[0][2]


@dataclass(frozen=True, eq=False)
class ConeConstruction:
    diagram: StickDiagram
    apex: np.ndarray  # (x, y, z)
    radii: tuple[float, ...]
    thetas: tuple[float, ...]  # thetas[i]: angle between spokes i and i+1

    @property
    def residual(self) -> float:
        return abs(sum(self.thetas) - 2 * math.pi)

    def spatial_vertices(self) -> np.ndarray:
        V = self.diagram.vertices
        return np.column_stack([V, np.zeros(len(V))])


def _cone_from_height(s: StickDiagram, q0: np.ndarray, z: float) -> ConeConstruction:
    Q = np.array([q0[0], q0[1], z])
    P = np.column_stack([s.vertices, np.zeros(s.n)])
    spokes = P - Q
    radii = tuple(float(np.linalg.norm(v)) for v in spokes)
    thetas = tuple(angle_between(spokes[i], spokes[(i + 1) % s.n]) for i in range(s.n))
    return ConeConstruction(s, Q, radii, thetas)


def solve_apex_height(s: StickDiagram, q0) -> ConeConstruction:
    """Lift the apex until the spoke angles sum to exactly one full turn."""
    tol = tolerance().angle
    q0 = np.asarray(q0, dtype=float)
    target = 2 * math.pi

    def f(z):
        return angle_sum(s, np.array([q0[0], q0[1], z])) - target

    f0 = f(0.0)
    if abs(f0) <= tol:
        return _cone_from_height(s, q0, 0.0)
    if f0 < 0:
        raise ConstructionError(f"planar angle sum {f0 + target:.12f} is below 2*pi")
    scale = float(np.max(np.linalg.norm(s.vertices - q0, axis=1)))
    lo, hi = 0.0, 1e-3 * scale
    while f(hi) > 0:
        lo, hi = hi, 2 * hi
        if hi > 2.0**60:
            raise ConstructionError("failed to bracket the apex height")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if abs(fm) <= tol:
            return _cone_from_height(s, q0, mid)
        if fm > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4 * np.finfo(float).eps * hi:
            break
    z = lo if abs(f(lo)) < abs(f(hi)) else hi
    cone = _cone_from_height(s, q0, z)
    if cone.residual > tol:
        raise ConstructionError(f"bisection stalled with residual {cone.residual:.3e}")
    return cone


@dataclass(frozen=True, eq=False)
class ConeUnfolding:
    pattern: CreasePattern
    scale: float
    centre: np.ndarray
    tips: np.ndarray  # paper positions of the spoke tips v'_i
    wedge_faces: tuple[int, ...]  # face index of wedge i (between spokes i and i+1)


def _ray_to_boundary(c: np.ndarray, d: np.ndarray) -> np.ndarray:
    ts = []
    for k in range(2):
        if d[k] > 0:
            ts.append((1 - c[k]) / d[k])
        elif d[k] < 0:
            ts.append(-c[k] / d[k])
    return c + min(ts) * d


def unfold_to_pattern(cone: ConeConstruction) -> ConeUnfolding:
    tol = tolerance()
    n = cone.diagram.n
    if cone.residual > 10 * tol.angle:
        raise ConstructionError(f"angle sum residual {cone.residual:.3e} too large to unfold")
    scale = PAPER_RADIUS / max(cone.radii)
    centre = np.array([0.5, 0.5])
    phis = np.concatenate([[0.0], np.cumsum(cone.thetas)])
    closure = scale * cone.radii[0] * abs(2 * math.sin(0.5 * (phis[-1] - 2 * math.pi)))
    if closure > 10 * tol.angle:
        raise ConstructionError(f"unrolled cone fails to close (defect {closure:.3e})")
    dirs = np.column_stack([np.cos(phis[:n]), np.sin(phis[:n])])
    tips = centre + scale * np.array(cone.radii)[:, None] * dirs
    ends = [_ray_to_boundary(centre, d) for d in dirs]
    pattern = build_pattern([centre] + ends, [(0, i + 1) for i in range(n)])
    wedge_faces = []
    for i in range(n):
        mid = phis[i] + 0.5 * cone.thetas[i]
        probe = centre + 0.05 * np.array([math.cos(mid), math.sin(mid)])
        wedge_faces.append(pattern.locate(probe))
    if sorted(wedge_faces) != list(range(n)):
        raise ConstructionError("wedges do not correspond one-to-one with faces")
    return ConeUnfolding(pattern, scale, centre, tips, tuple(wedge_faces))


def build_cone_folding(cone: ConeConstruction, unfolding: ConeUnfolding) -> Folding:
    n = cone.diagram.n
    s = unfolding.scale
    Q = s * cone.apex
    P = s * cone.spatial_vertices()
    maps = [None] * n
    for i in range(n):
        j = (i + 1) % n
        emb = embedding_from_triangles(
            (unfolding.centre, unfolding.tips[i], unfolding.tips[j]),
            (Q, P[i], P[j]),
        )
        maps[unfolding.wedge_faces[i]] = emb
    folding = Folding(unfolding.pattern, tuple(maps))
    report = validate_folding(folding)
    if not report.valid:
        raise ConstructionError(f"cone folding failed validation: {report.to_dict()}")
    return folding


def detour_radius(s: StickDiagram, unfolding: ConeUnfolding) -> float:
    """Radius of the semicircular detours.

    A quarter of the smallest distance from a crossing to another crossing,
    a polygon vertex or a non-incident edge, and at most half the distance
    from the crossing's paper preimage to the other two sides of its wedge.
    """
    inter = s.intersections()
    V = s.vertices
    dists = []
    pts = [p for _, _, p in inter.values()]
    for key, (ta, tb, p) in inter.items():
        dists += [float(np.linalg.norm(p - v)) for v in V]
        dists += [float(np.linalg.norm(p - q)) for q in pts if q is not p]
        dists += [point_segment_distance(p, *s.edge(k)) for k in range(s.n) if k not in key]
    eps = 0.25 * unfolding.scale * min(dists)
    for key, (ta, tb, _) in inter.items():
        i, j = sorted(key)
        for e, t in ((i, ta), (j, tb)):
            a, b = unfolding.tips[e], unfolding.tips[(e + 1) % s.n]
            x = a + t * (b - a)
            c = unfolding.centre
            eps = min(eps, 0.5 * point_segment_distance(x, c, a), 0.5 * point_segment_distance(x, c, b))
    return eps


def loop_with_crossings(s: StickDiagram, cone: ConeConstruction, unfolding: ConeUnfolding) -> PaperLoop:
    inter = s.intersections()
    if inter and cone.apex[2] <= tolerance().geom:
        raise ConstructionError("a flat cone cannot lift over-strands; the apex height is zero")
    eps = detour_radius(s, unfolding) if inter else 0.0
    bumps: dict[int, list[float]] = {}
    for key, (ta, tb, _) in inter.items():
        i, j = sorted(key)
        over = s.crossings[key]
        bumps.setdefault(over, []).append(ta if over == i else tb)
    c = unfolding.centre
    out = []
    for e in range(s.n):
        a, b = unfolding.tips[e], unfolding.tips[(e + 1) % s.n]
        out.append(a)
        d = b - a
        length = float(np.linalg.norm(d))
        u = d / length
        nrm = np.array([-u[1], u[0]])
        if float((c - a) @ nrm) < 0:
            nrm = -nrm
        for t in sorted(bumps.get(e, [])):
            x = a + t * d
            for k in range(DETOUR_SEGMENTS + 1):
                alpha = math.pi * k / DETOUR_SEGMENTS
                out.append(x - eps * math.cos(alpha) * u + eps * math.sin(alpha) * nrm)
    return PaperLoop(np.array(out))


@dataclass(frozen=True, eq=False)
class ConeResult:
    diagram: StickDiagram
    cone: ConeConstruction
    unfolding: ConeUnfolding
    folding: Folding
    loop: PaperLoop


def cone_pipeline(s: StickDiagram) -> ConeResult:
    q0 = choose_apex(s)
    cone = solve_apex_height(s, q0)
    unfolding = unfold_to_pattern(cone)
    folding = build_cone_folding(cone, unfolding)
    loop = loop_with_crossings(s, cone, unfolding)
    return ConeResult(s, cone, unfolding, folding, loop)


def construct_from_sticks(s: StickDiagram) -> tuple[Folding, PaperLoop]:
    r = cone_pipeline(s)
    return r.folding, r.loop


def unfolded_congruence_defect(r: ConeResult) -> float:
    """Largest side-length mismatch between paper wedge triangles and their spatial counterparts."""
    s = r.unfolding.scale
    Q = s * r.cone.apex
    P = s * r.cone.spatial_vertices()
    c = r.unfolding.centre
    T = r.unfolding.tips
    worst = 0.0
    n = r.diagram.n
    for i in range(n):
        j = (i + 1) % n
        paper = (np.linalg.norm(T[i] - c), np.linalg.norm(T[j] - c), np.linalg.norm(T[j] - T[i]))
        space = (np.linalg.norm(P[i] - Q), np.linalg.norm(P[j] - Q), np.linalg.norm(P[j] - P[i]))
        worst = max(worst, max(abs(a - b) for a, b in zip(paper, space)))
    return float(worst)
