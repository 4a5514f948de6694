"""Low-level geometric primitives shared by the folding and knot modules.

Coordinates are plain numpy float arrays. Every predicate here uses an
absolute tolerance taken from the active :class:`Tolerance`; callers that need
a looser or tighter regime wrap their work in :func:`use_tolerance`.
"""

from __future__ import annotations

import contextlib
import contextvars
import math
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

import numpy as np


class GeometryError(ValueError):
    """Base class for geometric precondition failures."""


class DegenerateVectorError(GeometryError):
    pass


class CongruenceError(GeometryError):
    def __init__(self, defect: float):
        super().__init__(f"triangles are not congruent (worst side-length defect {defect:.3e})")
        self.defect = defect


class NonGenericError(GeometryError):
    pass


@dataclass(frozen=True)
class Tolerance:
    iso: float = 1e-9
    geom: float = 1e-9
    angle: float = 1e-9

    def __post_init__(self):
        for name in ("iso", "geom", "angle"):
            v = getattr(self, name)
            if not (0.0 < v < 1e-3):
                raise ValueError(f"tolerance {name}={v} outside (0, 1e-3)")

    def scaled(self, factor: float) -> "Tolerance":
        # the angle residual is a solver target, not a coincidence threshold
        return Tolerance(iso=self.iso * factor, geom=self.geom * factor, angle=self.angle)


_TOLERANCE: contextvars.ContextVar[Tolerance] = contextvars.ContextVar("orikami_tolerance", default=Tolerance())


def tolerance() -> Tolerance:
    return _TOLERANCE.get()


@contextlib.contextmanager
def use_tolerance(tol: Tolerance) -> Iterator[Tolerance]:
    token = _TOLERANCE.set(tol)
    try:
        yield tol
    finally:
        _TOLERANCE.reset(token)


def as_vec(p, dim: int | None = None) -> np.ndarray:
    v = np.asarray(p, dtype=float)
    if dim is not None and v.shape != (dim,):
        raise GeometryError(f"expected a {dim}-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise GeometryError(f"non-finite coordinates {v!r}")
    return v


def cross2(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def angle_between(u, v) -> float:
    """Unsigned angle in [0, pi] between two vectors of equal dimension."""
    u = as_vec(u)
    v = as_vec(v)
    eps = tolerance().geom
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu <= eps or nv <= eps:
        raise DegenerateVectorError("angle with a zero-length vector is undefined")
    c = float(np.dot(u, v) / (nu * nv))
    return math.acos(min(1.0, max(-1.0, c)))


# --------------------------------------------------------------------------
# segment intersection (plane)


@dataclass(frozen=True)
class SegmentHit:
    t_a: float
    t_b: float
    point: tuple[float, float]


@dataclass(frozen=True)
class SegmentOverlap:
    start: tuple[float, float]
    end: tuple[float, float]


@dataclass(frozen=True)
class Degenerate:
    """Near-tangential contact that cannot be classified within tolerance."""

    reason: str


Intersection = Union[None, SegmentHit, SegmentOverlap, Degenerate]


def _point_segment_param(p, a, b) -> tuple[float, float]:
    d = b - a
    t = float(np.dot(p - a, d) / np.dot(d, d))
    t = min(1.0, max(0.0, t))
    return t, float(np.linalg.norm(a + t * d - p))


def segment_intersect(a, b) -> Intersection:
    """Intersect two closed plane segments given as pairs of endpoints.

    Returns ``None`` when disjoint, a :class:`SegmentHit` for a single point,
    a :class:`SegmentOverlap` for collinear overlap, and :class:`Degenerate`
    when an endpoint sits within tolerance of the other segment while the two
    are not collinear enough to call an overlap.
    """
    eps = tolerance().geom
    p0, p1 = as_vec(a[0], 2), as_vec(a[1], 2)
    q0, q1 = as_vec(b[0], 2), as_vec(b[1], 2)
    r, s = p1 - p0, q1 - q0
    lr, ls = float(np.linalg.norm(r)), float(np.linalg.norm(s))
    if lr <= eps or ls <= eps:
        return Degenerate("zero-length segment")
    denom = cross2(r, s)
    qp = q0 - p0
    if abs(denom) <= eps * lr * ls:
        # parallel
        if abs(cross2(qp, r)) / lr > eps:
            return None
        t0 = float(np.dot(qp, r) / lr**2)
        t1 = float(np.dot(q1 - p0, r) / lr**2)
        lo, hi = max(0.0, min(t0, t1)), min(1.0, max(t0, t1))
        if hi < lo - eps / lr:
            return None
        if (hi - lo) * lr <= eps:
            t = 0.5 * (lo + hi)
            pt = p0 + t * r
            tb, _ = _point_segment_param(pt, q0, q1)
            return SegmentHit(t, tb, (float(pt[0]), float(pt[1])))
        pa, pb = p0 + lo * r, p0 + hi * r
        return SegmentOverlap((float(pa[0]), float(pa[1])), (float(pb[0]), float(pb[1])))
    t = cross2(qp, s) / denom
    u = cross2(qp, r) / denom
    ta, tb = eps / lr, eps / ls
    if t < -ta or t > 1 + ta or u < -tb or u > 1 + tb:
        # an endpoint may still lie within eps of the other segment
        near = min(
            _point_segment_param(p0, q0, q1)[1],
            _point_segment_param(p1, q0, q1)[1],
            _point_segment_param(q0, p0, p1)[1],
            _point_segment_param(q1, p0, p1)[1],
        )
        if near <= eps:
            return Degenerate("endpoint within tolerance of the other segment")
        return None
    t = min(1.0, max(0.0, t))
    u = min(1.0, max(0.0, u))
    pt = p0 + t * r
    return SegmentHit(float(t), float(u), (float(pt[0]), float(pt[1])))


def point_segment_distance(p, a, b) -> float:
    p, a, b = as_vec(p), as_vec(a), as_vec(b)
    d = b - a
    dd = float(np.dot(d, d))
    if dd == 0.0:
        return float(np.linalg.norm(p - a))
    t = min(1.0, max(0.0, float(np.dot(p - a, d) / dd)))
    return float(np.linalg.norm(a + t * d - p))


def segment_segment_distance(p0, p1, q0, q1) -> float:
    """Minimum distance between two closed segments in any dimension."""
    p0, p1, q0, q1 = (np.asarray(x, dtype=float) for x in (p0, p1, q0, q1))
    d1, d2, r = p1 - p0, q1 - q0, p0 - q0
    a, e, f = float(d1 @ d1), float(d2 @ d2), float(d2 @ r)
    if a <= 1e-300 and e <= 1e-300:
        return float(np.linalg.norm(r))
    if a <= 1e-300:
        s, t = 0.0, min(1.0, max(0.0, f / e))
    else:
        c = float(d1 @ r)
        if e <= 1e-300:
            s, t = min(1.0, max(0.0, -c / a)), 0.0
        else:
            b = float(d1 @ d2)
            den = a * e - b * b
            s = min(1.0, max(0.0, (b * f - c * e) / den)) if den > 1e-300 else 0.0
            t = (b * s + f) / e
            if t < 0.0:
                t, s = 0.0, min(1.0, max(0.0, -c / a))
            elif t > 1.0:
                t, s = 1.0, min(1.0, max(0.0, (b - c) / a))
    return float(np.linalg.norm(p0 + s * d1 - (q0 + t * d2)))


def polygon_area(poly) -> float:
    """Signed shoelace area; positive for counterclockwise vertex order."""
    pts = np.asarray(poly, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def point_in_polygon(p, poly, *, boundary: bool = True) -> bool:
    """Even-odd containment; points within tolerance of an edge count as ``boundary``."""
    eps = tolerance().geom
    pts = np.asarray(poly, dtype=float)
    p = as_vec(p, 2)
    n = len(pts)
    for i in range(n):
        if point_segment_distance(p, pts[i], pts[(i + 1) % n]) <= eps:
            return boundary
    inside = False
    x, y = p
    for i in range(n):
        (x0, y0), (x1, y1) = pts[i], pts[(i + 1) % n]
        if (y0 > y) != (y1 > y):
            xc = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
            if xc > x:
                inside = not inside
    return inside


# --------------------------------------------------------------------------
# rigid embeddings of the plane into space


@dataclass(frozen=True, eq=False)
class RigidEmbedding:
    """Isometric affine map ``p -> linear @ p + translation`` from the plane into space."""

    linear: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        lin = np.array(self.linear, dtype=float).reshape(3, 2)
        tr = np.array(self.translation, dtype=float).reshape(3)
        lin.setflags(write=False)
        tr.setflags(write=False)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tr)

    @classmethod
    def identity(cls) -> "RigidEmbedding":
        return cls(np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]), np.zeros(3))

    def __call__(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        return p @ self.linear.T + self.translation

    @property
    def normal(self) -> np.ndarray:
        return np.cross(self.linear[:, 0], self.linear[:, 1])

    def orthonormality_defect(self) -> float:
        c1, c2 = self.linear[:, 0], self.linear[:, 1]
        return max(abs(float(c1 @ c1) - 1.0), abs(float(c2 @ c2) - 1.0), abs(float(c1 @ c2)))

    def is_rigid(self) -> bool:
        return self.orthonormality_defect() <= tolerance().iso

    def to_affine(self) -> np.ndarray:
        """4x4 homogeneous matrix of the spatial rigid motion extending this map."""
        m = np.eye(4)
        m[:3, :2] = self.linear
        m[:3, 2] = self.normal
        m[:3, 3] = self.translation
        return m

    def then(self, motion: np.ndarray) -> "RigidEmbedding":
        """Compose with a 4x4 spatial rigid motion applied afterwards."""
        return RigidEmbedding(motion[:3, :3] @ self.linear, motion[:3, :3] @ self.translation + motion[:3, 3])

    def close_to(self, other: "RigidEmbedding", tol: float) -> bool:
        return bool(
            np.max(np.abs(self.linear - other.linear)) <= tol
            and np.max(np.abs(self.translation - other.translation)) <= tol
        )

    def __repr__(self):
        return f"RigidEmbedding(linear={self.linear.tolist()}, translation={self.translation.tolist()})"


def rotation_about_axis(point, direction, angle: float) -> np.ndarray:
    """4x4 rigid motion rotating by ``angle`` (right-hand rule) about a spatial line."""
    k = as_vec(direction, 3)
    k = k / np.linalg.norm(k)
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    R = np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * (K @ K)
    p = as_vec(point, 3)
    m = np.eye(4)
    m[:3, :3] = R
    m[:3, 3] = p - R @ p
    return m


def embedding_from_triangles(src: Sequence, dst: Sequence) -> RigidEmbedding:
    """Rigid embedding taking the plane triangle ``src`` onto the congruent spatial triangle ``dst``."""
    tol = tolerance()
    a, b, c = (as_vec(p, 2) for p in src)
    A, B, C = (as_vec(p, 3) for p in dst)
    if abs(cross2(b - a, c - a)) <= tol.geom:
        raise GeometryError("source triangle is degenerate")
    defect = max(
        abs(np.linalg.norm(b - a) - np.linalg.norm(B - A)),
        abs(np.linalg.norm(c - a) - np.linalg.norm(C - A)),
        abs(np.linalg.norm(c - b) - np.linalg.norm(C - B)),
    )
    if defect > tol.iso:
        raise CongruenceError(float(defect))
    e1 = (b - a) / np.linalg.norm(b - a)
    e2 = np.array([-e1[1], e1[0]])
    E1 = (B - A) / np.linalg.norm(B - A)
    w = (C - A) - float((C - A) @ E1) * E1
    E2 = w / np.linalg.norm(w)
    if cross2(b - a, c - a) < 0:
        E2 = -E2
    # columns map the plane basis (e1, e2) onto (E1, E2)
    lin = np.column_stack([E1, E2]) @ np.vstack([e1, e2])
    return RigidEmbedding(lin, A - lin @ a)


# --------------------------------------------------------------------------
# projections


def projection_frame(direction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right-handed frame (e1, e2, d) with d the unit view direction pointing at the viewer."""
    d = as_vec(direction, 3)
    d = d / np.linalg.norm(d)
    helper = np.array([1.0, 0.0, 0.0]) if abs(d[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = helper - (helper @ d) * d
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(d, e1)
    return e1, e2, d


def project(points, direction) -> tuple[np.ndarray, np.ndarray]:
    """Plane coordinates and heights of ``points`` seen from ``direction``."""
    e1, e2, d = projection_frame(direction)
    pts = np.asarray(points, dtype=float)
    return np.column_stack([pts @ e1, pts @ e2]), pts @ d


def segment_crossings(xy: np.ndarray, closed: bool = True) -> list[tuple[int, int, float, float]]:
    """All proper crossings between non-adjacent segments of a plane polyline.

    Returns ``(i, j, t_i, t_j)`` with ``i < j``. Vectorised; touching and
    collinear configurations are not reported here (see :func:`is_regular_projection`).
    """
    n = len(xy)
    m = n if closed else n - 1
    if m < 2:
        return []
    P = xy[:m]
    R = xy[(np.arange(m) + 1) % n] - P
    i, j = np.triu_indices(m, k=1)
    adjacent = (j == i + 1) | (closed & (i == 0) & (j == m - 1))
    i, j = i[~adjacent], j[~adjacent]
    r, s = R[i], R[j]
    denom = r[:, 0] * s[:, 1] - r[:, 1] * s[:, 0]
    qp = P[j] - P[i]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (qp[:, 0] * s[:, 1] - qp[:, 1] * s[:, 0]) / denom
        u = (qp[:, 0] * r[:, 1] - qp[:, 1] * r[:, 0]) / denom
    ok = (denom != 0) & (t >= 0) & (t <= 1) & (u >= 0) & (u <= 1)
    return [(int(a), int(b), float(x), float(y)) for a, b, x, y in zip(i[ok], j[ok], t[ok], u[ok])]


def is_regular_projection(points, direction, closed: bool = True, margin: float | None = None) -> bool:
    """Check the general-position conditions for projecting a polyline along ``direction``.

    No segment projects to (nearly) a point, no vertex lands within ``margin``
    of a non-incident segment, consecutive segments do not fold back on each
    other, double points are well separated (no triple points), and the two
    strands at every double point have distinct heights.
    """
    eps = tolerance().geom if margin is None else margin
    xy, h = project(points, direction)
    n = len(xy)
    m = n if closed else n - 1
    seg = [(k, (k + 1) % n) for k in range(m)]
    lengths = np.array([np.linalg.norm(xy[b] - xy[a]) for a, b in seg])
    if np.any(lengths <= eps):
        return False
    for k in range(m if closed else m - 1):
        a, b = seg[k]
        c = seg[(k + 1) % m][1]
        u, v = xy[b] - xy[a], xy[c] - xy[b]
        if abs(cross2(u, v)) <= eps * np.linalg.norm(u) * np.linalg.norm(v) and float(u @ v) < 0:
            return False
    # vertex/segment proximity, vectorised over segments
    sa = np.arange(m)
    sb = (sa + 1) % n
    A, B = xy[sa], xy[sb]
    D = B - A
    DD = np.einsum("ij,ij->i", D, D)
    for vi in range(n):
        p = xy[vi]
        t = np.clip(np.einsum("ij,ij->i", p - A, D) / DD, 0.0, 1.0)
        dist = np.linalg.norm(A + t[:, None] * D - p, axis=1)
        incident = (sa == vi) | (sb == vi)
        if np.any(dist[~incident] <= eps):
            return False
    crossings = segment_crossings(xy, closed)
    pts = []
    for i, j, ti, tj in crossings:
        pi = xy[seg[i][0]] + ti * (xy[seg[i][1]] - xy[seg[i][0]])
        hi = h[seg[i][0]] + ti * (h[seg[i][1]] - h[seg[i][0]])
        hj = h[seg[j][0]] + tj * (h[seg[j][1]] - h[seg[j][0]])
        if abs(hi - hj) <= eps:
            return False
        pts.append(pi)
    if len(pts) > 1:
        P = np.array(pts)
        diff = np.linalg.norm(P[:, None, :] - P[None, :, :], axis=-1)
        np.fill_diagonal(diff, np.inf)
        if np.min(diff) <= eps:
            return False
    return True


def generic_direction(points, seed: int | Sequence[int] = 0, closed: bool = True, attempts: int = 1000) -> np.ndarray:
    """A unit view direction in general position for the polyline through ``points``.

    Deterministic for a fixed seed. The first candidate is drawn uniformly on
    the sphere; rejected candidates are resampled up to ``attempts`` times.
    """
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        raise GeometryError("need at least two points")
    rng = np.random.default_rng(seed)
    scale = max(1.0, float(np.max(np.abs(pts))))
    margin = max(tolerance().geom, 1e-9 * scale)
    for _ in range(attempts):
        d = rng.normal(size=3)
        nd = np.linalg.norm(d)
        if nd < 1e-12:
            continue
        d /= nd
        if len(pts) == 2:
            u = pts[1] - pts[0]
            if np.linalg.norm(np.cross(u, d)) > margin:
                return d
            continue
        if is_regular_projection(pts, d, closed=closed, margin=margin):
            return d
    raise NonGenericError(f"no regular projection direction after {attempts} attempts")


def segment_distances(P0, P1, Q0, Q1) -> np.ndarray:
    """Vectorised closest distance between segment arrays ``P0P1[k]`` and ``Q0Q1[k]``."""
    P0, P1, Q0, Q1 = (np.asarray(x, dtype=float) for x in (P0, P1, Q0, Q1))
    d1, d2, r = P1 - P0, Q1 - Q0, P0 - Q0
    a = np.einsum("ij,ij->i", d1, d1)
    e = np.einsum("ij,ij->i", d2, d2)
    f = np.einsum("ij,ij->i", d2, r)
    c = np.einsum("ij,ij->i", d1, r)
    b = np.einsum("ij,ij->i", d1, d2)
    den = a * e - b * b
    tiny = 1e-300
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(den > tiny * np.maximum(a * e, tiny), np.clip((b * f - c * e) / den, 0, 1), 0.0)
        t = np.where(e > tiny, (b * s + f) / e, 0.0)
        lo, hi = t < 0, t > 1
        s = np.where(lo, np.clip(np.where(a > tiny, -c / a, 0.0), 0, 1), s)
        s = np.where(hi, np.clip(np.where(a > tiny, (b - c) / a, 0.0), 0, 1), s)
        t = np.clip(t, 0, 1)
    return np.linalg.norm(P0 + s[:, None] * d1 - (Q0 + t[:, None] * d2), axis=1)


def polyline_is_simple(points, closed: bool = True, eps: float | None = None) -> bool:
    """True when a polyline (any dimension) has no self-contact beyond shared vertices."""
    eps = tolerance().geom if eps is None else eps
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    m = n if closed else n - 1
    if m < 1:
        return True
    A = pts[:m]
    B = pts[(np.arange(m) + 1) % n]
    D = B - A
    if np.any(np.linalg.norm(D, axis=1) <= eps):
        return False
    # consecutive segments must not double back
    last = m if closed else m - 1
    for k in range(last):
        u, v = D[k], D[(k + 1) % m]
        nu, nv = np.linalg.norm(u), np.linalg.norm(v)
        if float(u @ v) < 0 and np.linalg.norm(np.cross(np.pad(u, (0, 3 - len(u))), np.pad(v, (0, 3 - len(v))))) <= eps * max(nu, nv):
            return False
    i, j = np.triu_indices(m, k=1)
    adjacent = (j == i + 1) | (closed & (i == 0) & (j == m - 1))
    i, j = i[~adjacent], j[~adjacent]
    if len(i) == 0:
        return True
    return bool(np.all(segment_distances(A[i], B[i], A[j], B[j]) > eps))


def trace_faces(V: np.ndarray, edges) -> tuple[list[list[int]], dict[tuple[int, int], int]]:
    """Bounded faces of a plane straight-line graph.

    Returns counterclockwise vertex cycles of positive area and a map from each
    half-edge ``(u, v)`` to the face on its left (outer-face half-edges omitted).
    """
    n = len(V)
    nbrs: dict[int, list[int]] = {v: [] for v in range(n)}
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    for v, lst in nbrs.items():
        lst.sort(key=lambda w: math.atan2(V[w][1] - V[v][1], V[w][0] - V[v][0]))
    eps = tolerance().geom
    visited: set[tuple[int, int]] = set()
    faces: list[list[int]] = []
    halfedge_face: dict[tuple[int, int], int] = {}
    for u in range(n):
        for v in nbrs[u]:
            if (u, v) in visited:
                continue
            cycle = []
            a, b = u, v
            while (a, b) not in visited:
                visited.add((a, b))
                cycle.append((a, b))
                lst = nbrs[b]
                a, b = b, lst[lst.index(a) - 1]
            poly = [he[0] for he in cycle]
            if polygon_area(V[poly]) > eps:
                for he in cycle:
                    halfedge_face[he] = len(faces)
                faces.append(poly)
    return faces, halfedge_face
