"""Self-intersections of folded paper and what they say about properness.

Every pair of face images is intersected as a pair of convex polygons in
space. Non-empty intersections are sorted into four kinds: along the image of
a boundary the two faces share in the paper, coplanar overlap of positive
area, lower-dimensional touching, and transversal crossing where the two
interiors pierce each other.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .folding import CreasePattern, Folding
from .geometry import cross2, point_segment_distance, polygon_area, segment_segment_distance, tolerance
from .hinge import dihedral_angles, fold_tree


class Kind(str, enum.Enum):
    SHARED_CREASE = "shared-crease"
    COINCIDENT_OVERLAP = "coincident-overlap"
    TOUCHING = "touching"
    TRANSVERSAL = "transversal-crossing"


class Verdict(str, enum.Enum):
    PROPER_INJECTIVE = "ProperInjective"
    PROPER_FLAT_CONTACT = "ProperFlatContact"
    IMPROPER_TRANSVERSAL = "ImproperTransversal"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class IntersectionFinding:
    faces: tuple[int, int]
    kind: Kind
    witness: tuple[tuple[float, float, float], ...]  # one point, or the two ends of a segment

    def to_dict(self) -> dict:
        return {"faces": list(self.faces), "kind": self.kind.value, "witness": [list(p) for p in self.witness]}

    @classmethod
    def from_dict(cls, data: dict) -> "IntersectionFinding":
        return cls(tuple(data["faces"]), Kind(data["kind"]), tuple(tuple(p) for p in data["witness"]))


@dataclass(frozen=True)
class PropernessVerdict:
    verdict: Verdict
    findings: tuple[IntersectionFinding, ...] = field(default=())

    def __post_init__(self):
        kinds = {f.kind for f in self.findings}
        if self.verdict is Verdict.PROPER_INJECTIVE and kinds - {Kind.SHARED_CREASE}:
            raise ValueError("an injective verdict admits only shared-crease findings")
        if self.verdict is Verdict.IMPROPER_TRANSVERSAL and Kind.TRANSVERSAL not in kinds:
            raise ValueError("an improper verdict needs a transversal witness")

    def to_dict(self) -> dict:
        return {
            "format": "orikami/1",
            "verdict": self.verdict.value,
            "findings": [f.to_dict() for f in self.findings],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PropernessVerdict":
        return cls(Verdict(data["verdict"]), tuple(IntersectionFinding.from_dict(f) for f in data.get("findings", [])))


# --------------------------------------------------------------------------
# convex pieces


def _ear_clip(poly: np.ndarray) -> list[list[int]]:
    idx = list(range(len(poly)))
    tris = []
    while len(idx) > 3:
        for k in range(len(idx)):
            a, b, c = idx[k - 1], idx[k], idx[(k + 1) % len(idx)]
            if cross2(poly[b] - poly[a], poly[c] - poly[b]) <= 0:
                continue
            tri = poly[[a, b, c]]
            if any(_in_triangle(poly[m], tri) for m in idx if m not in (a, b, c)):
                continue
            tris.append([a, b, c])
            idx.pop(k)
            break
        else:  # numerically stuck; fall back to a fan
            tris += [[idx[0], idx[m], idx[m + 1]] for m in range(1, len(idx) - 1)]
            return tris
    tris.append(idx)
    return tris


def _in_triangle(p, tri) -> bool:
    a, b, c = tri
    return cross2(b - a, p - a) >= 0 and cross2(c - b, p - b) >= 0 and cross2(a - c, p - c) >= 0


def convex_pieces(poly: np.ndarray) -> list[np.ndarray]:
    """The polygon itself when convex, otherwise a triangulation (vertex indices into ``poly``)."""
    n = len(poly)
    eps = tolerance().geom
    if all(cross2(poly[(i + 1) % n] - poly[i], poly[(i + 2) % n] - poly[(i + 1) % n]) >= -eps for i in range(n)):
        return [np.arange(n)]
    return [np.array(t) for t in _ear_clip(poly)]


# --------------------------------------------------------------------------
# polygon pair intersection


def _plane(P: np.ndarray) -> tuple[np.ndarray, float]:
    n = np.zeros(3)
    for i in range(len(P)):  # Newell normal
        a, b = P[i], P[(i + 1) % len(P)]
        n += np.cross(a, b)
    n /= np.linalg.norm(n)
    return n, float(n @ P.mean(axis=0))


def _section(P: np.ndarray, dist: np.ndarray, eps: float) -> list[np.ndarray]:
    """Points where the boundary of ``P`` meets the plane whose signed distances are ``dist``."""
    pts = [P[i] for i in range(len(P)) if abs(dist[i]) <= eps]
    for i in range(len(P)):
        j = (i + 1) % len(P)
        if (dist[i] > eps and dist[j] < -eps) or (dist[i] < -eps and dist[j] > eps):
            t = dist[i] / (dist[i] - dist[j])
            pts.append(P[i] + t * (P[j] - P[i]))
    return pts


def _clip_convex(subject: np.ndarray, clip: np.ndarray) -> np.ndarray:
    """Sutherland-Hodgman clip of two counter-clockwise convex plane polygons."""
    out = list(subject)
    for i in range(len(clip)):
        a, b = clip[i], clip[(i + 1) % len(clip)]
        inp, out = out, []
        if not inp:
            break
        for k in range(len(inp)):
            p, q = inp[k - 1], inp[k]
            pin, qin = cross2(b - a, p - a) >= 0, cross2(b - a, q - a) >= 0
            if qin:
                if not pin:
                    out.append(_line_hit(p, q, a, b))
                out.append(q)
            elif pin:
                out.append(_line_hit(p, q, a, b))
    return np.array(out) if out else np.zeros((0, 2))


def _line_hit(p, q, a, b):
    d1 = cross2(b - a, p - a)
    d2 = cross2(b - a, q - a)
    return p + (d1 / (d1 - d2)) * (q - p)


def _polygon_gap(P2: np.ndarray, Q2: np.ndarray) -> float:
    gap = min(
        segment_segment_distance(P2[i], P2[(i + 1) % len(P2)], Q2[j], Q2[(j + 1) % len(Q2)])
        for i in range(len(P2))
        for j in range(len(Q2))
    )
    return gap


def _coplanar(P: np.ndarray, Q: np.ndarray, n: np.ndarray, eps: float):
    """Intersection of coplanar convex polygons: ('area', centroid) / ('touch', points) / None."""
    e1 = P[1] - P[0]
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    origin = P[0]

    def flat(X):
        Y = np.column_stack([(X - origin) @ e1, (X - origin) @ e2])
        return Y if polygon_area(Y) > 0 else Y[::-1]

    P2, Q2 = flat(P), flat(Q)
    inter = _clip_convex(P2, Q2)
    if len(inter) >= 3 and polygon_area(inter) > eps * max(_perimeter(P2), _perimeter(Q2)):
        c = inter.mean(axis=0)
        return "area", [origin + c[0] * e1 + c[1] * e2]
    if _polygon_gap(P2, Q2) > eps:
        return None
    touch = [p for p in P if _dist_to_polygon3(p, Q) <= eps] + [q for q in Q if _dist_to_polygon3(q, P) <= eps]
    if not touch:
        # edges crossing at interior points of both
        for i, j in itertools.product(range(len(P)), range(len(Q))):
            a, b, c, d = P[i], P[(i + 1) % len(P)], Q[j], Q[(j + 1) % len(Q)]
            if segment_segment_distance(a, b, c, d) <= eps:
                touch.append(_closest_on_segment(a, b, c, d))
    return "touch", touch if touch else [P[0]]


def _perimeter(P2):
    return float(np.sum(np.linalg.norm(np.roll(P2, -1, axis=0) - P2, axis=1)))


def _closest_on_segment(a, b, c, d):
    ts = np.linspace(0, 1, 65)
    pts = a + ts[:, None] * (b - a)
    k = int(np.argmin([point_segment_distance(p, c, d) for p in pts]))
    return pts[k]


def _dist_to_polygon3(p, P) -> float:
    n, off = _plane(P)
    h = float(p @ n - off)
    foot = p - h * n
    e1 = P[1] - P[0]
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    P2 = np.column_stack([(P - P[0]) @ e1, (P - P[0]) @ e2])
    f2 = np.array([(foot - P[0]) @ e1, (foot - P[0]) @ e2])
    if polygon_area(P2) < 0:
        P2 = P2[::-1]
    inside = all(cross2(P2[(i + 1) % len(P2)] - P2[i], f2 - P2[i]) >= 0 for i in range(len(P2)))
    if inside:
        return abs(h)
    return min(point_segment_distance(p, P[i], P[(i + 1) % len(P)]) for i in range(len(P)))


def polygon_pair(P: np.ndarray, Q: np.ndarray, eps: float | None = None):
    """Classify the intersection of two convex spatial polygons.

    Returns None, or ``(kind, witness)`` where kind is one of 'area',
    'touch', 'pierce' and the witness is a list of one or two points.
    """
    eps = tolerance().geom if eps is None else eps
    if np.any(P.min(axis=0) > Q.max(axis=0) + eps) or np.any(Q.min(axis=0) > P.max(axis=0) + eps):
        return None
    nP, oP = _plane(P)
    nQ, oQ = _plane(Q)
    dP = P @ nQ - oQ  # distances of P's vertices to Q's plane
    dQ = Q @ nP - oP
    if np.all(dP > eps) or np.all(dP < -eps) or np.all(dQ > eps) or np.all(dQ < -eps):
        return None
    if np.linalg.norm(np.cross(nP, nQ)) <= tolerance().angle or (np.all(np.abs(dP) <= eps) and np.all(np.abs(dQ) <= eps)):
        if np.all(np.abs(dP) <= eps):
            return _coplanar(P, Q, nP, eps)
        return None
    u = np.cross(nP, nQ)
    u /= np.linalg.norm(u)
    sP = _section(P, dP, eps)
    sQ = _section(Q, dQ, eps)
    if not sP or not sQ:
        return None
    base = sP[0]
    tP = [float((p - base) @ u) for p in sP]
    tQ = [float((q - base) @ u) for q in sQ]
    a0, a1 = min(tP), max(tP)
    b0, b1 = min(tQ), max(tQ)
    lo_t, hi_t = max(a0, b0), min(a1, b1)
    if lo_t > hi_t + eps:
        return None
    # the two section chords must lie on one common line; guard against rounding drift
    ref = base - float((base - sQ[0]) @ u) * u
    if np.linalg.norm(ref - sQ[0]) > 10 * eps:
        return None
    ends = [base + lo_t * u, base + hi_t * u] if hi_t - lo_t > eps else [base + 0.5 * (lo_t + hi_t) * u]
    straddle_p = bool(np.any(dP > eps) and np.any(dP < -eps))
    straddle_q = bool(np.any(dQ > eps) and np.any(dQ < -eps))
    if straddle_p and straddle_q and hi_t - lo_t > 2 * eps:
        # open chords overlap, so some point is interior to both polygons
        return "pierce", ends
    return "touch", ends


def _shared_images(f: Folding, a: int, b: int) -> list[np.ndarray]:
    """Images (under face ``a``) of the paper vertices and edges shared by faces ``a`` and ``b``."""
    pat = f.pattern
    shared = set(pat.faces[a]) & set(pat.faces[b])
    return [f.face_maps[a](pat.vertices[v]) for v in shared]


def _within_shared(points, anchors, eps: float) -> bool:
    if not anchors:
        return False
    for p in points:
        if len(anchors) == 1:
            ok = np.linalg.norm(p - anchors[0]) <= eps
        else:
            ok = any(
                point_segment_distance(p, anchors[i], anchors[j]) <= eps
                for i in range(len(anchors))
                for j in range(i + 1, len(anchors))
            ) or any(np.linalg.norm(p - q) <= eps for q in anchors)
        if not ok:
            return False
    return True


def self_intersections(f: Folding) -> list[IntersectionFinding]:
    """All intersections between face images, one finding per face pair (the most severe kind)."""
    eps = 10 * tolerance().geom
    pat = f.pattern
    pieces = []
    for k in range(len(pat.faces)):
        img = f.face_image(k)
        pieces.append([img[idx] for idx in convex_pieces(pat.face_polygon(k))])
    rank = {Kind.SHARED_CREASE: 0, Kind.TOUCHING: 1, Kind.COINCIDENT_OVERLAP: 2, Kind.TRANSVERSAL: 3}
    out = []
    for a, b in itertools.combinations(range(len(pat.faces)), 2):
        best = None
        anchors = None
        for P, Q in itertools.product(pieces[a], pieces[b]):
            hit = polygon_pair(P, Q, eps)
            if hit is None:
                continue
            kind, wit = hit
            if kind == "area":
                k = Kind.COINCIDENT_OVERLAP
            elif kind == "pierce":
                k = Kind.TRANSVERSAL
            else:
                if anchors is None:
                    anchors = _shared_images(f, a, b)
                k = Kind.SHARED_CREASE if _within_shared(wit, anchors, eps) else Kind.TOUCHING
            if best is None or rank[k] > rank[best[0]]:
                best = (k, wit)
        if best is not None:
            k, wit = best
            witness = tuple(tuple(round(float(x), 12) + 0.0 for x in p) for p in wit[:2])
            out.append(IntersectionFinding((a, b), k, witness))
    return out


def is_injective(f: Folding) -> bool:
    return all(x.kind is Kind.SHARED_CREASE for x in self_intersections(f))


# --------------------------------------------------------------------------
# properness

FLAT_PERTURBATIONS = (0.05, 0.01, 0.002)
MAX_FLAT_CREASES = 8


def flat_limit_witness(f: Folding, deltas=FLAT_PERTURBATIONS) -> list[float] | None:
    """Dihedral angles of injective foldings converging to ``f``, if found.

    Only tree-shaped patterns are recognised. Each crease folded flat is
    opened to ``±(pi - delta)``; every sign choice is tried and accepted when
    it is injective for each ``delta``. Returns the sign-corrected angles at
    the smallest delta, or None.
    """
    angles = dihedral_angles(f)
    if angles is None:
        return None
    tol = tolerance().angle
    flat = [c for c, t in enumerate(angles) if abs(abs(t) - math.pi) <= 1e3 * tol]
    if not flat or len(flat) > MAX_FLAT_CREASES:
        return None
    root_map = f.face_maps[0]
    for signs in itertools.product((1.0, -1.0), repeat=len(flat)):
        ok = True
        trial = list(angles)
        for d in deltas:
            trial = list(angles)
            for c, s in zip(flat, signs):
                trial[c] = s * (math.pi - d)
            if not is_injective(fold_tree(f.pattern, trial, root_map=root_map)):
                ok = False
                break
        if ok:
            return trial
    return None


def properness_verdict(f: Folding) -> PropernessVerdict:
    findings = tuple(self_intersections(f))
    kinds = {x.kind for x in findings}
    if kinds <= {Kind.SHARED_CREASE}:
        return PropernessVerdict(Verdict.PROPER_INJECTIVE, findings)
    if Kind.TRANSVERSAL in kinds:
        return PropernessVerdict(Verdict.IMPROPER_TRANSVERSAL, findings)
    if flat_limit_witness(f) is not None:
        return PropernessVerdict(Verdict.PROPER_FLAT_CONTACT, findings)
    return PropernessVerdict(Verdict.UNKNOWN, findings)

