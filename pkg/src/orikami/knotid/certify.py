from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..geometry import polyline_is_simple, segment_distances, tolerance
from .diagram import KnotDiagram, NotAKnotError, diagram_from_polyline, simplify
from .invariants import MAX_BRACKET_CROSSINGS, alexander, jones
from .polynomial import ONE, LaurentPolynomial


@dataclass(frozen=True)
class CertificationReport:
    crossing_count: int
    writhe: int
    determinant: int
    alexander: LaurentPolynomial
    jones: LaurentPolynomial
    pd_code: tuple[tuple[int, int, int, int], ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.determinant != abs(int(self.alexander(-1))):
            raise ValueError("determinant disagrees with the Alexander polynomial at -1")

    @property
    def invariants_trivial(self) -> bool:
        return self.determinant == 1 and self.alexander == ONE and self.jones == ONE

    def same_knot_invariants(self, other: "CertificationReport", allow_mirror: bool = True) -> bool:
        """Equal determinant and Alexander, and Jones equal up to mirroring if allowed."""
        if self.determinant != other.determinant or not self.alexander.equal_up_to_units(other.alexander):
            return False
        return self.jones == other.jones or (allow_mirror and self.jones == other.jones.mirror())

    def to_dict(self) -> dict:
        return {
            "format": "orikami/1",
            "crossing_count": self.crossing_count,
            "writhe": self.writhe,
            "determinant": self.determinant,
            "alexander": self.alexander.to_json(),
            "alexander_text": str(self.alexander),
            "jones": self.jones.to_json(),
            "jones_text": str(self.jones),
            "invariants_trivial": self.invariants_trivial,
            "pd_code": [f"X[{a},{b},{c},{d}]" for a, b, c, d in self.pd_code],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CertificationReport":
        import re

        pd = []
        for s in data.get("pd_code", []):
            m = re.fullmatch(r"X\[(\d+),(\d+),(\d+),(\d+)\]", s.replace(" ", ""))
            if not m:
                raise ValueError(f"bad PD entry {s!r}")
            pd.append(tuple(int(g) for g in m.groups()))
        return cls(
            crossing_count=int(data["crossing_count"]),
            writhe=int(data["writhe"]),
            determinant=int(data["determinant"]),
            alexander=LaurentPolynomial.from_json(data["alexander"]),
            jones=LaurentPolynomial.from_json(data["jones"]),
            pd_code=tuple(pd),
        )


def certify_diagram(d: KnotDiagram, max_crossings: int = MAX_BRACKET_CROSSINGS) -> CertificationReport:
    s = simplify(d)
    alex = alexander(s)
    return CertificationReport(
        crossing_count=s.crossing_count,
        writhe=s.writhe,
        determinant=abs(int(alex(-1))),
        alexander=alex,
        jones=jones(s, max_crossings),
        pd_code=tuple(s.pd_code()),
    )


# --------------------------------------------------------------------------
# isotopy-preserving vertex elimination


def _triangle_blocked(a, b, c, Q0, Q1, eps: float) -> bool:
    """Whether any segment ``Q0[k]Q1[k]`` meets the closed triangle ``abc``."""
    if len(Q0) == 0:
        return False
    n = np.cross(b - a, c - a)
    area2 = float(np.linalg.norm(n))
    edges = ((a, b), (b, c), (c, a))
    for p, q in edges:
        P0 = np.broadcast_to(p, Q0.shape)
        P1 = np.broadcast_to(q, Q0.shape)
        if np.any(segment_distances(P0, P1, Q0, Q1) <= eps):
            return True
    if area2 <= eps * eps:
        return False
    nh = n / area2
    d0 = (Q0 - a) @ nh
    d1 = (Q1 - a) @ nh

    def inside(X):
        # barycentric test in the triangle plane
        v0, v1 = c - a, b - a
        v2 = X - a
        d00, d01, d11 = v0 @ v0, v0 @ v1, v1 @ v1
        d20, d21 = v2 @ v0, v2 @ v1
        den = d00 * d11 - d01 * d01
        v = (d11 * d20 - d01 * d21) / den
        w = (d00 * d21 - d01 * d20) / den
        return (v >= 0) & (w >= 0) & (v + w <= 1)

    cross = (d0 * d1) < 0
    if np.any(cross):
        t = d0[cross] / (d0[cross] - d1[cross])
        X = Q0[cross] + t[:, None] * (Q1[cross] - Q0[cross])
        if np.any(inside(X)):
            return True
    for Q, dq in ((Q0, d0), (Q1, d1)):
        near = np.abs(dq) <= eps
        if np.any(near):
            X = Q[near] - dq[near][:, None] * nh
            if np.any(inside(X)):
                return True
    return False


def _incident_blocked(apex, other_a, other_b, p, eps: float) -> bool:
    """Segment ``apex-p`` shares vertex ``apex`` with the triangle; does it enter it elsewhere?"""
    n = np.cross(other_a - apex, other_b - apex)
    area2 = float(np.linalg.norm(n))
    u = p - apex
    if area2 <= eps * eps:
        # degenerate triangle: blocked only if the segment runs back along it
        for w in (other_a - apex, other_b - apex):
            if np.linalg.norm(np.cross(u, w)) <= eps * np.linalg.norm(u) and float(u @ w) > 0:
                return True
        return False
    if abs(float(u @ (n / area2))) > eps:
        return False
    # coplanar: is the direction inside the closed angle at apex?
    e1, e2 = other_a - apex, other_b - apex
    c1 = np.cross(e1, u) @ n
    c2 = np.cross(u, e2) @ n
    tol = eps * np.linalg.norm(u) * area2
    return bool(c1 >= -tol and c2 >= -tol)


def reduce_polyline(points, eps: float | None = None) -> np.ndarray:
    """Remove vertices whose triangle with its neighbours is not met by the rest of the curve.

    Each removal is an elementary ambient isotopy, so the knot type is kept.
    Stops at a triangle or when no vertex can be removed.
    """
    eps = 10 * tolerance().geom if eps is None else eps
    pts = [np.asarray(p, dtype=float) for p in points]
    changed = True
    while changed and len(pts) > 3:
        changed = False
        i = 0
        while i < len(pts) and len(pts) > 3:
            n = len(pts)
            ia, ic = (i - 1) % n, (i + 1) % n
            a, b, c = pts[ia], pts[i], pts[ic]
            ip, inx = (ia - 1) % n, (ic + 1) % n
            blocked = _incident_blocked(a, b, c, pts[ip], eps) or _incident_blocked(c, b, a, pts[inx], eps)
            if not blocked:
                # segments touching neither a, b nor c
                idx = [k for k in range(n) if k not in (ia, i, ic) and (k + 1) % n not in (ia, i, ic)]
                if idx:
                    Q0 = np.array([pts[k] for k in idx])
                    Q1 = np.array([pts[(k + 1) % n] for k in idx])
                    blocked = _triangle_blocked(a, b, c, Q0, Q1, eps)
            if blocked:
                i += 1
            else:
                pts.pop(i)
                changed = True
    return np.array(pts)


REPROJECTIONS = 32


def certify(polyline, seed: int = 0, reduce: bool = True, max_crossings: int = MAX_BRACKET_CROSSINGS) -> CertificationReport:
    """Certify the knot type of a closed embedded polyline by its invariants.

    Deterministic for a fixed seed. With ``reduce`` the polyline is first
    shortened by triangle eliminations, which keeps the knot type and keeps
    the projected diagram small. When the simplified diagram is still over
    the bracket budget, further directions drawn from seeds derived from
    ``seed`` are tried in a fixed order.
    """
    pts = np.asarray(getattr(polyline, "waypoints", polyline), dtype=float)
    injective = getattr(polyline, "injective", None)
    if injective is None:
        injective = polyline_is_simple(pts, closed=True)
    if not injective:
        raise NotAKnotError("polyline image is not injective")
    if reduce:
        pts = reduce_polyline(pts)
    if len(pts) <= 3:
        return certify_diagram(KnotDiagram.unknot())
    best = None
    for k in range(REPROJECTIONS):
        d = simplify(diagram_from_polyline(pts, seed if k == 0 else [seed, k]))
        if d.crossing_count <= max_crossings:
            return certify_diagram(d, max_crossings)
        if best is None or d.crossing_count < best.crossing_count:
            best = d
    return certify_diagram(best, max_crossings)
