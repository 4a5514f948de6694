"""Parametric foldings and loops.

Two-crease foldings carrying (2, 2n+3) torus knots, single line folds,
random compositions of line folds with an injective image, and a small
improper folding admitting no knots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import is_injective
from .folding import DomainError, Folding, PaperLoop, build_pattern
from .geometry import GeometryError, RigidEmbedding, segment_segment_distance, tolerance
from .hinge import fold_tree


class GenerationError(GeometryError):
    pass


# --------------------------------------------------------------------------
# torus knots with two creases


@dataclass(frozen=True)
class TorusParams:
    """Layout of the two-crease torus folding and its toothed loop.

    Creases sit at ``x = left`` and ``x = right``. The outer panels are folded
    over the middle one, short of flat by ``slack_left`` and ``slack_right``
    radians, so that they cross along a vertical line. Strand A runs up the
    left panel and strand B up the right one; each of the ``n + 1`` tooth
    pairs pushes A past B and B past A.
    """

    n: int = 0
    tooth_width: float = 0.04
    tooth_depth: float = 0.15
    margin: float = 0.05
    gap: float = 0.02
    left: float = 1 / 3
    right: float = 2 / 3
    slack_left: float = 0.4
    slack_right: float = 0.5
    strand_left: float = 0.47  # image x of strand A, below the crossing line
    strand_right: float = 0.57  # image x of strand B, above it

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise GenerationError("n must be a non-negative integer")
        for name in ("tooth_width", "tooth_depth", "margin", "gap", "left", "right"):
            v = getattr(self, name)
            if not 0 < v < 1:
                raise GenerationError(f"{name} must lie in (0, 1), got {v}")
        if not self.left < self.right:
            raise GenerationError("left crease must lie left of the right crease")
        if abs(self.slack_left - self.slack_right) <= tolerance().angle:
            raise GenerationError("outer panels need distinct dihedral angles")
        usable = 1 - 2 * self.margin - 4 * self.tooth_width
        if (self.n + 1) * (2 * self.tooth_width + self.gap) >= usable:
            raise GenerationError(f"{self.n + 1} tooth pairs do not fit in height {usable:.3f}")
        xs = self.crossing_line
        if not self.left < self.strand_left < xs < self.strand_right < self.right:
            raise GenerationError("strands must straddle the line where the flaps cross")

    @property
    def crossing_line(self) -> float:
        """Image x where the two folded flaps meet."""
        tl, tr = math.tan(self.slack_left), math.tan(self.slack_right)
        return (self.left * tl + self.right * tr) / (tl + tr)


def _torus_loop(p: TorusParams) -> np.ndarray:
    cl, cr = math.cos(p.slack_left), math.cos(p.slack_right)
    xa = p.left - (p.strand_left - p.left) / cl  # paper x of strand A
    xb = p.right + (p.right - p.strand_right) / cr
    ta, tb = xa - p.tooth_depth, xb + p.tooth_depth
    far = tb + p.margin / 2
    if ta <= 0 or far >= 1:
        raise GenerationError("teeth run off the paper; reduce tooth_depth")
    if p.strand_left + p.tooth_depth * cl <= p.strand_right:
        raise GenerationError("teeth of A do not reach strand B; increase tooth_depth")
    if p.strand_right - p.tooth_depth * cr >= p.strand_left:
        raise GenerationError("teeth of B do not reach strand A; increase tooth_depth")
    w, g = p.tooth_width, p.gap
    y_lo, y_hi = p.margin, 1 - p.margin
    y_bot, y_top = y_lo + 2 * w, y_hi - 2 * w
    height = (p.n + 1) * (2 * w) + p.n * g
    starts = [0.5 * (y_bot + y_top - height) + k * (2 * w + g) for k in range(p.n + 1)]
    a_side = [(xa, y_bot)]
    for y0 in starts:  # strand A, teeth toward the outer edge
        a_side += [(xa, y0), (ta, y0), (ta, y0 + 1.5 * w), (xa, y0 + 1.5 * w)]
    a_side.append((xa, y_top))
    b_side = [(xb, y_bot)]
    for y0 in starts:
        b_side += [(xb, y0 + 0.5 * w), (tb, y0 + 0.5 * w), (tb, y0 + 2 * w), (xb, y0 + 2 * w)]
    b_side.append((xb, y_top))
    # down A, straight under-pass from A's foot to B's head, down B, then
    # back around the right panel and across the top to A's head
    pts = a_side[::-1] + b_side[::-1] + [(xb, y_lo), (far, y_lo), (far, y_hi), (xa, y_hi)]
    return np.array(pts)


def torus_folding(p: TorusParams | int = 0) -> tuple[Folding, PaperLoop]:
    """Two-crease folding and loop whose image is the (2, 2n+3) torus knot."""
    if not isinstance(p, TorusParams):
        p = TorusParams(n=int(p))
    pattern = build_pattern([(p.left, 0), (p.left, 1), (p.right, 0), (p.right, 1)], [(0, 1), (2, 3)])
    middle = pattern.locate((0.5 * (p.left + p.right), 0.5))
    angles = [0.0, 0.0]
    for c, (i, j) in enumerate(pattern.creases):
        x = pattern.vertices[i][0]
        angles[c] = math.pi - (p.slack_left if abs(x - p.left) < 1e-12 else p.slack_right)
    folding = fold_tree(pattern, angles, root=middle)
    return folding, PaperLoop(_torus_loop(p))


# --------------------------------------------------------------------------
# line folds


def clip_line(point, direction) -> tuple[np.ndarray, np.ndarray]:
    """Chord cut from the unit square by the line through ``point`` along ``direction``."""
    p = np.asarray(point, dtype=float)
    d = np.asarray(direction, dtype=float)
    if np.linalg.norm(d) <= tolerance().geom:
        raise DomainError("line direction is zero")
    lo, hi = -np.inf, np.inf
    for k in range(2):
        if abs(d[k]) <= 1e-15:
            if not 0 <= p[k] <= 1:
                raise DomainError("line misses the unit square")
            continue
        t0, t1 = (0 - p[k]) / d[k], (1 - p[k]) / d[k]
        lo, hi = max(lo, min(t0, t1)), min(hi, max(t0, t1))
    if hi - lo <= tolerance().geom / np.linalg.norm(d):
        raise DomainError("line misses the unit square")
    a, b = np.clip(p + lo * d, 0, 1), np.clip(p + hi * d, 0, 1)
    if _on_edge(a, b):
        raise DomainError("line runs along the edge of the square")
    return a, b


def _on_edge(a, b) -> bool:
    eps = tolerance().geom
    return any(abs(a[k] - b[k]) <= eps and (abs(a[k]) <= eps or abs(a[k] - 1) <= eps) for k in range(2))


def single_crease(theta: float, axis=((0.5, 0.0), (0.5, 1.0))) -> Folding:
    """Fold one side of a line through the square by ``theta`` about it.

    ``axis`` is a pair of distinct points on the line. The side that is not
    the pattern's first face is rotated; ``theta = pi`` folds it flat.
    """
    if not 0 < theta <= math.pi:
        raise DomainError(f"fold angle must lie in (0, pi], got {theta}")
    p0, p1 = (np.asarray(p, dtype=float) for p in axis)
    a, b = clip_line(p0, p1 - p0)
    pattern = build_pattern([a, b], [(0, 1)])
    return fold_tree(pattern, [theta])


def _random_chord(rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    p = rng.uniform(0.15, 0.85, size=2)
    phi = rng.uniform(0, math.pi)
    return clip_line(p, (math.cos(phi), math.sin(phi)))


def _chord_ok(a, b, chords, sep: float) -> bool:
    if np.linalg.norm(b - a) < 0.2:
        return False
    return all(segment_segment_distance(a, b, c, d) >= sep for c, d in chords)


def simple_fold_sequence(seed: int = 0, k: int = 3, attempts: int = 100, separation: float = 0.03) -> Folding:
    """Compose ``k`` random line folds whose image has no self-intersection.

    The fold lines are disjoint chords of the square, so the faces hang off
    each other in a tree; each hinge gets an angle drawn from
    ``(0.1, pi - 0.1)`` with a random sign. Compositions whose image
    self-intersects are rejected.
    """
    if k < 0:
        raise GenerationError("fold count must be non-negative")
    rng = np.random.default_rng(seed)
    if k == 0:
        return Folding(build_pattern([], []), (RigidEmbedding.identity(),))
    for _ in range(attempts):
        chords: list[tuple[np.ndarray, np.ndarray]] = []
        tries = 0
        while len(chords) < k and tries < 200:
            tries += 1
            a, b = _random_chord(rng)
            if _chord_ok(a, b, chords, separation):
                chords.append((a, b))
        if len(chords) < k:
            continue
        verts = [p for c in chords for p in c]
        pattern = build_pattern(verts, [(2 * i, 2 * i + 1) for i in range(k)])
        angles = rng.uniform(0.1, math.pi - 0.1, size=k) * rng.choice((-1.0, 1.0), size=k)
        folding = fold_tree(pattern, angles)
        if is_injective(folding):
            return folding
    raise GenerationError(f"no injective composition of {k} folds within {attempts} attempts")


# --------------------------------------------------------------------------
# an improper folding without knots


@dataclass(frozen=True)
class ImproperLayout:
    """Tilted square ``A`` with corners on the four sides of the paper.

    ``A`` is folded flat along its diagonal ``PQ``. The corner flaps ``B``
    (at (1, 0)) and ``C`` (at (0, 1)) hang off opposite halves of ``A`` and
    lean back over it until they cut through each other. The two remaining
    corners are tucked under. Any loop meeting both ``B`` and ``C`` has to
    cross the diagonal twice.
    """

    inset: float = 0.3
    lean_b: float = 2.4
    lean_c: float = 2.3
    tuck: float = 1.0

    @property
    def corners(self) -> dict[str, np.ndarray]:
        a = self.inset
        return {
            "P": np.array([a, 0.0]),
            "K1": np.array([1.0, a]),
            "Q": np.array([1 - a, 1.0]),
            "K2": np.array([0.0, 1 - a]),
        }

    def pattern(self):
        c = self.corners
        verts = [c["P"], c["K1"], c["Q"], c["K2"]]
        # diagonal, B hinge, tuck hinge, C hinge, tuck hinge
        return build_pattern(verts, [(0, 2), (0, 1), (1, 2), (2, 3), (3, 0)])

    def region_points(self) -> dict[str, np.ndarray]:
        """One interior paper point per region."""
        a = self.inset
        return {
            "A_upper": np.array([0.7, 0.45]),
            "A_lower": np.array([0.3, 0.55]),
            "B": np.array([1 - a / 4, a / 4]),
            "C": np.array([a / 4, 1 - a / 4]),
            "tuck_upper": np.array([1 - a / 4, 1 - a / 4]),
            "tuck_lower": np.array([a / 4, a / 4]),
        }


def _improper(layout: ImproperLayout, b_angle: float, c_angle: float) -> Folding:
    pattern = layout.pattern()
    pts = layout.region_points()
    face = {name: pattern.locate(p) for name, p in pts.items()}
    if len(set(face.values())) != 6:
        raise GenerationError("improper layout does not produce six regions")
    angles = [0.0] * pattern.n_creases
    for c, (fa, fb) in enumerate(pattern.crease_faces):
        pair = {fa, fb}
        if pair == {face["A_upper"], face["A_lower"]}:
            angles[c] = math.pi
        elif pair == {face["A_upper"], face["B"]}:
            angles[c] = b_angle
        elif pair == {face["A_upper"], face["tuck_upper"]}:
            angles[c] = -layout.tuck
        elif pair == {face["A_lower"], face["C"]}:
            angles[c] = c_angle  # the lower half is upside down after the flat fold
        elif pair == {face["A_lower"], face["tuck_lower"]}:
            angles[c] = layout.tuck
        else:
            raise GenerationError("unexpected crease in improper layout")
    return fold_tree(pattern, angles, root=face["A_upper"])


def improper_fixture(layout: ImproperLayout | None = None) -> Folding:
    """Flat-folded square ``A`` whose end flaps ``B`` and ``C`` cross transversally."""
    layout = layout or ImproperLayout()
    return _improper(layout, layout.lean_b, -layout.lean_c)


def improper_restriction(avoid: str, layout: ImproperLayout | None = None) -> Folding:
    """The fixture with ``B`` or ``C`` moved clear: tucked under, steeper than its neighbour."""
    layout = layout or ImproperLayout()
    steep = layout.tuck + 0.4
    if avoid == "B":
        return _improper(layout, -steep, -layout.lean_c)
    if avoid == "C":
        return _improper(layout, layout.lean_b, steep)
    raise ValueError("avoid must be 'B' or 'C'")


def hand_routed_loops(layout: ImproperLayout | None = None) -> list[PaperLoop]:
    """Loops that visit both ``B`` and ``C``, crossing the diagonal of ``A`` twice."""
    layout = layout or ImproperLayout()
    pts = layout.region_points()
    b, c = pts["B"], pts["C"]
    u = (c - b) / np.linalg.norm(c - b)
    nrm = np.array([-u[1], u[0]])
    loops = []
    for width in (0.02, 0.05, 0.08):
        loops.append(PaperLoop(np.array([b - width * nrm, c - width * nrm, c + width * nrm, b + width * nrm])))
    # wider routes, one through both tucked corners
    loops.append(PaperLoop(np.array([b, (0.95, 0.95), c, (0.05, 0.05)])))
    loops.append(PaperLoop(np.array([b, (0.9, 0.9), c, (0.4, 0.45), (0.5, 0.2)])))
    loops.append(PaperLoop(np.array([b, (0.6, 0.6), (0.8, 0.85), c, (0.2, 0.3), (0.45, 0.35)])))
    return loops


# --------------------------------------------------------------------------
# random loops


def random_loop(rng: np.random.Generator, vertices: int | None = None) -> PaperLoop:
    """A random star-shaped simple polygon inside the square."""
    m = int(vertices or rng.integers(3, 9))
    for _ in range(100):
        centre = rng.uniform(0.2, 0.8, size=2)
        reach = min(centre.min(), 1 - centre.max())
        phis = np.sort(rng.uniform(0, 2 * math.pi, size=m))
        if np.min(np.diff(np.append(phis, phis[0] + 2 * math.pi))) < 0.1:
            continue
        radii = rng.uniform(0.15, 1.0, size=m) * reach * 0.98
        pts = centre + radii[:, None] * np.column_stack([np.cos(phis), np.sin(phis)])
        try:
            return PaperLoop(pts)
        except GeometryError:
            continue
    raise GenerationError("could not sample a simple loop")
