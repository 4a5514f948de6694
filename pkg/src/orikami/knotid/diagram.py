"""Knot diagrams as signed Gauss sequences, with PD codes derived on demand."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..geometry import GeometryError, generic_direction, polyline_is_simple, project, segment_crossings, cross2


class DiagramError(ValueError):
    pass


class NotAKnotError(DiagramError):
    pass


Passage = tuple[int, bool]  # (crossing id, passes over)


@dataclass(frozen=True)
class KnotDiagram:
    """Oriented one-component diagram.

    ``gauss`` lists the passages through crossings in traversal order, each as
    ``(crossing, over)``; ``signs[c]`` is the right-hand sign of crossing ``c``.
    Crossing ids are ``0..n-1``.
    """

    gauss: tuple[Passage, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.signs)
        seen: dict[int, list[bool]] = {}
        for c, over in self.gauss:
            seen.setdefault(c, []).append(bool(over))
        if sorted(seen) != list(range(n)):
            raise DiagramError("crossing ids must be 0..n-1, each visited")
        for c, flags in seen.items():
            if sorted(flags) != [False, True]:
                raise DiagramError(f"crossing {c} must be passed once over and once under")
        if any(s not in (1, -1) for s in self.signs):
            raise DiagramError("crossing signs must be +1 or -1")

    @property
    def crossing_count(self) -> int:
        return len(self.signs)

    @property
    def writhe(self) -> int:
        return int(sum(self.signs))

    @classmethod
    def unknot(cls) -> "KnotDiagram":
        return cls((), ())

    @classmethod
    def from_passages(cls, gauss: Sequence[Passage], signs: dict[int, int]) -> "KnotDiagram":
        """Relabel arbitrary crossing keys to ``0..n-1`` in order of first appearance."""
        order: dict[int, int] = {}
        for c, _ in gauss:
            order.setdefault(c, len(order))
        new_signs = [0] * len(order)
        for c, k in order.items():
            new_signs[k] = signs[c]
        return cls(tuple((order[c], bool(o)) for c, o in gauss), tuple(new_signs))

    def mirror(self) -> "KnotDiagram":
        return KnotDiagram(tuple((c, not o) for c, o in self.gauss), tuple(-s for s in self.signs))

    # -- PD code ---------------------------------------------------------
    # edge k (1-based) enters passage k-1 (0-based); passage p exits into edge p+2 mod 2n

    def pd_code(self) -> list[tuple[int, int, int, int]]:
        """PD tuples ``(a, b, c, d)``: ``a`` incoming under edge, then counterclockwise."""
        m = len(self.gauss)
        if m == 0:
            return []

        def inc(p):
            return p + 1

        def out(p):
            return (p + 1) % m + 1

        under: dict[int, int] = {}
        over: dict[int, int] = {}
        for p, (c, o) in enumerate(self.gauss):
            (over if o else under)[c] = p
        pd = []
        for c in range(self.crossing_count):
            u, o = under[c], over[c]
            if self.signs[c] > 0:
                pd.append((inc(u), out(o), out(u), inc(o)))
            else:
                pd.append((inc(u), inc(o), out(u), out(o)))
        return pd

    @classmethod
    def from_pd(cls, pd: Sequence[Sequence[int]]) -> "KnotDiagram":
        """Inverse of :meth:`pd_code` for edges labelled ``1..2n`` along the orientation."""
        n = len(pd)
        if n == 0:
            return cls.unknot()
        m = 2 * n
        labels = sorted(x for t in pd for x in t)
        if labels != sorted(list(range(1, m + 1)) * 2):
            raise DiagramError("PD labels must be 1..2n, each used twice")

        def nxt(x):
            return x % m + 1

        passages: list[Passage | None] = [None] * m
        signs = [0] * n
        for c, (a, b, cc, d) in enumerate(pd):
            if cc != nxt(a):
                raise DiagramError(f"X{tuple(pd[c])}: under strand must run a -> a+1")
            if m == 2:
                sign = 1 if b == a else -1
            elif d == nxt(b):
                sign = -1
            elif b == nxt(d):
                sign = 1
            else:
                raise DiagramError(f"X{tuple(pd[c])}: over strand labels are not consecutive")
            o_in = b if sign < 0 else d
            signs[c] = sign
            for p, flag in ((a - 1, False), (o_in - 1, True)):
                if passages[p] is not None:
                    raise DiagramError("PD code visits a passage twice")
                passages[p] = (c, flag)
        return cls.from_passages(passages, dict(enumerate(signs)))  # type: ignore[arg-type]

    def pd_strings(self) -> list[str]:
        return [f"X[{a},{b},{c},{d}]" for a, b, c, d in self.pd_code()]


# --------------------------------------------------------------------------
# projection of spatial polylines


def diagram_from_planar(
    xy: np.ndarray, heights_at: "callable", closed: bool = True
) -> KnotDiagram:
    """Diagram of a plane polygon whose double points are resolved by ``heights_at``.

    ``heights_at(i, ti, j, tj)`` returns True when segment ``i`` (at parameter
    ``ti``) passes over segment ``j`` at their crossing.
    """
    n = len(xy)
    crossings = segment_crossings(xy, closed)
    events: list[tuple[int, float, int, bool]] = []
    signs: dict[int, int] = {}
    for c, (i, j, ti, tj) in enumerate(crossings):
        i_over = bool(heights_at(i, ti, j, tj))
        di = xy[(i + 1) % n] - xy[i]
        dj = xy[(j + 1) % n] - xy[j]
        o, u = (di, dj) if i_over else (dj, di)
        signs[c] = 1 if cross2(o, u) > 0 else -1
        events.append((i, ti, c, i_over))
        events.append((j, tj, c, not i_over))
    events.sort(key=lambda e: (e[0], e[1]))
    return KnotDiagram.from_passages([(c, o) for _, _, c, o in events], signs)


def diagram_from_polyline(points, seed: int | Sequence[int] = 0, direction=None) -> KnotDiagram:
    """Project a closed embedded polyline along a generic direction.

    The viewer sits at ``+direction``; the strand with the larger height along
    the direction passes over.
    """
    pts = np.asarray(points, dtype=float)
    if len(pts) < 3:
        raise NotAKnotError("a knot needs at least three waypoints")
    if not polyline_is_simple(pts, closed=True):
        raise NotAKnotError("polyline is not embedded")
    d = generic_direction(pts, seed) if direction is None else np.asarray(direction, dtype=float)
    xy, h = project(pts, d)
    n = len(pts)

    def over(i, ti, j, tj):
        hi = h[i] + ti * (h[(i + 1) % n] - h[i])
        hj = h[j] + tj * (h[(j + 1) % n] - h[j])
        if hi == hj:
            raise GeometryError("strands at equal height in projection")
        return hi > hj

    return diagram_from_planar(xy, over)


# --------------------------------------------------------------------------
# Reidemeister I / II reductions on the Gauss sequence


def _r1(gauss: list[Passage]) -> int | None:
    m = len(gauss)
    for k in range(m):
        if gauss[k][0] == gauss[(k + 1) % m][0]:
            return gauss[k][0]
    return None


def _r2(gauss: list[Passage]) -> tuple[int, int] | None:
    m = len(gauss)
    if m < 4:
        return None
    pairs: dict[frozenset, list[tuple[int, bool]]] = {}
    for k in range(m):
        (c1, o1), (c2, o2) = gauss[k], gauss[(k + 1) % m]
        if c1 != c2 and o1 == o2:
            pairs.setdefault(frozenset((c1, c2)), []).append((k, o1))
    for key, occ in pairs.items():
        if len(occ) == 2 and occ[0][1] != occ[1][1]:
            a, b = tuple(key)
            return a, b
    return None


def simplify(d: KnotDiagram) -> KnotDiagram:
    """Greedy Reidemeister I and II reductions until neither applies."""
    gauss = list(d.gauss)
    signs = dict(enumerate(d.signs))
    while gauss:
        c = _r1(gauss)
        if c is not None:
            gauss = [g for g in gauss if g[0] != c]
            continue
        pair = _r2(gauss)
        if pair is not None:
            gauss = [g for g in gauss if g[0] not in pair]
            continue
        break
    return KnotDiagram.from_passages(gauss, signs)
