"""Stick diagrams and spatial knots used by the tests, scripts and CLI examples."""

from __future__ import annotations

import math

import numpy as np

from .construct import StickDiagram


def pentagram_trefoil() -> StickDiagram:
    """The {5/2} star with one crossing of the alternating choice switched.

    Edge ``i`` joins star points ``i`` and ``i + 1``; all five edges cross
    their second neighbours. Fully alternating over/under data would give the
    (2, 5) torus knot; switching the crossing of edges 0 and 2 leaves a
    trefoil.
    """
    V = [(math.cos(math.pi / 2 + 4 * math.pi * k / 5), math.sin(math.pi / 2 + 4 * math.pi * k / 5)) for k in range(5)]
    over = {(0, 2): 2, (1, 3): 1, (2, 4): 2, (0, 3): 3, (1, 4): 4}
    return StickDiagram(np.array(V), {frozenset(k): v for k, v in over.items()})


def pentagram_cinquefoil() -> StickDiagram:
    return pentagram_trefoil().with_flipped((0, 2))


def figure_eight_sticks() -> StickDiagram:
    """Eight-stick figure-eight diagram on integer points (found by scripts/search_figure_eight.py)."""
    V = [(3, 3), (3, 5), (2, 1), (4, 2), (6, 0), (4, 5), (1, 0), (2, 2)]
    over = {(0, 5): 0, (1, 5): 1, (1, 7): 7, (5, 7): 5}
    return StickDiagram(np.array(V, dtype=float), {frozenset(k): v for k, v in over.items()})


STICK_FIXTURES = {
    "pentagram": pentagram_trefoil,
    "figure_eight": figure_eight_sticks,
}


# --------------------------------------------------------------------------
# spatial knots


def _sample(fn, n: int) -> np.ndarray:
    t = np.linspace(0, 2 * math.pi, n, endpoint=False)
    return np.column_stack(fn(t))


def torus_knot_curve(q: int, n: int = 90) -> np.ndarray:
    """The (2, q) torus knot on a standard torus."""
    return _sample(lambda t: ((2 + np.cos(q * t)) * np.cos(2 * t), (2 + np.cos(q * t)) * np.sin(2 * t), np.sin(q * t)), n)


def figure_eight_curve(n: int = 120) -> np.ndarray:
    return _sample(lambda t: ((2 + np.cos(2 * t)) * np.cos(3 * t), (2 + np.cos(2 * t)) * np.sin(3 * t), np.sin(4 * t)), n)


def twisted_unknot_curve(kinks: int, n: int = 120) -> np.ndarray:
    """A circle with ``kinks`` curls; the height has one maximum and one minimum, so it is unknotted."""
    a = 0.6

    def fn(t):
        x = np.cos(t) + a * np.cos((kinks + 1) * t)
        y = np.sin(t) + a * np.sin((kinks + 1) * t)
        return x, y, np.cos(t - 0.37)

    return _sample(fn, n)


def knot_corpus() -> dict[str, tuple[np.ndarray, int]]:
    """Ten spatial polygons with their expected determinants."""
    square = np.array([(0, 0, 0), (1, 0, 0.1), (1, 1, 0), (0, 1, -0.1)], dtype=float)
    return {
        "unknot": (square, 1),
        "twisted_unknot_1": (twisted_unknot_curve(1), 1),
        "twisted_unknot_2": (twisted_unknot_curve(2), 1),
        "twisted_unknot_3": (twisted_unknot_curve(3), 1),
        "trefoil": (torus_knot_curve(3), 3),
        "trefoil_mirror": (torus_knot_curve(3) * np.array([1, 1, -1]), 3),
        "figure_eight": (figure_eight_curve(), 5),
        "cinquefoil": (torus_knot_curve(5), 5),
        "septafoil": (torus_knot_curve(7), 7),
        "trefoil_fine": (torus_knot_curve(3, 240), 3),
    }
