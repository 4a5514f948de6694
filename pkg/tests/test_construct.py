import math

import numpy as np
import pytest

from orikami.construct import (
    ConstructionError,
    StickDiagram,
    StickDiagramError,
    angle_sum,
    choose_apex,
    cone_pipeline,
    double_points,
    solve_apex_height,
    unfolded_congruence_defect,
)
from orikami.fixtures import figure_eight_sticks, pentagram_cinquefoil, pentagram_trefoil
from orikami.folding import crease_edge_count, fold_loop, validate_folding
from orikami.knotid import certify, certify_diagram

SQUARE = np.array([(0, 0), (2, 0), (2, 2), (0, 2)], dtype=float)


def spatial_wedge_error(r) -> float:
    """Distance between each folded paper wedge and the scaled cone triangle it should cover."""
    u, sc = r.unfolding, r.unfolding.scale
    Q, P = r.cone.apex, r.cone.spatial_vertices()
    worst = 0.0
    for i, face in enumerate(u.wedge_faces):
        j = (i + 1) % r.diagram.n
        m = r.folding.face_maps[face]
        pairs = ((u.centre, Q), (u.tips[i], P[i]), (u.tips[j], P[j]))
        worst = max(worst, *(float(np.linalg.norm(m(a) - sc * b)) for a, b in pairs))
    return worst


def test_double_points_of_pentagram():
    dp = double_points(pentagram_trefoil().vertices)
    assert len(dp) == 5
    assert all(abs(i - j) % 5 in (2, 3) for i, j in map(tuple, dp))


def test_crossing_data_must_match_geometry():
    s = pentagram_trefoil()
    cr = dict(s.crossings)
    cr.pop(frozenset((0, 2)))
    with pytest.raises(StickDiagramError, match="missing"):
        StickDiagram(s.vertices, cr)
    with pytest.raises(StickDiagramError):
        StickDiagram(s.vertices, {**s.crossings, frozenset((0, 2)): 4})


def test_collinear_edges_rejected():
    with pytest.raises(StickDiagramError, match="collinear"):
        StickDiagram(np.array([(0, 0), (1, 0), (2, 0), (1, 1)], dtype=float), {})


def test_stick_dict_round_trip():
    s = figure_eight_sticks()
    again = StickDiagram.from_dict(s.to_dict())
    assert np.array_equal(again.vertices, s.vertices) and again.crossings == s.crossings


def test_reference_determinants():
    assert certify_diagram(pentagram_trefoil().reference_diagram()).determinant == 3
    assert certify_diagram(pentagram_cinquefoil().reference_diagram()).determinant == 5
    assert certify_diagram(figure_eight_sticks().reference_diagram()).determinant == 5


def test_convex_polygon_needs_no_lift():
    s = StickDiagram(SQUARE, {})
    q0 = choose_apex(s)
    assert angle_sum(s, q0) == pytest.approx(2 * math.pi)
    cone = solve_apex_height(s, q0)
    assert cone.apex[2] == 0.0


def test_apex_height_closes_the_angle_sum():
    s = pentagram_trefoil()
    q0 = choose_apex(s)
    assert angle_sum(s, q0) > 2 * math.pi
    cone = solve_apex_height(s, q0)
    assert cone.apex[2] > 0
    assert cone.residual <= 1e-9
    assert angle_sum(s, cone.apex) == pytest.approx(2 * math.pi, abs=1e-9)


def test_planar_sum_below_full_turn_is_an_error():
    s = StickDiagram(SQUARE, {})
    with pytest.raises(ConstructionError):
        solve_apex_height(s, np.array([5.0, 5.0]))


@pytest.mark.parametrize(
    "make,creases,det",
    [(pentagram_trefoil, 5, 3), (pentagram_cinquefoil, 5, 5), (figure_eight_sticks, 8, 5)],
)
def test_cone_pipeline(make, creases, det):
    s = make()
    r = cone_pipeline(s)
    assert validate_folding(r.folding, strict=True).valid
    assert crease_edge_count(r.folding) == creases
    assert r.cone.residual <= 1e-9
    assert unfolded_congruence_defect(r) <= 1e-8
    assert spatial_wedge_error(r) <= 1e-8
    pl = fold_loop(r.folding, r.loop)
    assert pl.injective
    rep = certify(pl)
    assert rep.determinant == det
    assert rep.same_knot_invariants(certify_diagram(s.reference_diagram()))


def test_folded_loop_sits_near_the_stick_polygon():
    s = pentagram_trefoil()
    r = cone_pipeline(s)
    pl = fold_loop(r.folding, r.loop)
    sc = r.unfolding.scale
    P = sc * r.cone.spatial_vertices()
    # every stick vertex is (nearly) visited by the folded loop
    for p in P:
        assert np.min(np.linalg.norm(pl.waypoints - p, axis=1)) < 0.05
