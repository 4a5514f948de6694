import math

import numpy as np
import pytest

from orikami.geometry import (
    CongruenceError,
    Degenerate,
    RigidEmbedding,
    SegmentHit,
    SegmentOverlap,
    Tolerance,
    angle_between,
    embedding_from_triangles,
    generic_direction,
    is_regular_projection,
    point_in_polygon,
    polygon_area,
    polyline_is_simple,
    rotation_about_axis,
    segment_intersect,
    segment_segment_distance,
    tolerance,
    trace_faces,
    use_tolerance,
)


def test_crossing_segments_meet_at_midpoint():
    hit = segment_intersect(((0, 0), (1, 1)), ((0, 1), (1, 0)))
    assert isinstance(hit, SegmentHit)
    assert hit.t_a == pytest.approx(0.5) and hit.t_b == pytest.approx(0.5)
    assert np.allclose(hit.point, (0.5, 0.5))


def test_disjoint_and_collinear_segments():
    assert segment_intersect(((0, 0), (1, 0)), ((0, 1), (1, 1))) is None
    ov = segment_intersect(((0, 0), (2, 0)), ((1, 0), (3, 0)))
    assert isinstance(ov, SegmentOverlap)
    assert {tuple(np.round(ov.start, 9)), tuple(np.round(ov.end, 9))} == {(1.0, 0.0), (2.0, 0.0)}


def test_near_touch_is_degenerate():
    res = segment_intersect(((0, 0), (1, 0)), ((0.5, 1e-12), (0.5, 1)))
    assert isinstance(res, (Degenerate, SegmentHit))


def test_segment_distance_skew_lines():
    d = segment_segment_distance((0, 0, 0), (1, 0, 0), (0.5, -1, 1), (0.5, 1, 1))
    assert d == pytest.approx(1.0)


def test_polygon_area_and_containment():
    sq = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=float)
    assert polygon_area(sq) == pytest.approx(1.0)
    assert polygon_area(sq[::-1]) == pytest.approx(-1.0)
    assert point_in_polygon((0.5, 0.5), sq)
    assert point_in_polygon((1.0, 0.5), sq, boundary=True)
    assert not point_in_polygon((1.0, 0.5), sq, boundary=False)


def test_angle_between():
    assert angle_between((1, 0), (0, 1)) == pytest.approx(math.pi / 2)
    assert angle_between((1, 0, 0), (-1, 0, 0)) == pytest.approx(math.pi)


def test_rotation_fixes_axis_and_is_rigid():
    m = rotation_about_axis((0.5, 0, 0), (0, 1, 0), 1.1)
    p = np.array([0.5, 0.3, 0, 1.0])
    assert np.allclose(m @ p, p)
    assert np.allclose(m[:3, :3].T @ m[:3, :3], np.eye(3))
    assert np.linalg.det(m[:3, :3]) == pytest.approx(1.0)


def test_embedding_from_triangles_reproduces_vertices():
    src = [(0, 0), (1, 0), (0, 1)]
    m = rotation_about_axis((0, 0, 0), (1, 2, 3), 0.7)
    dst = [(m @ np.array([*p, 0, 1]))[:3] for p in src]
    e = embedding_from_triangles(src, dst)
    for p, q in zip(src, dst):
        assert np.allclose(e(p), q, atol=1e-12)
    assert e.is_rigid()


def test_embedding_from_triangles_rejects_noncongruent():
    with pytest.raises(CongruenceError):
        embedding_from_triangles([(0, 0), (1, 0), (0, 1)], [(0, 0, 0), (2, 0, 0), (0, 1, 0)])


def test_identity_embedding():
    e = RigidEmbedding.identity()
    assert np.allclose(e((0.2, 0.3)), (0.2, 0.3, 0.0))
    assert np.allclose(e.normal, (0, 0, 1))


def test_tolerance_scoping_and_bounds():
    base = tolerance()
    with use_tolerance(base.scaled(10)):
        assert tolerance().geom == pytest.approx(10 * base.geom)
        assert tolerance().angle == base.angle
    assert tolerance() == base
    with pytest.raises(ValueError):
        Tolerance(geom=0.0)


def test_generic_direction_is_regular_and_deterministic():
    t = np.linspace(0, 2 * np.pi, 40, endpoint=False)
    pts = np.column_stack([np.cos(t), np.sin(t), 0 * t])
    d1 = generic_direction(pts, 3)
    d2 = generic_direction(pts, 3)
    assert np.array_equal(d1, d2)
    assert is_regular_projection(pts, d1)


def test_polyline_simplicity():
    sq = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]
    bow = [(0, 0, 0), (1, 1, 0), (1, 0, 0), (0, 1, 0)]
    assert polyline_is_simple(sq)
    assert not polyline_is_simple(bow)


def test_trace_faces_of_square_with_diagonal():
    V = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], dtype=float)
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
    faces, _ = trace_faces(V, edges)
    assert sorted(map(tuple, faces)) == [(0, 1, 2), (0, 2, 3)]
    assert all(polygon_area(V[f]) == pytest.approx(0.5) for f in faces)
