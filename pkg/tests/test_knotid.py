import numpy as np
import pytest

from orikami.fixtures import knot_corpus, torus_knot_curve, twisted_unknot_curve
from orikami.knotid import (
    CertificationReport,
    DiagramError,
    DiagramSizeError,
    KnotDiagram,
    LaurentPolynomial,
    NotAKnotError,
    alexander,
    bracket_state_sum,
    certify,
    certify_diagram,
    determinant,
    diagram_from_polyline,
    goeritz_determinant,
    jones,
    kauffman_bracket,
    reduce_polyline,
    simplify,
)

TREFOIL_PD = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]
FIGURE_EIGHT_PD = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]
P = LaurentPolynomial.from_dict


def test_polynomial_arithmetic():
    t = P({1: 1})
    one = LaurentPolynomial.constant(1)
    assert (t + one) * (t - one) == P({2: 1, 0: -1})
    assert (t ** -1) * t == one
    assert P({-2: 3, 1: 1}).mirror() == P({2: 3, -1: 1})
    assert P({3: 1, 4: -1}).equal_up_to_units(P({0: -1, 1: 1}))
    assert P({2: 1, 1: -1, 0: 1})(-1) == 3
    assert LaurentPolynomial.from_json(P({-1: 2, 5: -7}).to_json()) == P({-1: 2, 5: -7})


def test_trefoil_from_pd():
    d = KnotDiagram.from_pd(TREFOIL_PD)
    assert d.crossing_count == 3 and abs(d.writhe) == 3
    assert determinant(d) == 3
    assert alexander(d).equal_up_to_units(P({0: 1, 1: -1, 2: 1}))
    assert jones(d) in (P({1: 1, 3: 1, 4: -1}), P({-1: 1, -3: 1, -4: -1}))


def test_figure_eight_is_amphichiral():
    d = KnotDiagram.from_pd(FIGURE_EIGHT_PD)
    assert determinant(d) == 5 == goeritz_determinant(d)
    assert jones(d) == P({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})
    assert jones(d.mirror()) == jones(d)


def test_pd_round_trip():
    for pd in (TREFOIL_PD, FIGURE_EIGHT_PD):
        d = KnotDiagram.from_pd(pd)
        assert KnotDiagram.from_pd(d.pd_code()) == d


def test_malformed_pd_rejected():
    with pytest.raises(DiagramError):
        KnotDiagram.from_pd([[1, 2, 3, 4]])


def test_mirror_flips_jones():
    d = KnotDiagram.from_pd(TREFOIL_PD)
    assert jones(d.mirror()) == jones(d).mirror()
    assert jones(d.mirror()) != jones(d)


@pytest.mark.parametrize("name", sorted(knot_corpus()))
def test_dynamic_bracket_matches_state_sum(name):
    pts, _ = knot_corpus()[name]
    d = diagram_from_polyline(pts, seed=1)
    if d.crossing_count > 12:
        d = simplify(d)
    if d.crossing_count > 12:
        pytest.skip("state sum too large")
    assert kauffman_bracket(d) == bracket_state_sum(d.pd_code())


@pytest.mark.parametrize("name", sorted(knot_corpus()))
def test_goeritz_matches_alexander_at_minus_one(name):
    pts, det = knot_corpus()[name]
    d = simplify(diagram_from_polyline(pts, seed=0))
    assert goeritz_determinant(d) == abs(alexander(d)(-1)) == det


def test_simplify_removes_kinks():
    pts = twisted_unknot_curve(3)
    d = diagram_from_polyline(pts, direction=(0.013, 0.021, 1.0))
    assert d.crossing_count == 3
    s = simplify(d)
    assert s.crossing_count == 0
    assert certify_diagram(s).invariants_trivial


def test_bracket_budget_is_enforced():
    pts = torus_knot_curve(25, 400)
    d = diagram_from_polyline(pts, seed=0)
    assert d.crossing_count > 24
    with pytest.raises(DiagramSizeError):
        kauffman_bracket(d)


def test_certify_requires_embedding():
    with pytest.raises(NotAKnotError):
        certify(np.array([(0, 0, 0), (1, 1, 0), (1, 0, 0), (0, 1, 0)], dtype=float))


def test_certify_square_is_trivial():
    rep = certify(np.array([(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)], dtype=float))
    assert rep.invariants_trivial and rep.crossing_count == 0


def test_reduction_keeps_knot_type():
    pts = torus_knot_curve(5, 200)
    red = reduce_polyline(pts)
    assert len(red) < len(pts)
    a = certify(pts, reduce=False)
    b = certify(red, reduce=False)
    assert a.same_knot_invariants(b) and a.determinant == 5


def test_certification_report_round_trip():
    rep = certify(torus_knot_curve(3))
    again = CertificationReport.from_dict(rep.to_dict())
    assert again == rep and again.pd_code == rep.pd_code


def test_report_rejects_inconsistent_determinant():
    with pytest.raises(ValueError):
        CertificationReport(0, 0, 2, LaurentPolynomial.constant(1), LaurentPolynomial.constant(1))
