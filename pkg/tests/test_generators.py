import math

import numpy as np
import pytest

from orikami.analysis import Verdict, properness_verdict
from orikami.folding import DomainError, crease_edge_count, fold_loop, validate_folding
from orikami.generators import (
    GenerationError,
    ImproperLayout,
    TorusParams,
    clip_line,
    hand_routed_loops,
    improper_fixture,
    improper_restriction,
    random_loop,
    simple_fold_sequence,
    single_crease,
    torus_folding,
)
from orikami.knotid import certify


def test_torus_params_validation():
    with pytest.raises(GenerationError):
        TorusParams(n=-1)
    with pytest.raises(GenerationError):
        TorusParams(slack_left=0.5, slack_right=0.5)
    with pytest.raises(GenerationError):
        TorusParams(n=40)
    assert TorusParams().left < TorusParams().crossing_line < TorusParams().right


@pytest.mark.parametrize("n", [0, 1, 2])
def test_torus_folding_shape(n):
    f, loop = torus_folding(n)
    assert crease_edge_count(f) == 2
    assert validate_folding(f, strict=True).valid
    pl = fold_loop(f, loop)
    assert pl.injective
    assert certify(pl).determinant == 2 * n + 3


def test_clip_line_hits_the_boundary():
    a, b = clip_line((0.5, 0.5), (1, 1))
    assert {tuple(np.round(a, 12)), tuple(np.round(b, 12))} == {(0.0, 0.0), (1.0, 1.0)}


def test_single_crease_rejects_bad_angles():
    with pytest.raises(DomainError):
        single_crease(0.0)
    with pytest.raises(DomainError):
        single_crease(4.0)


def test_single_crease_off_axis():
    f = single_crease(1.0, axis=((0.2, 0.0), (0.9, 1.0)))
    assert crease_edge_count(f) == 1
    assert validate_folding(f, strict=True).valid


def test_simple_fold_sequence_is_deterministic():
    a, b = simple_fold_sequence(seed=11, k=5), simple_fold_sequence(seed=11, k=5)
    assert np.array_equal(a.pattern.vertices, b.pattern.vertices)
    assert all(np.array_equal(x.linear, y.linear) for x, y in zip(a.face_maps, b.face_maps))
    assert crease_edge_count(a) == 5


def test_simple_fold_sequence_zero_folds():
    f = simple_fold_sequence(k=0)
    assert crease_edge_count(f) == 0


def test_improper_layout_regions():
    layout = ImproperLayout()
    pat = layout.pattern()
    faces = {name: pat.locate(p) for name, p in layout.region_points().items()}
    assert len(set(faces.values())) == 6 == len(pat.faces)


def test_hand_routed_loops_are_not_injective():
    f = improper_fixture()
    for loop in hand_routed_loops():
        assert not fold_loop(f, loop).injective


def test_random_loop_stays_in_square():
    rng = np.random.default_rng(0)
    for _ in range(50):
        w = random_loop(rng).waypoints
        assert np.all((w >= 0) & (w <= 1))


def _proper_corpus():
    yield single_crease(math.pi)
    yield single_crease(1.3, axis=((0.0, 0.3), (1.0, 0.6)))
    for seed in range(3):
        yield simple_fold_sequence(seed=seed, k=3)
    yield improper_restriction("B")
    yield improper_restriction("C")


def test_proper_foldings_admit_no_knots():
    rng = np.random.default_rng(5)
    for f in _proper_corpus():
        assert properness_verdict(f).verdict in (Verdict.PROPER_INJECTIVE, Verdict.PROPER_FLAT_CONTACT)
        for _ in range(50):
            pl = fold_loop(f, random_loop(rng))
            assert not pl.injective or certify(pl).invariants_trivial
