import pytest

from ghdist.admissible import (assemble, glue_from_correspondence, glued_hausdorff, interpolate,
                               interpolation_correspondence, midpoint_space, sample_admissible)
from ghdist.core import errors
from ghdist.core.model import Correspondence
from ghdist.correspondences import distortion, gh_exact
from ghdist.space import generate_space, one_point_space


def test_gluing_two_points_to_one(two1, pt):
    R = Correspondence(nX=2, nY=1, pairs=((0, 0), (1, 0)))
    rho = glue_from_correspondence(two1, pt, R, 0.5)
    assert rho.cross == [[0.5], [0.5]]
    assert glued_hausdorff(rho) == 0.5


def test_gluing_radius_checks(two1, two3):
    R = Correspondence(nX=2, nY=2, pairs=((0, 0), (1, 1)))
    assert glued_hausdorff(glue_from_correspondence(two1, two3, R, 1.0)) == 1.0
    with pytest.raises(errors.RadiusTooSmall):
        glue_from_correspondence(two1, two3, R, 0.5)
    with pytest.raises(errors.NonPositiveRadius):
        glue_from_correspondence(two1, two3, R, 0.0)


def test_optimal_gluing_attains_the_distance():
    X = generate_space("random", 4, seed=5)
    Y = generate_space("random", 3, seed=6)
    res = gh_exact(X, Y)
    rho = glue_from_correspondence(X, Y, res.certificate, res.value)
    assert glued_hausdorff(rho) == pytest.approx(res.value, abs=1e-9)


def test_sampled_metrics_are_admissible_and_never_beat_the_distance():
    X = generate_space("random", 3, seed=1)
    Y = generate_space("random", 4, seed=2)
    d = gh_exact(X, Y).value
    for rho in sample_admissible(X, Y, 200, rng_seed=3):
        Z = assemble(rho)
        assert Z.n == X.n + Y.n
        assert glued_hausdorff(rho) >= d - 1e-9


def test_sampling_is_seeded():
    X = generate_space("random", 3, seed=1)
    Y = generate_space("random", 3, seed=2)
    a = [r.cross for r in sample_admissible(X, Y, 10, rng_seed=4)]
    b = [r.cross for r in sample_admissible(X, Y, 10, rng_seed=4)]
    assert a == b


def test_midpoint_of_two_point_spaces(two1, two3):
    M = midpoint_space(two1, two3, 0.5)
    assert M.n == 2
    assert M.dist[0][1] == 2.0
    assert gh_exact(two1, M).value == 0.5
    assert gh_exact(M, two3).value == 0.5


def test_endpoints_recover_the_spaces(two1, pt):
    R = Correspondence(nX=2, nY=1, pairs=((0, 0), (1, 0)))
    M0, _ = interpolate(two1, pt, R, 0.0)
    M1, _ = interpolate(two1, pt, R, 1.0)
    assert M0.dist == two1.dist
    assert M1.n == 1
    with pytest.raises(ValueError):
        interpolate(two1, pt, R, 1.5)


def test_interpolation_is_lipschitz_along_the_path():
    X = generate_space("random", 4, seed=12)
    Y = generate_space("random", 4, seed=13)
    res = gh_exact(X, Y)
    for s, t in ((0.0, 0.5), (0.25, 0.75), (0.5, 1.0), (0.0, 1.0)):
        Ms, Mt, C = interpolation_correspondence(X, Y, res.certificate, s, t)
        assert 0.5 * distortion(C, Ms, Mt) <= (t - s) * res.value + 1e-9


def test_midpoint_splits_distance_in_half():
    X = generate_space("random", 3, seed=30)
    Y = generate_space("random", 4, seed=31)
    d = gh_exact(X, Y).value
    M = midpoint_space(X, Y, 0.5)
    assert gh_exact(X, M).value == pytest.approx(d / 2, abs=1e-9)
    assert gh_exact(M, Y).value == pytest.approx(d / 2, abs=1e-9)


def test_point_collapses_under_quotient():
    pt = one_point_space()
    R = Correspondence(nX=1, nY=1, pairs=((0, 0),))
    M, classes = interpolate(pt, pt, R, 0.5)
    assert M.n == 1 and classes == [0]
