import numpy as np
import pytest

from ghdist.core import errors
from ghdist.correspondences import gh_exact
from ghdist.maps import (correspondence_to_map, covering_radius, edwards_dE, hat_dGH, identity_map,
                         is_eps_isometry, is_isometric_map, make_map, map_distortion, map_table,
                         min_distortion_map)
from ghdist.space import generate_space


def test_map_distortion_and_radius(two1, two3, pt, line013):
    assert map_distortion(make_map(two1, pt, [0, 0])) == 1
    assert map_distortion(make_map(two1, two3, [0, 1])) == 2
    assert map_distortion(identity_map(line013)) == 0
    assert is_isometric_map(identity_map(line013))
    f = make_map(pt, two1, [0])
    assert covering_radius(f) == 1
    assert map_distortion(f) == 0


def test_eps_isometry_senses(two1, pt):
    f = make_map(pt, two1, [0])
    assert is_eps_isometry(f, 1.0, "edwards")
    assert not is_eps_isometry(f, 1.0, "modern")
    assert is_eps_isometry(f, 1.0 + 1e-9, "modern")
    with pytest.raises(ValueError):
        is_eps_isometry(f, 0.0)


def test_min_distortion_map(two1, two3, pt):
    # constant maps already have distortion 1
    f, dis = min_distortion_map(two1, two3)
    assert dis == 1
    f, dis = min_distortion_map(two3, two1)
    assert dis == 2
    f, dis = min_distortion_map(two1, pt)
    assert dis == 1 and f.image == (0, 0)
    f, dis = min_distortion_map(pt, two1)
    assert dis == 0


def test_branching_agrees_with_enumeration():
    X = generate_space("random", 4, seed=2)
    Y = generate_space("random", 4, seed=3)
    _, enumerated = min_distortion_map(X, Y)
    _, branched = min_distortion_map(X, Y, cap=1)
    assert branched == enumerated


def test_map_table_is_lexicographic(two1, line013):
    dis, rad = map_table(two1, line013, with_radius=True)
    assert len(dis) == 9
    # map 0 is the constant map to point 0
    assert dis[0] == 1 and rad[0] == 3
    assert np.all(rad >= 0)
    with pytest.raises(errors.EnumerationTooLarge):
        map_table(line013, two1, cap=4)


def test_edwards_distance(two1, two3, pt):
    assert edwards_dE(two1, pt) == 1
    assert edwards_dE(two1, two3) == 2
    assert gh_exact(two1, pt).value == 0.5 * edwards_dE(two1, pt)


def test_hat_differs_from_gh(two1, pt):
    h = hat_dGH(two1, pt)
    assert h.value == 1
    assert not h.attained
    assert gh_exact(two1, pt).value == 0.5


def test_hat_of_isometric_spaces_is_attained_zero(line013):
    h = hat_dGH(line013, line013)
    assert h.value == 0 and h.attained


def test_certificate_maps_are_near_isometries():
    X = generate_space("random", 4, seed=40)
    Y = generate_space("random", 3, seed=41)
    res = gh_exact(X, Y)
    eps = 2 * res.value + 1e-6
    f = correspondence_to_map(res.certificate, X, Y, "x->y")
    g = correspondence_to_map(res.certificate, X, Y, "y->x")
    assert f.source == X and g.source == Y
    assert is_eps_isometry(f, eps) and is_eps_isometry(g, eps)
    h = hat_dGH(X, Y)
    assert h.value <= 2 * res.value + 1e-9
    assert res.value <= 2 * h.value + 1e-9
