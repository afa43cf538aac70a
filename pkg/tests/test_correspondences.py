import math

import numpy as np
import pytest

from ghdist.core import errors
from ghdist.core.model import Correspondence
from ghdist.correspondences import (distortion, enumerate_correspondences, gh_exact, gh_exact_oracle,
                                    gh_lower_bound, nearest_point_correspondence)
from ghdist.space import generate_space, ngon_space, permute_space, scale_space


def test_correspondence_requires_surjective_projections():
    with pytest.raises(ValueError):
        Correspondence(nX=2, nY=2, pairs=((0, 0), (1, 0)))
    R = Correspondence(nX=2, nY=1, pairs=((1, 0), (0, 0), (0, 0)))
    assert R.pairs == ((0, 0), (1, 0))


def test_distortion_examples(two1, two3, pt):
    assert distortion(Correspondence(nX=2, nY=2, pairs=((0, 0), (1, 1))), two1, two3) == 2
    assert distortion(Correspondence(nX=2, nY=1, pairs=((0, 0), (1, 0))), two1, pt) == 1
    with pytest.raises(errors.SizeMismatch):
        distortion(Correspondence(nX=1, nY=1, pairs=((0, 0),)), two1, pt)


def test_sub_relation_has_smaller_distortion(line013, two3):
    small = Correspondence(nX=3, nY=2, pairs=((0, 0), (1, 0), (2, 1)))
    big = Correspondence(nX=3, nY=2, pairs=small.pairs + ((1, 1),))
    assert distortion(small, line013, two3) <= distortion(big, line013, two3)


@pytest.mark.parametrize("nX, nY, count", [(1, 1, 1), (1, 3, 1), (2, 2, 7), (2, 3, 25)])
def test_enumeration_counts(nX, nY, count):
    rels = list(enumerate_correspondences(nX, nY))
    assert len(rels) == count
    assert len({r.pairs for r in rels}) == count


def test_oracle_cap():
    with pytest.raises(errors.OracleTooLarge):
        list(enumerate_correspondences(5, 6))


def test_exact_small_examples(two1, two3, pt, line013):
    assert gh_exact(line013, line013).value == 0
    assert gh_exact(two1, two3).value == 1
    assert gh_exact(two1, pt).value == 0.5
    assert gh_lower_bound(two1, two3) == 1
    res = gh_exact(two1, two3)
    assert distortion(res.certificate, two1, two3) == 2 * res.value
    assert res.lower_bound == res.upper_bound == res.value
    assert not res.truncated


def test_oracle_matches_branch_and_bound():
    rng = np.random.default_rng(11)
    for _ in range(40):
        X = generate_space("random", int(rng.integers(1, 5)), seed=int(rng.integers(2**32)))
        Y = generate_space("random", int(rng.integers(1, 5)), seed=int(rng.integers(2**32)))
        fast, slow = gh_exact(X, Y), gh_exact_oracle(X, Y)
        assert abs(fast.value - slow.value) <= 1e-12
        assert fast.value >= gh_lower_bound(X, Y) - 1e-12


def test_symmetry_and_scaling():
    X = generate_space("random", 4, seed=3)
    Y = generate_space("random", 5, seed=4)
    d = gh_exact(X, Y).value
    assert gh_exact(Y, X).value == d
    assert gh_exact(scale_space(X, 3.0), scale_space(Y, 3.0)).value == pytest.approx(3 * d, abs=1e-9)


def test_isometric_copies_are_at_distance_zero():
    X = generate_space("random", 5, seed=9)
    assert gh_exact(X, permute_space(X, [4, 2, 0, 3, 1])).value <= 1e-12


def test_budget_truncation_reports_bounds():
    line, tri = generate_space("line", 3), generate_space("simplex", 3)
    res = gh_exact(line, scale_space(tri, 2.0), budget=1)
    assert res.truncated
    assert res.lower_bound <= res.upper_bound == res.value


def test_threads_give_the_same_value():
    X = generate_space("random", 5, seed=21)
    Y = generate_space("random", 5, seed=22)
    assert gh_exact(X, Y, threads=2).value == gh_exact(X, Y).value


def test_doubling_correspondence_on_circles():
    C4, C8 = ngon_space(4), ngon_space(8)
    R = nearest_point_correspondence(C4, C8, [0, 2, 4, 6])
    assert distortion(R, C4, C8) == pytest.approx(math.pi / 4, abs=1e-12)
    assert gh_exact(C4, C8).value <= math.pi / 8 + 1e-12


def test_bounds_sandwich_the_value():
    X = generate_space("random", 3, seed=50)
    Y = generate_space("random", 3, seed=51)
    d = gh_exact(X, Y).value
    assert gh_lower_bound(X, Y) <= d
    for R in enumerate_correspondences(X.n, Y.n):
        assert d <= 0.5 * distortion(R, X, Y) + 1e-12


def test_scaled_copies_lie_on_a_path():
    X = generate_space("random", 4, seed=60)
    diam = max(max(row) for row in X.dist)
    for lam, mu in ((0.5, 1.0), (1.0, 3.0), (0.25, 2.0)):
        d = gh_exact(scale_space(X, lam), scale_space(X, mu)).value
        assert d <= 0.5 * abs(lam - mu) * diam + 1e-9


def test_certificate_is_lexicographically_smallest_optimum():
    rng = np.random.default_rng(17)
    for _ in range(60):
        X = generate_space("random", int(rng.integers(2, 4)), seed=int(rng.integers(2**32)))
        Y = generate_space("random", int(rng.integers(2, 4)), seed=int(rng.integers(2**32)))
        res = gh_exact(X, Y)
        opt = 2 * gh_exact_oracle(X, Y).value
        smallest = min(R.pairs for R in enumerate_correspondences(X.n, Y.n) if distortion(R, X, Y) == opt)
        assert res.certificate.pairs == smallest
        assert gh_exact(X, Y, threads=2).certificate.pairs == smallest


def test_certificate_of_two_point_spaces(two1, two3):
    assert gh_exact(two1, two3).certificate.pairs == ((0, 0), (1, 1))
