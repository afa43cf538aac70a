import numpy as np
import pytest

from ghdist.core.model import SupNormPointSet
from ghdist.correspondences import gh_exact
from ghdist.embed import (align_upper_bound, aligned_images, kuratowski_embed, supnorm_distances,
                          supnorm_hausdorff, translate)
from ghdist.space import generate_space


def test_kuratowski_rows(two1, pt, line013):
    assert kuratowski_embed(pt).points == [[0.0]]
    assert kuratowski_embed(two1).points == [[0.0, 1.0], [1.0, 0.0]]
    P = kuratowski_embed(line013).array
    assert np.abs(supnorm_distances(P, P) - line013.matrix).max() <= 1e-12


@pytest.mark.parametrize("n", [1, 2, 7, 20, 64])
def test_kuratowski_is_isometric(n):
    X = generate_space("random", n, seed=n)
    P = kuratowski_embed(X).array
    assert np.abs(supnorm_distances(P, P) - X.matrix).max() <= 1e-12


def test_supnorm_hausdorff_examples():
    A = SupNormPointSet(dim=2, points=[[0, 1], [1, 0]])
    B = SupNormPointSet(dim=2, points=[[0, 3], [3, 0]])
    assert supnorm_hausdorff(A, A) == 0
    assert supnorm_hausdorff(A, B) == 2
    u = SupNormPointSet(dim=3, points=[[1, 2, 3]])
    v = SupNormPointSet(dim=1, points=[[0]])
    assert supnorm_hausdorff(u, v) == 3


def test_translation_invariance():
    A = SupNormPointSet(dim=2, points=[[0, 1], [1, 0]])
    B = SupNormPointSet(dim=2, points=[[0, 3], [3, 0]])
    w = [0.5, -2.0]
    assert supnorm_hausdorff(translate(A, w), translate(B, w)) == supnorm_hausdorff(A, B)


def test_align_identical_spaces(line013):
    al = align_upper_bound(line013, line013, restarts=1)
    assert al.value == 0
    assert al.restart == 0


def test_align_centers_a_point_between_two(two1, pt):
    al = align_upper_bound(two1, pt, restarts=4, rng_seed=1)
    assert al.value == pytest.approx(0.5, abs=1e-6)
    phi, psi = aligned_images(two1, pt, al)
    assert supnorm_hausdorff(phi, psi) == pytest.approx(al.value, abs=1e-12)


def test_align_bound_is_sound():
    rng = np.random.default_rng(8)
    for _ in range(10):
        X = generate_space("random", int(rng.integers(1, 5)), seed=int(rng.integers(2**32)))
        Y = generate_space("random", int(rng.integers(1, 5)), seed=int(rng.integers(2**32)))
        al = align_upper_bound(X, Y, restarts=3, rng_seed=int(rng.integers(2**32)))
        assert al.value >= gh_exact(X, Y).value - 1e-9


def test_align_is_deterministic_across_threads():
    X = generate_space("random", 4, seed=1)
    Y = generate_space("random", 3, seed=2)
    a = align_upper_bound(X, Y, restarts=4, rng_seed=5)
    b = align_upper_bound(X, Y, restarts=4, rng_seed=5, threads=2)
    assert a == b


def test_align_needs_a_restart(two1):
    with pytest.raises(ValueError):
        align_upper_bound(two1, two1, restarts=0)


def test_translation_invariance_is_exact_on_dyadic_data():
    rng = np.random.default_rng(31)
    for _ in range(25):
        dim = int(rng.integers(1, 6))
        A = SupNormPointSet(dim=dim, points=(rng.integers(-64, 65, size=(int(rng.integers(1, 5)), dim)) / 8).tolist())
        B = SupNormPointSet(dim=dim, points=(rng.integers(-64, 65, size=(int(rng.integers(1, 5)), dim)) / 8).tolist())
        w = (rng.integers(-256, 257, size=dim) / 16).tolist()
        assert supnorm_hausdorff(translate(A, w), translate(B, w)) == supnorm_hausdorff(A, B)
