import math

import numpy as np
import pytest

from ghdist.core import errors
from ghdist.space import (are_isometric, check_matrix, diameter, find_isometry, generate_space,
                          hausdorff_distance, is_eps_net, parse_space, permute_space,
                          point_set_distance, scale_space, subset, validate_space, whole,
                          format_space)


@pytest.mark.parametrize("matrix, exc", [
    ([], errors.ZeroDimension),
    ([[0, 1, 2], [1, 0, 1]], errors.NonSquareMatrix),
    ([[0, 1], [2, 0]], errors.ViolatedSymmetry),
    ([[0, 0], [0, 0]], errors.NonPositiveOffDiagonal),
    ([[1, 1], [1, 0]], errors.NonZeroDiagonal),
    ([[0, 1, 5], [1, 0, 1], [5, 1, 0]], errors.ViolatedTriangle),
    ([[0, float("nan")], [float("nan"), 0]], errors.NonFiniteEntry),
])
def test_validate_rejects(matrix, exc):
    with pytest.raises(exc):
        validate_space(matrix)


def test_triangle_violation_names_entries():
    with pytest.raises(errors.ViolatedTriangle) as info:
        validate_space([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    assert set(info.value.entries) == {0, 1, 2}
    assert info.value.slack == pytest.approx(-3.0)


def test_symmetry_within_tolerance_is_averaged():
    X = validate_space([[0, 1.0], [1.0 + 1e-12, 0]])
    assert X.dist[0][1] == X.dist[1][0]


def test_check_matrix_collects_every_violation():
    report = check_matrix([[0, 1, 5, 5], [1, 0, 1, 1], [5, 1, 0, 1], [5, 1, 1, 0]])
    codes = {i.code for i in report.errors()}
    assert codes == {"VIOLATED_TRIANGLE"}
    assert len(report.errors()) > 1
    assert report.canonical is None


def test_point_set_distance_and_hausdorff(line013):
    A, B = subset(line013, [0]), subset(line013, [1, 2])
    assert point_set_distance(2, A) == 3
    assert hausdorff_distance(A, B) == 3
    assert hausdorff_distance(A, A) == 0
    assert hausdorff_distance(subset(line013, [0, 1]), whole(line013)) == 2


def test_hausdorff_needs_one_ambient_space(line013, two1):
    with pytest.raises(errors.DifferentAmbientSpaces):
        hausdorff_distance(subset(line013, [0]), subset(two1, [0]))


def test_hausdorff_is_a_metric_on_subsets():
    X = generate_space("random", 5, seed=7)
    subsets = [subset(X, [i for i in range(5) if m >> i & 1]) for m in range(1, 32)]
    D = np.array([[hausdorff_distance(a, b) for b in subsets] for a in subsets])
    assert (D == D.T).all()
    assert (np.diag(D) == 0).all()
    assert (D[~np.eye(len(subsets), dtype=bool)] > 0).all()
    assert (D[:, :, None] + D[None, :, :] - D[:, None, :] >= -1e-9).all()


def test_eps_net_is_strict_and_monotone(line013):
    A = subset(line013, [1])
    assert not is_eps_net(A, 2.0)
    assert is_eps_net(A, 2.0 + 1e-9)
    assert all(is_eps_net(A, e) for e in (2.5, 3.0, 10.0))
    with pytest.raises(ValueError):
        is_eps_net(A, 0.0)


def test_scale_and_diameter(line013):
    assert diameter(scale_space(line013, 2.0)) == 6.0
    with pytest.raises(errors.NonPositiveScale):
        scale_space(line013, 0.0)


def test_isometry_tester(line013):
    P = permute_space(line013, [2, 0, 1])
    perm = find_isometry(line013, P)
    assert perm is not None
    assert are_isometric(line013, P)
    assert not are_isometric(line013, generate_space("line", 3))


def test_generators():
    assert generate_space("simplex", 3).dist == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    C4 = generate_space("ngon", 4)
    assert {round(v, 12) for row in C4.dist for v in row} == {0, round(math.pi / 2, 12), round(math.pi, 12)}
    for seed in range(20):
        X = generate_space("random", 6, seed=seed)
        assert check_matrix(X.dist).canonical is not None


def test_space_file_round_trip_and_errors(line013):
    assert parse_space(format_space(line013)).dist == line013.dist
    with pytest.raises(errors.SpaceFileError) as info:
        parse_space('{"n": 2,\n "dist": [\n  [0, 1],\n  [2, 0]\n ]}')
    assert info.value.line is not None
    with pytest.raises(errors.SpaceFileError):
        parse_space('{"dist": [[0, NaN], [NaN, 0]]}')
    with pytest.raises(errors.SpaceFileError):
        parse_space('{"n": 3, "dist": [[0, 1], [1, 0]]}')


def test_scaling_keeps_a_loosely_validated_space():
    X = validate_space([[0, 1, 2.0000001], [1, 0, 1], [2.0000001, 1, 0]], tol_metric=1e-3)
    S = scale_space(X, 16.0)
    assert S.labels == X.labels
    assert diameter(S) == pytest.approx(16 * 2.0000001)
