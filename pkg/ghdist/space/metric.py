from __future__ import annotations
from typing import Iterable, List, Optional
import numpy as np
from ..core.config import TOL_METRIC
from ..core.errors import DifferentAmbientSpaces, NonPositiveScale
from ..core.model import FiniteMetricSpace, PointSubset

def subset(space: FiniteMetricSpace, members: Iterable[int]) -> PointSubset:
    return PointSubset(space=space, members=tuple(members))

def whole(space: FiniteMetricSpace) -> PointSubset:
    return PointSubset(space=space, members=tuple(range(space.n)))

def point_set_distance(x: int, A: PointSubset) -> float:
    """|xA|: the minimum of dist[x][a] over a in A (finite sets attain the infimum)."""
    if not 0 <= x < A.space.n:
        raise IndexError(f"point {x} outside a space of {A.space.n} points")
    row = A.space.dist[x]
    return min(row[a] for a in A.members)

def is_eps_net(A: PointSubset, eps: float) -> bool:
    """True iff every point of the ambient space lies at distance strictly below eps from A."""
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    return all(point_set_distance(x, A) < eps for x in range(A.space.n))

def hausdorff_distance(A: PointSubset, B: PointSubset) -> float:
    if A.space is not B.space and A.space != B.space:
        raise DifferentAmbientSpaces("subsets live in different spaces")
    D = A.space.matrix
    block = D[np.ix_(A.members, B.members)]
    return float(max(block.min(axis=1).max(), block.min(axis=0).max()))

def scale_space(X: FiniteMetricSpace, lam: float) -> FiniteMetricSpace:
    if not lam > 0:
        raise NonPositiveScale(f"scale factor must be positive, got {lam!r}")
    # X was validated at load time; a positive multiple keeps every axiom
    return FiniteMetricSpace(labels=list(X.labels), dist=(X.matrix * lam).tolist())

def diameter(X: FiniteMetricSpace) -> float:
    return float(X.matrix.max())

def eccentricities(X: FiniteMetricSpace) -> List[float]:
    return [float(v) for v in X.matrix.max(axis=1)]

def one_point_space(label: str = "p0") -> FiniteMetricSpace:
    return FiniteMetricSpace(labels=[label], dist=[[0.0]])

def permute_space(X: FiniteMetricSpace, perm: List[int]) -> FiniteMetricSpace:
    """Relabeled copy whose point k is X's point perm[k]."""
    D = X.matrix[np.ix_(perm, perm)]
    return FiniteMetricSpace(labels=[X.labels[p] for p in perm], dist=D.tolist())

def find_isometry(X: FiniteMetricSpace, Y: FiniteMetricSpace,
                  tol: float = TOL_METRIC) -> Optional[List[int]]:
    """Bijection p with |dist_X[i][k] - dist_Y[p(i)][p(k)]| <= tol for all i, k, or None."""
    n = X.n
    if n != Y.n:
        return None
    DX, DY = X.matrix, Y.matrix
    if np.max(np.abs(np.sort(DX, axis=None) - np.sort(DY, axis=None))) > tol:
        return None
    # rows must match as multisets before a point can be paired
    ex = np.sort(DX, axis=1)
    ey = np.sort(DY, axis=1)
    compatible = [[j for j in range(n) if np.max(np.abs(ex[i] - ey[j])) <= tol] for i in range(n)]
    image: List[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for j in compatible[i]:
            if used[j]:
                continue
            if all(abs(DX[i, k] - DY[j, image[k]]) <= tol for k in range(i)):
                used[j] = True; image.append(j)
                if extend(i + 1):
                    return True
                used[j] = False; image.pop()
        return False

    return list(image) if extend(0) else None

def are_isometric(X: FiniteMetricSpace, Y: FiniteMetricSpace, tol: float = TOL_METRIC) -> bool:
    return find_isometry(X, Y, tol) is not None
