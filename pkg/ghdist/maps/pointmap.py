from __future__ import annotations
from typing import Literal
import numpy as np
from ..core.config import TOL_METRIC
from ..core.errors import SizeMismatch
from ..core.model import Correspondence, FiniteMetricSpace, PointMap

Sense = Literal["modern", "edwards"]
Direction = Literal["x->y", "y->x"]

def make_map(source: FiniteMetricSpace, target: FiniteMetricSpace, image) -> PointMap:
    return PointMap(source=source, target=target, image=tuple(int(j) for j in image))

def identity_map(X: FiniteMetricSpace) -> PointMap:
    return make_map(X, X, range(X.n))

def map_distortion(f: PointMap) -> float:
    img = np.asarray(f.image, dtype=int)
    DY = f.target.matrix[np.ix_(img, img)]
    return float(np.abs(f.source.matrix - DY).max())

def covering_radius(f: PointMap) -> float:
    """max over target points of the distance to f(X); f(X) is an ε-net iff this is < ε."""
    img = sorted(set(f.image))
    return float(f.target.matrix[:, img].min(axis=1).max())

def is_eps_isometry(f: PointMap, eps: float, sense: Sense = "modern") -> bool:
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps!r}")
    if map_distortion(f) > eps:
        return False
    if sense == "edwards":
        return True
    return covering_radius(f) < eps

def is_isometric_map(f: PointMap, tol: float = TOL_METRIC) -> bool:
    return map_distortion(f) <= tol

def correspondence_to_map(R: Correspondence, X: FiniteMetricSpace, Y: FiniteMetricSpace,
                          direction: Direction = "x->y") -> PointMap:
    """Pick the smallest related partner of each point; graph(f) ⊆ R so dis f <= dis R,
    and every target point is within dis R of the image."""
    if R.nX != X.n or R.nY != Y.n:
        raise SizeMismatch(f"correspondence is {R.nX}x{R.nY}, spaces have {X.n} and {Y.n} points")
    if direction == "y->x":
        R, X, Y = R.transpose(), Y, X
    image = [None] * X.n
    for i, j in R.pairs:
        if image[i] is None:
            image[i] = j
    return make_map(X, Y, image)
