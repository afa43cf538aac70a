from __future__ import annotations
from typing import Iterator, List, Optional
import numpy as np
from ..core.config import TOL_METRIC, TOL_NUM
from ..core.errors import NonPositiveRadius, RadiusTooSmall
from ..core.model import AdmissibleMetric, Correspondence, FiniteMetricSpace, PointSubset
from ..correspondences.relation import distortion
from ..space.metric import diameter, hausdorff_distance
from ..space.validate import validate_space

def assemble(rho: AdmissibleMetric, tol_metric: float = TOL_METRIC) -> FiniteMetricSpace:
    """The glued space X ⊔ Y; points 0..nX-1 come from X, the rest from Y."""
    labels = [f"X:{l}" for l in rho.X.labels] + [f"Y:{l}" for l in rho.Y.labels]
    return validate_space(rho.full_matrix(), tol_metric=tol_metric, labels=labels)

def glued_hausdorff(rho: AdmissibleMetric) -> float:
    """ρ_H(X, Y): Hausdorff distance between the two parts inside the glued space."""
    Z = assemble(rho)
    nX = rho.X.n
    A = PointSubset(space=Z, members=tuple(range(nX)))
    B = PointSubset(space=Z, members=tuple(range(nX, Z.n)))
    return hausdorff_distance(A, B)

def glue_cross(DX: np.ndarray, DY: np.ndarray, R: Correspondence, r: float) -> np.ndarray:
    PI = np.asarray([i for i, _ in R.pairs]); PJ = np.asarray([j for _, j in R.pairs])
    # cross[i][j] = min over (i',j') in R of |x_i x_i'| + r + |y_j' y_j|
    return (DX[:, PI][:, :, None] + DY[PJ, :][None, :, :]).min(axis=1) + r

def glue_from_correspondence(X: FiniteMetricSpace, Y: FiniteMetricSpace, R: Correspondence,
                             r: float) -> AdmissibleMetric:
    if not r > 0:
        raise NonPositiveRadius(f"gluing radius must be positive, got {r!r}")
    half = 0.5 * distortion(R, X, Y)
    if r < half - TOL_NUM:
        raise RadiusTooSmall(r, half)
    rho = AdmissibleMetric(X=X, Y=Y, cross=glue_cross(X.matrix, Y.matrix, R, r).tolist())
    assemble(rho)
    return rho

def random_correspondence(nX: int, nY: int, rng: np.random.Generator,
                          density: float = 0.3) -> Correspondence:
    grid = rng.random((nX, nY)) < density
    for i in range(nX):
        if not grid[i].any():
            grid[i, rng.integers(nY)] = True
    for j in range(nY):
        if not grid[:, j].any():
            grid[rng.integers(nX), j] = True
    pairs = tuple((int(i), int(j)) for i, j in np.argwhere(grid))
    return Correspondence(nX=nX, nY=nY, pairs=pairs)

def sample_admissible(X: FiniteMetricSpace, Y: FiniteMetricSpace, trials: int,
                      rng_seed: Optional[int] = None, mix_rate: float = 0.3) -> Iterator[AdmissibleMetric]:
    """Random admissible metrics: glued random correspondences at random radii, and convex
    combinations of earlier cross matrices (a convex combination of admissible metrics is one)."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = np.random.default_rng(rng_seed)
    DX, DY = X.matrix, Y.matrix
    span = max(diameter(X), diameter(Y)) or 1.0
    history: List[np.ndarray] = []
    for _ in range(trials):
        if len(history) >= 2 and rng.random() < mix_rate:
            a, b = rng.choice(len(history), size=2, replace=False)
            w = rng.random()
            cross = w * history[a] + (1.0 - w) * history[b]
        else:
            R = random_correspondence(X.n, Y.n, rng)
            half = 0.5 * distortion(R, X, Y)
            r = half + span * (1.0 - rng.random())
            cross = glue_cross(DX, DY, R, r)
        rho = AdmissibleMetric(X=X, Y=Y, cross=cross.tolist())
        assemble(rho)
        history.append(cross)
        yield rho
