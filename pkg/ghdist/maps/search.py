from __future__ import annotations
from typing import List, Optional, Sequence, Tuple
import numpy as np
from joblib import Parallel, delayed
from ..core.config import DEFAULT_BUDGET, MAP_ENUM_CAP
from ..core.errors import BudgetExhausted, EnumerationTooLarge
from ..core.model import FiniteMetricSpace, HatResult, PointMap
from ..correspondences.solver import branch_order, greedy_anchor
from .pointmap import make_map

CHUNK = 4096

def _images(start: int, stop: int, nX: int, nY: int) -> np.ndarray:
    """Rows m in [start, stop) of the lexicographic list of maps [0,nX) -> [0,nY)."""
    m = np.arange(start, stop, dtype=np.int64)[:, None]
    powers = nY ** np.arange(nX - 1, -1, -1, dtype=np.int64)[None, :]
    return (m // powers) % nY

def _chunk_table(DX: np.ndarray, DY: np.ndarray, start: int, stop: int,
                 with_radius: bool) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    nX, nY = DX.shape[0], DY.shape[0]
    imgs = _images(start, stop, nX, nY)
    sub = DY[imgs[:, :, None], imgs[:, None, :]]
    dis = np.abs(sub - DX[None, :, :]).reshape(len(imgs), -1).max(axis=1)
    if not with_radius:
        return dis, None
    # distance from every target point to every image point, then nearest image point
    rad = DY[:, imgs].transpose(1, 0, 2).min(axis=2).max(axis=1)
    return dis, rad

def map_table(X: FiniteMetricSpace, Y: FiniteMetricSpace, with_radius: bool = False,
              threads: int = 1, cap: int = MAP_ENUM_CAP) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Distortion (and covering radius) of every map X -> Y, in lexicographic image order."""
    count = Y.n ** X.n
    if count > cap:
        raise EnumerationTooLarge(count, cap)
    DX, DY = X.matrix, Y.matrix
    bounds = [(s, min(s + CHUNK, count)) for s in range(0, count, CHUNK)]
    if threads > 1 and len(bounds) > 1:
        parts = Parallel(n_jobs=threads)(delayed(_chunk_table)(DX, DY, s, e, with_radius) for s, e in bounds)
    else:
        parts = [_chunk_table(DX, DY, s, e, with_radius) for s, e in bounds]
    dis = np.concatenate([p[0] for p in parts])
    rad = np.concatenate([p[1] for p in parts]) if with_radius else None
    return dis, rad

def image_at(m: int, nX: int, nY: int) -> List[int]:
    return [int(v) for v in _images(m, m + 1, nX, nY)[0]]


class _MapSearch:
    """Branch and bound over maps; same pruning contract as the correspondence solver."""

    def __init__(self, DX, DY, order: Sequence[int], incumbent: float, budget: int, floor: float):
        self.DX, self.DY = DX, DY
        self.order = list(order)
        self.best = incumbent
        self.best_image: Optional[List[int]] = None
        self.budget, self.floor = budget, floor
        self.nodes = 0
        self.truncated = False
        self.image: List[int] = [-1] * len(DX)

    def run(self, level: int, cur: float) -> None:
        if self.truncated or self.best <= self.floor:
            return
        self.nodes += 1
        if self.nodes > self.budget:
            self.truncated = True
            return
        if level == len(self.order):
            self.best, self.best_image = cur, list(self.image)
            return
        i = self.order[level]
        done = self.order[:level]
        rx = self.DX[i]
        cands = []
        for j in range(len(self.DY)):
            ry = self.DY[j]
            b = cur
            for a in done:
                d = abs(rx[a] - ry[self.image[a]])
                if d > b:
                    b = d
            cands.append((b, j))
        cands.sort()
        for b, j in cands:
            if b >= self.best or self.truncated:
                break
            self.image[i] = j
            self.run(level + 1, b)
        self.image[i] = -1


def min_distortion_map(X: FiniteMetricSpace, Y: FiniteMetricSpace, budget: Optional[int] = None,
                       threads: int = 1, cap: int = MAP_ENUM_CAP) -> Tuple[PointMap, float]:
    """A map X -> Y of least distortion.

    Enumerates all nY**nX maps when that is within `cap` (lexicographically first optimum),
    otherwise branches; raises BudgetExhausted with the best map and bounds on truncation.
    """
    count = Y.n ** X.n
    if count <= cap:
        dis, _ = map_table(X, Y, threads=threads, cap=cap)
        m = int(np.argmin(dis))
        return make_map(X, Y, image_at(m, X.n, Y.n)), float(dis[m])
    DX, DY = X.matrix, Y.matrix
    anchor = greedy_anchor(X, Y)
    init = float(np.abs(DX - DY[np.ix_(anchor, anchor)]).max())
    floor = max(0.0, float(DX.max()) - float(DY.max()))
    s = _MapSearch(X.dist, Y.dist, branch_order(X), init, budget or DEFAULT_BUDGET, floor)
    s.run(0, 0.0)
    image = s.best_image if s.best_image is not None else anchor
    f = make_map(X, Y, image)
    if s.truncated and s.best > floor:
        raise BudgetExhausted(f"map search stopped after {s.nodes} nodes", best=f,
                              lower_bound=floor, upper_bound=s.best, nodes_explored=s.nodes)
    return f, s.best

def edwards_dE(X: FiniteMetricSpace, Y: FiniteMetricSpace, budget: Optional[int] = None,
               threads: int = 1) -> float:
    """d_E: Edwards ε-isometries both ways; the two directions are independent minimizations."""
    _, forward = min_distortion_map(X, Y, budget=budget, threads=threads)
    _, backward = min_distortion_map(Y, X, budget=budget, threads=threads)
    return max(forward, backward)

def _direction(X: FiniteMetricSpace, Y: FiniteMetricSpace, threads: int, cap: int):
    dis, rad = map_table(X, Y, with_radius=True, threads=threads, cap=cap)
    eps = np.maximum(dis, rad)
    m = int(np.argmin(eps))
    return dis, rad, float(eps[m]), image_at(m, X.n, Y.n)

def _feasible_at(dis: np.ndarray, rad: np.ndarray, v: float) -> bool:
    if v == 0.0:
        return bool(np.any((dis == 0.0) & (rad == 0.0)))
    return bool(np.any((dis <= v) & (rad < v)))

def hat_dGH(X: FiniteMetricSpace, Y: FiniteMetricSpace, threads: int = 1,
            cap: int = MAP_ENUM_CAP) -> HatResult:
    """Infimum of ε admitting modern ε-isometries both ways.

    Each map f is feasible exactly for ε >= dis f and ε > radius f, so the infimum is the
    larger over directions of min_f max(dis f, radius f). `attained` tells whether both
    directions are feasible at that value itself (the ε-net inequality is strict); the value 0
    counts as attained when both directions have an isometry onto the target.
    """
    for a, b in ((X, Y), (Y, X)):
        if b.n ** a.n > cap:
            raise EnumerationTooLarge(b.n ** a.n, cap)
    dis_f, rad_f, v_f, img_f = _direction(X, Y, threads, cap)
    dis_g, rad_g, v_g, img_g = _direction(Y, X, threads, cap)
    v = max(v_f, v_g)
    attained = _feasible_at(dis_f, rad_f, v) and _feasible_at(dis_g, rad_g, v)
    return HatResult(value=v, attained=attained, forward=img_f, backward=img_g)
