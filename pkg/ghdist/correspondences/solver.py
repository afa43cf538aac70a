from __future__ import annotations
from typing import List, Optional, Sequence, Tuple
import numpy as np
from joblib import Memory, Parallel, delayed
from ..core.config import CACHE_DIR, CACHE_RESULTS, DEFAULT_BUDGET, ORACLE_CAP
from ..core.model import Correspondence, FiniteMetricSpace, GHResult
from ..space.metric import eccentricities
from .relation import (_check_cap, coverage_masks, gh_lower_bound, mask_to_pairs,
                       nearest_point_correspondence, relation_distortion)

Pair = Tuple[int, int]

_memory = Memory(CACHE_DIR, verbose=0) if CACHE_RESULTS else None

def _fold_max(weights: np.ndarray) -> np.ndarray:
    """out[m] = max of weights[q] over the set bits q of m (0 for the empty mask)."""
    out = np.zeros(1)
    for w in weights:
        out = np.concatenate([out, np.maximum(out, w)])
    return out

def gh_exact_oracle(X: FiniteMetricSpace, Y: FiniteMetricSpace, cap: int = ORACLE_CAP) -> GHResult:
    """Brute force over every correspondence; certificate is the first minimizer by bitmask."""
    nX, nY = X.n, Y.n
    _check_cap(nX, nY, cap)
    DX, DY = X.matrix, Y.matrix
    K = nX * nY
    I = np.arange(K) // nY
    J = np.arange(K) % nY
    C = np.abs(DX[np.ix_(I, I)] - DY[np.ix_(J, J)])
    # dis[m] built bit by bit: adding pair q raises the distortion by its costs to earlier pairs
    dis = np.zeros(1)
    for q in range(K):
        dis = np.concatenate([dis, np.maximum(dis, _fold_max(C[q, :q]))])
    masks = coverage_masks(nX, nY)
    values = dis[masks]
    best = int(np.argmin(values))
    cert = Correspondence(nX=nX, nY=nY, pairs=mask_to_pairs(int(masks[best]), nY))
    v = 0.5 * float(values[best])
    return GHResult(value=v, certificate=cert, lower_bound=v, upper_bound=v,
                    nodes_explored=len(masks), method="oracle")


class _Search:
    """Depth-first branch and bound over minimal correspondences.

    Level k < nX picks one image for X-point order[k]; once every X-point has an image,
    each still uncovered Y-point gets exactly one owner. Every correspondence contains a
    sub-correspondence of this shape, so the optimum over these is the optimum overall.
    The bound of a node is the distortion of its decided pairs, which never decreases.
    """

    def __init__(self, DX: List[List[float]], DY: List[List[float]], order: Sequence[int],
                 incumbent: float, budget: int, floor: float):
        self.DX, self.DY = DX, DY
        self.nX, self.nY = len(DX), len(DY)
        self.order = list(order)
        self.best = incumbent
        self.best_pairs: Optional[List[Pair]] = None
        self.budget = budget
        self.floor = floor
        self.nodes = 0
        self.truncated = False

    def _raise(self, pairs: List[Pair], i: int, j: int, cur: float) -> float:
        rx, ry = self.DX[i], self.DY[j]
        b = cur
        for (a, c) in pairs:
            d = abs(rx[a] - ry[c])
            if d > b:
                b = d
        return b

    def _done(self) -> bool:
        return self.truncated or self.best <= self.floor

    def run(self, pairs: List[Pair], cur: float, level: int) -> None:
        if self._done():
            return
        self.nodes += 1
        if self.nodes > self.budget:
            self.truncated = True
            return
        if level < self.nX:
            i = self.order[level]
            cands = [(self._raise(pairs, i, j, cur), j) for j in range(self.nY)]
            cands.sort()
            for b, j in cands:
                if b >= self.best or self._done():
                    break
                pairs.append((i, j))
                self.run(pairs, b, level + 1)
                pairs.pop()
            return
        covered = {c for _, c in pairs}
        missing = [j for j in range(self.nY) if j not in covered]
        if not missing:
            self.best = cur
            self.best_pairs = list(pairs)
            return
        j = missing[0]
        cands = [(self._raise(pairs, i, j, cur), i) for i in range(self.nX)]
        cands.sort()
        for b, i in cands:
            if b >= self.best or self._done():
                break
            pairs.append((i, j))
            self.run(pairs, b, level + 1)
            pairs.pop()


def branch_order(X: FiniteMetricSpace) -> List[int]:
    """X-points by decreasing eccentricity, ties by index (fail-first)."""
    ecc = eccentricities(X)
    return sorted(range(X.n), key=lambda i: (-ecc[i], i))


def greedy_anchor(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> List[int]:
    """Map X-points in branch order to the Y-point adding the least distortion."""
    DX, DY = X.matrix, Y.matrix
    anchor = [0] * X.n
    placed: List[int] = []
    for i in branch_order(X):
        if placed:
            P = np.asarray(placed)
            img = np.asarray([anchor[p] for p in placed])
            inc = np.abs(DX[i, P][None, :] - DY[:, img]).max(axis=1)
            anchor[i] = int(np.argmin(inc))
        else:
            anchor[i] = int(np.argmax(DY.max(axis=1)))
        placed.append(i)
    return anchor


def _subtree(DX, DY, order, first_image: int, incumbent: float, budget: int, floor: float):
    s = _Search(DX, DY, order, incumbent, budget, floor)
    i = order[0]
    s.nodes = 1
    s.run([(i, first_image)], 0.0, 1)
    return s.best, s.best_pairs, s.nodes, s.truncated


class _LexCertificate:
    """Lexicographically smallest sorted pair-set with distortion <= target.

    Pairs are appended in increasing order; the set is closed as soon as it is a
    correspondence, since a sequence sorts before all of its extensions. A candidate is
    kept only when some correspondence built from it and larger pairs stays within target.
    """

    def __init__(self, DX: List[List[float]], DY: List[List[float]], target: float, budget: int):
        self.DX, self.DY = DX, DY
        self.nX, self.nY = len(DX), len(DY)
        self.target = target
        self.budget = budget
        self.nodes = 0

    def _fits(self, pairs: List[Pair], i: int, j: int) -> bool:
        rx, ry = self.DX[i], self.DY[j]
        return all(abs(rx[a] - ry[c]) <= self.target for (a, c) in pairs)

    def _extendable(self, pairs: List[Pair], after: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget()
        rows = {a for a, _ in pairs}
        cols = {c for _, c in pairs}
        nY = self.nY
        row = next((i for i in range(self.nX) if i not in rows), None)
        if row is not None:
            cands = [(row, j) for j in range(nY) if row * nY + j > after]
        else:
            col = next((j for j in range(nY) if j not in cols), None)
            if col is None:
                return True
            cands = [(i, col) for i in range(self.nX) if i * nY + col > after]
        for (i, j) in cands:
            if self._fits(pairs, i, j):
                pairs.append((i, j))
                ok = self._extendable(pairs, after)
                pairs.pop()
                if ok:
                    return True
        return False

    def build(self) -> Optional[List[Pair]]:
        nX, nY = self.nX, self.nY
        chosen: List[Pair] = []
        last = -1
        try:
            while len({a for a, _ in chosen}) < nX or len({c for _, c in chosen}) < nY:
                for q in range(last + 1, nX * nY):
                    i, j = divmod(q, nY)
                    if self._fits(chosen, i, j):
                        chosen.append((i, j))
                        if self._extendable(chosen, q):
                            last = q
                            break
                        chosen.pop()
                else:
                    return None
        except _OutOfBudget:
            return None
        return chosen


class _OutOfBudget(Exception):
    pass


def lex_smallest_certificate(DX: List[List[float]], DY: List[List[float]], target: float,
                             budget: int = DEFAULT_BUDGET) -> Optional[List[Pair]]:
    """Smallest sorted pair list among correspondences of distortion <= target, or None
    when there is none or the node budget runs out."""
    return _LexCertificate(DX, DY, target, budget).build()


def _solve(DX: List[List[float]], DY: List[List[float]], order: List[int],
           init_pairs: List[Pair], init_dis: float, floor: float, budget: int, threads: int):
    best, pairs, nodes, truncated = _search(DX, DY, order, init_pairs, init_dis, floor, budget, threads)
    if not truncated:
        lex = lex_smallest_certificate(DX, DY, best, max(budget - nodes, 1))
        if lex is not None:
            pairs = lex
    return best, pairs, nodes, truncated


def _search(DX: List[List[float]], DY: List[List[float]], order: List[int],
            init_pairs: List[Pair], init_dis: float, floor: float, budget: int, threads: int):
    if init_dis <= floor:
        return init_dis, init_pairs, 0, False
    if threads <= 1 or len(DX) < 2:
        s = _Search(DX, DY, order, init_dis, budget, floor)
        s.run([], 0.0, 0)
        pairs = s.best_pairs if s.best_pairs is not None else init_pairs
        return s.best, pairs, s.nodes, s.truncated
    # one subtree per image of the first X-point; each starts from the shared incumbent
    nY = len(DY)
    share = max(1, budget // nY)
    outs = Parallel(n_jobs=threads)(
        delayed(_subtree)(DX, DY, order, j, init_dis, share, floor) for j in range(nY))
    best, pairs = init_dis, init_pairs
    nodes, truncated = 1, False
    for value, found, n, trunc in outs:
        nodes += n
        truncated = truncated or trunc
        if found is not None and value < best:
            best, pairs = value, found
    return best, pairs, nodes, truncated


_solve_cached = _memory.cache(_solve) if _memory is not None else _solve


def gh_exact(X: FiniteMetricSpace, Y: FiniteMetricSpace, budget: int = DEFAULT_BUDGET,
             threads: int = 1, incumbent: Optional[Correspondence] = None) -> GHResult:
    """d_GH(X,Y) = ½ min dis R, by branch and bound.

    Starts from the nearest-point correspondence of a greedy anchor (or `incumbent`).
    The certificate of a complete solve is the lexicographically smallest optimal pair-set.
    When the node budget runs out the best certificate so far is returned with
    `truncated=True` and lower_bound < upper_bound.
    """
    DX, DY = X.matrix, Y.matrix
    if incumbent is None:
        incumbent = nearest_point_correspondence(X, Y, greedy_anchor(X, Y))
    init_dis = relation_distortion(incumbent.pairs, DX, DY)
    lower = gh_lower_bound(X, Y)
    # dis R >= |diam X - diam Y| holds for the computed floats too
    floor = abs(float(DX.max()) - float(DY.max()))
    best, pairs, nodes, truncated = _solve_cached(
        X.dist, Y.dist, branch_order(X), list(incumbent.pairs), init_dis, floor, budget, threads)
    cert = Correspondence(nX=X.n, nY=Y.n, pairs=tuple(pairs))
    value = 0.5 * best
    if truncated and lower >= value:
        truncated = False
        lex = lex_smallest_certificate(X.dist, Y.dist, best, budget)
        if lex is not None:
            cert = Correspondence(nX=X.n, nY=Y.n, pairs=tuple(lex))
    if truncated:
        return GHResult(value=value, certificate=cert, lower_bound=lower, upper_bound=value,
                        nodes_explored=nodes, truncated=True)
    return GHResult(value=value, certificate=cert, lower_bound=value, upper_bound=value,
                    nodes_explored=nodes)
