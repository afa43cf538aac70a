from __future__ import annotations
from typing import Iterable, Iterator, Sequence, Tuple
import numpy as np
from ..core.config import ORACLE_CAP
from ..core.errors import OracleTooLarge, SizeMismatch
from ..core.model import Correspondence, FiniteMetricSpace
from ..space.metric import diameter

def relation_distortion(pairs: Iterable[Tuple[int, int]], DX: np.ndarray, DY: np.ndarray) -> float:
    """dis σ for any nonempty relation σ given as index pairs."""
    P = np.asarray(list(pairs), dtype=int).reshape(-1, 2)
    if len(P) == 0:
        raise ValueError("distortion of an empty relation is undefined")
    I, J = P[:, 0], P[:, 1]
    return float(np.abs(DX[np.ix_(I, I)] - DY[np.ix_(J, J)]).max())

def distortion(R: Correspondence, X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    if R.nX != X.n or R.nY != Y.n:
        raise SizeMismatch(f"correspondence is {R.nX}x{R.nY}, spaces have {X.n} and {Y.n} points")
    return relation_distortion(R.pairs, X.matrix, Y.matrix)

def _check_cap(nX: int, nY: int, cap: int) -> None:
    if nX < 1 or nY < 1:
        raise ValueError("both sizes must be at least 1")
    if nX * nY > cap:
        raise OracleTooLarge(nX, nY, cap)

def _fold_or(bits: Sequence[int]) -> np.ndarray:
    """out[m] = OR of bits[q] over the set bits q of m, for every mask m < 2**len(bits)."""
    out = np.zeros(1, dtype=np.int64)
    for b in bits:
        out = np.concatenate([out, out | b])
    return out

def coverage_masks(nX: int, nY: int) -> np.ndarray:
    """All pair-set bitmasks (bit i*nY + j ↔ pair (i,j)) whose projections are both surjective."""
    K = nX * nY
    row_bit = [1 << (b // nY) for b in range(K)]
    col_bit = [1 << (b % nY) for b in range(K)]
    rows = _fold_or(row_bit)
    cols = _fold_or(col_bit)
    ok = (rows == (1 << nX) - 1) & (cols == (1 << nY) - 1)
    return np.flatnonzero(ok)

def mask_to_pairs(mask: int, nY: int) -> Tuple[Tuple[int, int], ...]:
    out = []
    b = 0
    while mask:
        if mask & 1:
            out.append((b // nY, b % nY))
        mask >>= 1; b += 1
    return tuple(out)

def enumerate_correspondences(nX: int, nY: int, cap: int = ORACLE_CAP) -> Iterator[Correspondence]:
    """Every correspondence between [0,nX) and [0,nY), once each, by increasing pair-set bitmask."""
    _check_cap(nX, nY, cap)
    for mask in coverage_masks(nX, nY):
        yield Correspondence(nX=nX, nY=nY, pairs=mask_to_pairs(int(mask), nY))

def gh_lower_bound(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> float:
    """½|diam X − diam Y|: every correspondence relates both diameter-attaining pairs."""
    return 0.5 * abs(diameter(X) - diameter(Y))

def nearest_point_correspondence(X: FiniteMetricSpace, Y: FiniteMetricSpace,
                                 anchor: Sequence[int]) -> Correspondence:
    """graph(anchor) plus, for each uncovered y, one X-point whose anchored image is nearest to y.

    Ties on that distance go to the owner adding the least distortion, then to the smaller index.
    """
    if len(anchor) != X.n:
        raise SizeMismatch(f"anchor has {len(anchor)} entries for {X.n} points")
    DX, DY = X.matrix, Y.matrix
    pairs = [(i, int(anchor[i])) for i in range(X.n)]
    covered = {j for _, j in pairs}
    img = np.asarray(anchor, dtype=int)
    for j in range(Y.n):
        if j in covered:
            continue
        PI = np.asarray([p[0] for p in pairs]); PJ = np.asarray([p[1] for p in pairs])
        increment = np.abs(DX[:, PI] - DY[j, PJ][None, :]).max(axis=1)
        witness = DY[img, j]
        owner = min(range(X.n), key=lambda i: (witness[i], increment[i], i))
        pairs.append((owner, j))
        covered.add(j)
    return Correspondence(nX=X.n, nY=Y.n, pairs=tuple(pairs))
