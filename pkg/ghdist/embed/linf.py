"""
Isometric embeddings into ℓ∞ and the embedding-based upper bound on d_GH.

A finite space needs only finitely many coordinates: point i goes to row i of its distance
matrix. Translations and coordinate permutations are isometries of the sup norm, so any
translate of a (coordinate-permuted) Kuratowski embedding is again an isometric embedding,
and the Hausdorff distance of two such images is an upper bound on d_GH.
"""
from __future__ import annotations
from typing import List, Optional, Sequence, Tuple
import numpy as np
from joblib import Parallel, delayed
from ..core.model import AlignResult, FiniteMetricSpace, SupNormPointSet
from ..space.metric import diameter

IMPROVEMENT = 1e-12
MAX_CYCLES = 500

def kuratowski_embed(X: FiniteMetricSpace) -> SupNormPointSet:
    return SupNormPointSet(dim=X.n, points=[list(row) for row in X.dist])

def pad(P: SupNormPointSet, dim: int) -> np.ndarray:
    A = P.array
    if dim < P.dim:
        raise ValueError(f"cannot pad {P.dim} coordinates down to {dim}")
    return np.hstack([A, np.zeros((A.shape[0], dim - P.dim))])

def supnorm_distances(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.abs(A[:, None, :] - B[None, :, :]).max(axis=2)

def _hausdorff(A: np.ndarray, B: np.ndarray) -> float:
    P = supnorm_distances(A, B)
    return float(max(P.min(axis=1).max(), P.min(axis=0).max()))

def supnorm_hausdorff(A: SupNormPointSet, B: SupNormPointSet) -> float:
    dim = max(A.dim, B.dim)
    return _hausdorff(pad(A, dim), pad(B, dim))

def translate(P: SupNormPointSet, v: Sequence[float]) -> SupNormPointSet:
    A = pad(P, max(P.dim, len(v)))
    w = np.zeros(A.shape[1]); w[:len(v)] = v
    return SupNormPointSet(dim=A.shape[1], points=(A + w).tolist())

def _line_objective(A: np.ndarray, B: np.ndarray, v: np.ndarray, k: int, ts: np.ndarray):
    """Hausdorff value (and coordinate-k-only value) of A vs B+v with v[k] replaced by each t."""
    diff = A[:, None, :] - B[None, :, :] - v[None, None, :]
    others = np.delete(np.abs(diff), k, axis=2)
    c = others.max(axis=2) if others.shape[2] else np.zeros(diff.shape[:2])
    delta = A[:, None, k] - B[None, :, k]
    local = np.abs(delta[None, :, :] - ts[:, None, None])
    g = np.maximum(c[None, :, :], local)
    full = np.maximum(g.min(axis=2).max(axis=1), g.min(axis=1).max(axis=1))
    own = np.maximum(local.min(axis=2).max(axis=1), local.min(axis=1).max(axis=1))
    return full, own, delta, c

def _breakpoints(delta: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Every kink of the piecewise-linear objective in one coordinate: δ ± c and midpoints of δ."""
    d = np.unique(delta.ravel())
    mids = ((d[:, None] + d[None, :]) / 2.0).ravel()
    return np.unique(np.concatenate([(delta + c).ravel(), (delta - c).ravel(), mids]))

def coordinate_descent(A: np.ndarray, B: np.ndarray, v0: np.ndarray) -> Tuple[float, np.ndarray]:
    """Minimize H(A, B+v) over v one coordinate at a time, each 1-D problem solved exactly."""
    v = v0.copy()
    value = _hausdorff(A, B + v)
    for _ in range(MAX_CYCLES):
        start = value
        for k in range(A.shape[1]):
            _, _, delta, c = _line_objective(A, B, v, k, np.zeros(1))
            ts = _breakpoints(delta, c)
            full, own, _, _ = _line_objective(A, B, v, k, ts)
            best = full.min()
            # among equal values prefer the best fit of coordinate k alone
            ties = np.flatnonzero(full <= best)
            pick = ties[np.argmin(own[ties])]
            v[k] = ts[pick]
            value = min(value, float(best))
        if start - value <= IMPROVEMENT:
            break
    return _hausdorff(A, B + v), v

def _restart(A: np.ndarray, DY: np.ndarray, nY: int, dim: int, index: int,
             seed: Optional[int], scale: float) -> Tuple[float, List[float], List[int]]:
    rng = np.random.default_rng([index, 0 if seed is None else seed])
    if index == 0:
        perm = np.arange(nY)
        v0 = np.zeros(dim)
    else:
        perm = rng.permutation(nY)
        v0 = rng.uniform(-scale / 2.0, scale / 2.0, size=dim)
    value, v = coordinate_descent(A, _permuted(DY, perm, dim), v0)
    return value, v.tolist(), perm.tolist()

def _permuted(DY: np.ndarray, perm: Sequence[int], dim: int) -> np.ndarray:
    # coordinate permutations keep ψ isometric
    B = np.zeros((DY.shape[0], dim))
    B[:, list(perm)] = DY
    return B

def aligned_images(X: FiniteMetricSpace, Y: FiniteMetricSpace,
                   result: AlignResult) -> Tuple[SupNormPointSet, SupNormPointSet]:
    """φ(X) and the translated ψ(Y) realizing `result.value`."""
    dim = X.n + Y.n
    A = pad(kuratowski_embed(X), dim)
    B = _permuted(Y.matrix, result.permutation, dim) + np.asarray(result.translation)
    return (SupNormPointSet(dim=dim, points=A.tolist()),
            SupNormPointSet(dim=dim, points=B.tolist()))

def align_upper_bound(X: FiniteMetricSpace, Y: FiniteMetricSpace, restarts: int = 8,
                      rng_seed: Optional[int] = None, threads: int = 1) -> AlignResult:
    """Best Hausdorff distance found between φ(X) and translates of ψ(Y) in ℓ∞^(nX+nY).

    Restart 0 starts from v = 0 with ψ in natural coordinates; later restarts draw a random
    coordinate permutation of ψ and a random start. Every evaluated value is ≥ d_GH(X, Y).
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    dim = X.n + Y.n
    A = pad(kuratowski_embed(X), dim)
    DY = Y.matrix
    scale = max(diameter(X), diameter(Y)) or 1.0
    jobs = [delayed(_restart)(A, DY, Y.n, dim, r, rng_seed, scale) for r in range(restarts)]
    if threads > 1:
        outs = Parallel(n_jobs=threads)(jobs)
    else:
        outs = [fn(*args, **kw) for fn, args, kw in jobs]
    best = min(range(restarts), key=lambda r: (outs[r][0], r))
    value, v, perm = outs[best]
    return AlignResult(value=value, translation=v, restart=best, permutation=perm)
