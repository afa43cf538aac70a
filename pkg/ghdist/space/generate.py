from __future__ import annotations
import math
from typing import Literal, Optional, Sequence
import networkx as nx
import numpy as np
from ..core.model import FiniteMetricSpace
from .validate import validate_space

SpaceKind = Literal["random", "ngon", "line", "simplex"]

def shortest_path_closure(W: np.ndarray) -> np.ndarray:
    """Metric repair: replace every weight by the shortest-path length in the complete graph."""
    n = W.shape[0]
    G = nx.Graph()
    G.add_nodes_from(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            G.add_edge(i, j, weight=float(W[i, j]))
    D = nx.floyd_warshall_numpy(G, nodelist=list(range(n)), weight="weight")
    return np.asarray(D, dtype=float)

def random_space(n: int, seed: Optional[int] = None) -> FiniteMetricSpace:
    rng = np.random.default_rng(seed)
    # 1 - U[0,1) lies in (0,1]
    W = 1.0 - rng.random((n, n))
    W = np.triu(W, 1)
    W = W + W.T
    return validate_space(shortest_path_closure(W))

def ngon_space(n: int, chord: bool = False) -> FiniteMetricSpace:
    """n equispaced points on the unit circle (circumference 2π), arc metric unless `chord`."""
    step = 2.0 * math.pi / n
    D = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            k = min(abs(i - j), n - abs(i - j))
            D[i, j] = 2.0 * math.sin(k * step / 2.0) if chord else k * step
    return validate_space(D, labels=[f"c{i}" for i in range(n)])

def line_space(positions: Sequence[float]) -> FiniteMetricSpace:
    pos = np.asarray(positions, dtype=float)
    D = np.abs(pos[:, None] - pos[None, :])
    return validate_space(D, labels=[f"x{p:g}" for p in pos])

def simplex_space(n: int, edge: float = 1.0) -> FiniteMetricSpace:
    D = np.full((n, n), float(edge))
    np.fill_diagonal(D, 0.0)
    return validate_space(D)

def generate_space(kind: SpaceKind, n: int, seed: Optional[int] = None,
                   chord: bool = False) -> FiniteMetricSpace:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if kind == "random":
        return random_space(n, seed)
    if kind == "ngon":
        return ngon_space(n, chord=chord)
    if kind == "line":
        return line_space(range(n))
    if kind == "simplex":
        return simplex_space(n)
    raise ValueError(f"unknown space kind {kind!r}")
