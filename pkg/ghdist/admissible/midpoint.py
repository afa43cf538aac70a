from __future__ import annotations
from typing import List, Optional, Tuple
import networkx as nx
import numpy as np
from ..core.config import DEFAULT_BUDGET, TOL_QUOTIENT
from ..core.model import Correspondence, FiniteMetricSpace
from ..correspondences.solver import gh_exact
from ..space.validate import validate_space

def interpolate(X: FiniteMetricSpace, Y: FiniteMetricSpace, R: Correspondence, t: float,
                tol_quotient: float = TOL_QUOTIENT) -> Tuple[FiniteMetricSpace, List[int]]:
    """Quotient of R under d_t = (1-t)·d_X + t·d_Y.

    Returns the space and, for each pair of R (in R.pairs order), the index of its class.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    I = np.asarray([i for i, _ in R.pairs]); J = np.asarray([j for _, j in R.pairs])
    pre = (1.0 - t) * X.matrix[np.ix_(I, I)] + t * Y.matrix[np.ix_(J, J)]
    G = nx.Graph()
    G.add_nodes_from(range(len(R.pairs)))
    for a, b in np.argwhere(pre <= tol_quotient):
        if a < b:
            G.add_edge(int(a), int(b))
    classes = sorted((sorted(c) for c in nx.connected_components(G)), key=lambda c: c[0])
    reps = [c[0] for c in classes]
    class_of = [0] * len(R.pairs)
    for k, c in enumerate(classes):
        for p in c:
            class_of[p] = k
    labels = [f"{X.labels[R.pairs[p][0]]}|{Y.labels[R.pairs[p][1]]}" for p in reps]
    return validate_space(pre[np.ix_(reps, reps)], labels=labels), class_of

def midpoint_space(X: FiniteMetricSpace, Y: FiniteMetricSpace, t: float,
                   certificate: Optional[Correspondence] = None,
                   budget: int = DEFAULT_BUDGET) -> FiniteMetricSpace:
    """Point at parameter t on the geodesic from X (t=0) to Y (t=1) through an optimal correspondence."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    if certificate is None:
        res = gh_exact(X, Y, budget=budget)
        if res.truncated:
            print(f"[GHDIST] ⚠️ solver truncated at {res.nodes_explored} nodes; "
                  f"midpoint built from the incumbent (bounds {res.lower_bound:.6g}..{res.upper_bound:.6g})")
        certificate = res.certificate
    space, _ = interpolate(X, Y, certificate, t)
    return space

def interpolation_correspondence(X: FiniteMetricSpace, Y: FiniteMetricSpace, R: Correspondence,
                                 s: float, t: float) -> Tuple[FiniteMetricSpace, FiniteMetricSpace, Correspondence]:
    """M_s, M_t and the correspondence relating the classes of the same pair of R."""
    Ms, cs = interpolate(X, Y, R, s)
    Mt, ct = interpolate(X, Y, R, t)
    pairs = tuple(sorted({(a, b) for a, b in zip(cs, ct)}))
    return Ms, Mt, Correspondence(nX=Ms.n, nY=Mt.n, pairs=pairs)
