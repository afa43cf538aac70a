"""Desk-scale demonstrations on the space of compact metric spaces."""
from __future__ import annotations
from typing import List, Optional, Sequence
from ..core.config import DEFAULT_BUDGET, TOL_NUM
from ..core.model import FiniteMetricSpace
from ..correspondences.relation import distortion, nearest_point_correspondence
from ..correspondences.solver import gh_exact
from ..maps.search import edwards_dE
from ..space.generate import ngon_space, random_space
from ..space.metric import diameter, one_point_space, scale_space
from .suites import SuiteRun, Tally, two_points

DENSITY_LEVELS = (4, 8, 16, 32, 64)
EXACT_DENSITY_MAX = 4
CONTRACT_LAMBDAS = (1.0, 0.5, 0.25, 0.125, 0.0625, 0.0)
GROWTH_LAMBDAS = (1.0, 2.0, 4.0, 8.0, 16.0)
RAY_TIMES = (0.0, 0.25, 0.5, 1.0, 2.0, 3.5)


def density(levels: Sequence[int] = DENSITY_LEVELS, chord: bool = False,
            budget: int = DEFAULT_BUDGET, threads: int = 1, tol: float = TOL_NUM) -> SuiteRun:
    """d(C_n, C_2n) for circle discretizations: the upper bound from the doubling
    correspondence, and the exact value while the pair is small."""
    run = SuiteRun()
    rows = []
    for n in levels:
        C, C2 = ngon_space(n, chord=chord), ngon_space(2 * n, chord=chord)
        run.spaces[f"ngon_{n}"] = C
        run.spaces[f"ngon_{2 * n}"] = C2
        R = nearest_point_correspondence(C, C2, [2 * i for i in range(n)])
        upper = 0.5 * distortion(R, C, C2)
        row = {"n": n, "m": 2 * n, "upper": upper, "exact": None, "truncated": None}
        if n <= EXACT_DENSITY_MAX:
            res = gh_exact(C, C2, budget=budget, threads=threads)
            row.update(exact=res.value, truncated=res.truncated)
            if res.truncated:
                print(f"[GHDIST] ⚠️ C_{n} vs C_{2 * n} truncated at {res.nodes_explored} nodes")
        print(f"[GHDIST] C_{n} vs C_{2 * n}: upper {upper:.6f}"
              + (f", exact {row['exact']:.6f}" if row["exact"] is not None else ""))
        rows.append(row)
    mono = Tally("upper bounds strictly decrease along the doubling schedule")
    for a, b in zip(rows, rows[1:]):
        mono.require(b["upper"] < a["upper"],
                     lambda: {"n": a["n"], "upper": a["upper"], "next": b["upper"]})
    sound = Tally("exact value within the upper bound", allowed=tol)
    for r in rows:
        if r["exact"] is not None:
            sound.record(r["exact"] - r["upper"], lambda: dict(r))
    run.properties = [mono.outcome(), sound.outcome()]
    run.tables["density"] = rows
    return run


def contract(X: Optional[FiniteMetricSpace] = None, seed: int = 0, n: int = 5,
             budget: int = DEFAULT_BUDGET, threads: int = 1, tol: float = TOL_NUM) -> SuiteRun:
    """Shrinking X toward a point, and stretching it away from itself."""
    run = SuiteRun()
    X = X if X is not None else random_space(n, seed=seed)
    run.spaces["base"] = X
    pt = one_point_space()
    diam = diameter(X)
    shrink = Tally("d(λX, pt) = λ·diam/2", allowed=tol)
    edw = Tally("d_E(λX, pt) = λ·diam", allowed=tol)
    rows = []
    for lam in CONTRACT_LAMBDAS:
        S = scale_space(X, lam) if lam > 0 else one_point_space()
        d = gh_exact(S, pt, budget=budget, threads=threads).value
        dE = edwards_dE(S, pt, budget=budget, threads=threads)
        shrink.record(abs(d - lam * diam / 2), lambda: {"X": X.dist, "lam": lam, "d": d})
        edw.record(abs(dE - lam * diam), lambda: {"X": X.dist, "lam": lam, "d_e": dE})
        rows.append({"lambda": lam, "d_gh": d, "expected": lam * diam / 2, "d_e": dE})
    grow = Tally("d(λX, X) = (λ-1)·diam/2", allowed=tol)
    growth = []
    for lam in GROWTH_LAMBDAS:
        S = scale_space(X, lam)
        run.spaces[f"scaled_{lam:g}"] = S
        d = gh_exact(S, X, budget=budget, threads=threads).value
        grow.record(abs(d - (lam - 1) * diam / 2), lambda: {"X": X.dist, "lam": lam, "d": d})
        growth.append({"lambda": lam, "d_gh": d, "expected": (lam - 1) * diam / 2})
    run.properties = [shrink.outcome(), edw.outcome(), grow.outcome(note="unbounded as λ grows")]
    run.tables["contract"] = rows
    run.tables["growth"] = growth
    return run


def ray(times: Sequence[float] = RAY_TIMES, budget: int = DEFAULT_BUDGET,
        tol: float = TOL_NUM) -> SuiteRun:
    """t ↦ two points at distance 2t (a point at t = 0) is an isometric copy of [0, ∞)."""
    run = SuiteRun()
    spaces: List[FiniteMetricSpace] = [two_points(2 * t) if t > 0 else one_point_space() for t in times]
    iso = Tally("d(P_2s, P_2t) = |s-t|", allowed=tol)
    rows = []
    for a, s in enumerate(times):
        for b in range(a + 1, len(times)):
            t = times[b]
            d = gh_exact(spaces[a], spaces[b], budget=budget).value
            iso.record(abs(d - abs(s - t)), lambda: {"s": s, "t": t, "d": d})
            rows.append({"s": s, "t": t, "d_gh": d, "expected": abs(s - t)})
    for t, S in zip(times, spaces):
        run.spaces[f"ray_{t:g}"] = S
    run.properties = [iso.outcome()]
    run.tables["ray"] = rows
    return run


DEMOS = {"density": density, "contract": contract, "ray": ray}
