"""
Seeded property suites over random finite spaces.

Every suite returns a `SuiteRun`: one `PropertyOutcome` per property (with the worst
instance as witness, matrices included, so a FAIL can be replayed from the report alone)
plus per-instance tables.
"""
from __future__ import annotations
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple
import numpy as np
from ..core.config import DEFAULT_BUDGET, TOL_NUM
from ..core.model import FiniteMetricSpace, PropertyOutcome
from ..space.generate import random_space
from ..space.metric import are_isometric, one_point_space, permute_space, scale_space
from ..correspondences.relation import distortion
from ..correspondences.solver import gh_exact, gh_exact_oracle
from ..admissible.glue import glue_from_correspondence, glued_hausdorff, sample_admissible
from ..admissible.midpoint import interpolate, interpolation_correspondence
from ..maps.pointmap import correspondence_to_map, covering_radius, is_eps_isometry, make_map, map_distortion
from ..maps.search import edwards_dE, hat_dGH
from ..embed.linf import align_upper_bound, kuratowski_embed, supnorm_distances, supnorm_hausdorff, translate
from ..space.validate import validate_space

SAMPLES_PER_PAIR = 1000
EMBED_SIZES = (1, 2, 3, 5, 8, 13, 21, 34, 64)
TIGHT_DELTA = 1e-6
EMBED_TOL = 1e-12


@dataclass
class SuiteRun:
    properties: List[PropertyOutcome] = field(default_factory=list)
    tables: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)
    spaces: Dict[str, FiniteMetricSpace] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)

    def failed(self) -> bool:
        return any(not p.passed for p in self.properties)


class Tally:
    """Accumulates one property: a check passes when its violation is <= allowed.

    Instances whose exact solve was truncated are skipped, not judged.
    """

    def __init__(self, name: str, allowed: float = TOL_NUM):
        self.name = name
        self.allowed = allowed
        self.checks = 0
        self.skipped = 0
        self.worst: Optional[float] = None
        self.witness: Dict[str, Any] = {}
        self.passed = True

    def record(self, violation: float, witness: Callable[[], Dict[str, Any]]) -> None:
        self.checks += 1
        if self.worst is None or violation > self.worst:
            self.worst = violation
            self.witness = witness()
        self.passed = self.passed and violation <= self.allowed

    def require(self, ok: bool, witness: Callable[[], Dict[str, Any]]) -> None:
        self.checks += 1
        if not ok and self.passed:
            self.witness = witness()
        self.passed = self.passed and ok

    def skip(self) -> None:
        self.skipped += 1

    def outcome(self, note: Optional[str] = None) -> PropertyOutcome:
        if self.skipped:
            extra = f"{self.skipped} instance(s) skipped: solver truncated, bounds not tight"
            note = f"{note}; {extra}" if note else extra
        return PropertyOutcome(name=self.name, passed=self.passed, checks=self.checks,
                               max_deviation=self.worst, witness=self.witness, note=note)


def _skip_all(*tallies: Tally) -> None:
    for t in tallies:
        t.skip()


def _instances(rng: np.random.Generator, count: int, arity: int, nmax: int,
               isometric_rate: float = 0.0) -> List[Tuple[FiniteMetricSpace, ...]]:
    out = []
    for _ in range(count):
        spaces = []
        for k in range(arity):
            if k > 0 and rng.random() < isometric_rate:
                prev = spaces[-1]
                spaces.append(permute_space(prev, [int(p) for p in rng.permutation(prev.n)]))
            else:
                spaces.append(random_space(int(rng.integers(1, nmax + 1)), seed=int(rng.integers(2**32))))
        out.append(tuple(spaces))
    return out


def _pair_witness(X: FiniteMetricSpace, Y: FiniteMetricSpace, **values) -> Callable[[], Dict[str, Any]]:
    return lambda: {"X": X.dist, "Y": Y.dist, **values}


def two_points(d: float) -> FiniteMetricSpace:
    return validate_space([[0.0, d], [d, 0.0]])


def metric_axioms(rng, trials: int, tol: float, budget: int, threads: int) -> SuiteRun:
    run = SuiteRun()
    sym = Tally("gh symmetry", allowed=0.0)
    ident = Tally("gh zero iff isometric")
    tri = Tally("gh triangle inequality", allowed=tol)
    scale = Tally("gh scale equivariance", allowed=tol)
    for X, Y, Z in _instances(rng, trials, 3, 5, isometric_rate=0.25):
        lam = float(rng.choice([0.5, 2.0, 3.0]))
        xy = gh_exact(X, Y, budget=budget, threads=threads)
        yx = gh_exact(Y, X, budget=budget, threads=threads)
        yz = gh_exact(Y, Z, budget=budget, threads=threads)
        xz = gh_exact(X, Z, budget=budget, threads=threads)
        dXY, dYX, dYZ, dXZ = xy.value, yx.value, yz.value, xz.value
        if xy.truncated or yx.truncated:
            sym.skip()
        else:
            sym.record(abs(dXY - dYX), _pair_witness(X, Y, d_xy=dXY, d_yx=dYX))
        if xy.truncated:
            _skip_all(ident, tri, scale)
            continue
        ident.require((dXY <= tol) == are_isometric(X, Y), _pair_witness(X, Y, d=dXY))
        if yz.truncated or xz.truncated:
            tri.skip()
        else:
            tri.record(dXZ - dXY - dYZ, lambda: {"X": X.dist, "Y": Y.dist, "Z": Z.dist,
                                                  "d_xy": dXY, "d_yz": dYZ, "d_xz": dXZ})
        scaled = gh_exact(scale_space(X, lam), scale_space(Y, lam), budget=budget, threads=threads)
        if scaled.truncated:
            scale.skip()
            continue
        dl = scaled.value
        scale.record(abs(dl - lam * dXY), _pair_witness(X, Y, lam=lam, d=dXY, d_scaled=dl))
    run.properties = [sym.outcome(), ident.outcome(), tri.outcome(), scale.outcome()]
    return run


def admissible_sandwich(rng, trials: int, tol: float, budget: int, threads: int) -> SuiteRun:
    """ρ_H(X, Y) >= d_GH over sampled admissible metrics, with equality for the optimal gluing."""
    run = SuiteRun()
    tight = Tally("optimal gluing attains d_GH", allowed=tol)
    sampled = Tally("sampled admissible metrics stay above d_GH", allowed=tol)
    rows = []
    for X, Y in _instances(rng, trials, 2, 4):
        sample_seed = int(rng.integers(2**32))
        res = gh_exact(X, Y, budget=budget, threads=threads)
        d = res.value
        if res.truncated:
            _skip_all(tight, sampled)
            rows.append({"nX": X.n, "nY": Y.n, "d_gh": d, "min_sampled_rho_h": None, "truncated": True})
            continue
        if d > 0:
            rho = glue_from_correspondence(X, Y, res.certificate, d)
            h = glued_hausdorff(rho)
            tight.record(abs(h - d), _pair_witness(X, Y, d=d, rho_h=h, certificate=list(res.certificate.pairs)))
        lowest = float("inf")
        for rho in sample_admissible(X, Y, SAMPLES_PER_PAIR, rng_seed=sample_seed):
            h = glued_hausdorff(rho)
            lowest = min(lowest, h)
            sampled.record(d - h, lambda: {"X": X.dist, "Y": Y.dist, "cross": rho.cross, "d": d, "rho_h": h})
        rows.append({"nX": X.n, "nY": Y.n, "d_gh": d, "min_sampled_rho_h": lowest, "truncated": False})
    run.properties = [tight.outcome(note="pairs with d_GH = 0 have no positive gluing radius to test"),
                      sampled.outcome()]
    run.tables["admissible"] = rows
    return run


def eps_isometry_sandwich(rng, trials: int, tol: float, budget: int, threads: int) -> SuiteRun:
    run = SuiteRun()
    built = Tally("certificate map is a (2d+δ)-isometry")
    sampled = Tally("d_GH <= 2·ε_f for sampled maps", allowed=tol)
    hat = Tally("d̂_GH within [d_GH/2, 2·d_GH]", allowed=tol)
    rows = []
    for X, Y in _instances(rng, trials, 2, 4):
        res = gh_exact(X, Y, budget=budget, threads=threads)
        d = res.value
        eps = 2 * d + TIGHT_DELTA
        f = correspondence_to_map(res.certificate, X, Y, "x->y")
        g = correspondence_to_map(res.certificate, X, Y, "y->x")
        built.require(is_eps_isometry(f, eps) and is_eps_isometry(g, eps),
                      _pair_witness(X, Y, d=d, forward=list(f.image), backward=list(g.image)))
        worst_ratio = 0.0
        for _ in range(20):
            image = [int(j) for j in rng.integers(Y.n, size=X.n)]
            if res.truncated:
                continue
            m = make_map(X, Y, image)
            eps_f = max(map_distortion(m), covering_radius(m))
            if eps_f > 0:
                sampled.record(d - 2 * eps_f, _pair_witness(X, Y, d=d, image=image, eps_f=eps_f))
                worst_ratio = max(worst_ratio, d / eps_f)
        h = hat_dGH(X, Y, threads=threads)
        if res.truncated:
            _skip_all(sampled, hat)
        else:
            hat.record(max(h.value - 2 * d, d - 2 * h.value), _pair_witness(X, Y, d=d, hat=h.value))
        rows.append({"nX": X.n, "nY": Y.n, "d_gh": d, "hat_d_gh": h.value, "attained": h.attained,
                     "eps_certificate": max(map_distortion(f), covering_radius(f)),
                     "max_d_over_eps": None if res.truncated else worst_ratio, "truncated": res.truncated})
    # d̂_GH and d_GH differ on two points against one
    P, Q = two_points(1.0), one_point_space()
    d, h = gh_exact(P, Q).value, hat_dGH(P, Q)
    distinct = Tally("d̂_GH differs from d_GH", allowed=0.0)
    distinct.require(h.value != d and abs(h.value - 1.0) <= tol and abs(d - 0.5) <= tol,
                     _pair_witness(P, Q, d=d, hat=h.value))
    rows.append({"nX": 2, "nY": 1, "d_gh": d, "hat_d_gh": h.value, "attained": h.attained,
                 "eps_certificate": None, "max_d_over_eps": None, "truncated": False})
    run.properties = [built.outcome(), sampled.outcome(note="the strict inequality is not asserted"),
                      hat.outcome(), distinct.outcome()]
    run.tables["eps_isometries"] = rows
    return run


def edwards_inequality(rng, trials: int, tol: float, budget: int, threads: int) -> SuiteRun:
    run = SuiteRun()
    half = Tally("d_GH >= ½·d_E", allowed=tol)
    embed = Tally("embedding bound >= ½·d_E", allowed=tol)
    rows = []
    for X, Y in _instances(rng, trials, 2, 4):
        d = gh_exact(X, Y, budget=budget, threads=threads).value
        dE = edwards_dE(X, Y, budget=budget, threads=threads)
        a = align_upper_bound(X, Y, restarts=2, rng_seed=int(rng.integers(2**32))).value
        half.record(0.5 * dE - d, _pair_witness(X, Y, d=d, d_e=dE))
        embed.record(0.5 * dE - a, _pair_witness(X, Y, embed=a, d_e=dE))
        rows.append({"nX": X.n, "nY": Y.n, "d_gh": d, "d_e": dE, "embed_bound": a})
    P, Q = two_points(1.0), one_point_space()
    d, dE = gh_exact(P, Q).value, edwards_dE(P, Q)
    eq = Tally("equality on two points against one", allowed=0.0)
    eq.record(abs(d - 0.5 * dE), _pair_witness(P, Q, d=d, d_e=dE))
    rows.append({"nX": 2, "nY": 1, "d_gh": d, "d_e": dE, "embed_bound": None})
    run.properties = [half.outcome(), embed.outcome(), eq.outcome()]
    run.tables["edwards"] = rows
    return run


def edwards_metric(rng, trials: int, tol: float, budget: int, threads: int) -> SuiteRun:
    run = SuiteRun()
    sym = Tally("d_E symmetry", allowed=0.0)
    ident = Tally("d_E zero iff isometric")
    tri = Tally("d_E triangle inequality", allowed=tol)
    for X, Y, Z in _instances(rng, trials, 3, 4, isometric_rate=0.25):
        dXY = edwards_dE(X, Y, budget=budget, threads=threads)
        dYX = edwards_dE(Y, X, budget=budget, threads=threads)
        dYZ = edwards_dE(Y, Z, budget=budget, threads=threads)
        dXZ = edwards_dE(X, Z, budget=budget, threads=threads)
        sym.record(abs(dXY - dYX), _pair_witness(X, Y, d_xy=dXY, d_yx=dYX))
        ident.require((dXY <= tol) == are_isometric(X, Y), _pair_witness(X, Y, d=dXY))
        tri.record(dXZ - dXY - dYZ, lambda: {"X": X.dist, "Y": Y.dist, "Z": Z.dist,
                                              "d_xy": dXY, "d_yz": dYZ, "d_xz": dXZ})
    run.properties = [sym.outcome(), ident.outcome(), tri.outcome()]
    return run


def geodesic(rng, trials: int, tol: float, budget: int, threads: int) -> SuiteRun:
    run = SuiteRun()
    mid = Tally("midpoint splits d_GH in half", allowed=tol)
    param = Tally("d(M_s, M_t) <= (t-s)·d_GH", allowed=tol)
    grid = (0.0, 0.25, 0.5, 0.75, 1.0)
    rows = []
    for X, Y in _instances(rng, trials, 2, 4):
        res = gh_exact(X, Y, budget=budget, threads=threads)
        d, R = res.value, res.certificate
        M, _ = interpolate(X, Y, R, 0.5)
        xm = gh_exact(X, M, budget=budget, threads=threads)
        my = gh_exact(M, Y, budget=budget, threads=threads)
        left, right = xm.value, my.value
        truncated = res.truncated or xm.truncated or my.truncated
        dev = max(abs(left - d / 2), abs(right - d / 2))
        if truncated:
            mid.skip()
        else:
            mid.record(dev, lambda: {"X": X.dist, "Y": Y.dist, "M": M.dist, "d": d,
                                     "d_xm": left, "d_my": right})
        for a, s in enumerate(grid):
            for t in grid[a + 1:]:
                Ms, Mt, C = interpolation_correspondence(X, Y, R, s, t)
                bound = 0.5 * distortion(C, Ms, Mt)
                param.record(bound - (t - s) * d, _pair_witness(X, Y, s=s, t=t, d=d, bound=bound))
        rows.append({"nX": X.n, "nY": Y.n, "nM": M.n, "d_gh": d, "d_xm": left, "d_my": right,
                     "deviation": None if truncated else dev, "truncated": truncated})
    run.properties = [mid.outcome(), param.outcome(note="bounded by the pair-to-pair correspondence")]
    run.tables["midpoints"] = rows
    return run


def embedding(rng, trials: int, tol: float, budget: int, threads: int) -> SuiteRun:
    run = SuiteRun()
    iso = Tally("Kuratowski embedding is isometric", allowed=EMBED_TOL)
    for n in EMBED_SIZES:
        X = random_space(n, seed=int(rng.integers(2**32)))
        P = kuratowski_embed(X).array
        dev = float(np.abs(supnorm_distances(P, P) - X.matrix).max())
        iso.record(dev, lambda: {"X": X.dist, "n": n})
    sound = Tally("embedding bound >= d_GH", allowed=tol)
    shift = Tally("sup-norm Hausdorff is translation invariant", allowed=tol)
    rows = []
    for X, Y in _instances(rng, trials, 2, 4):
        res = gh_exact(X, Y, budget=budget, threads=threads)
        d = res.value
        al = align_upper_bound(X, Y, restarts=4, rng_seed=int(rng.integers(2**32)), threads=threads)
        if res.truncated:
            sound.skip()
        else:
            sound.record(d - al.value, _pair_witness(X, Y, d=d, bound=al.value, translation=al.translation))
        A, B = kuratowski_embed(X), kuratowski_embed(Y)
        w = rng.uniform(-1.0, 1.0, size=max(A.dim, B.dim)).tolist()
        base = supnorm_hausdorff(A, B)
        moved = supnorm_hausdorff(translate(A, w), translate(B, w))
        shift.record(abs(base - moved), _pair_witness(X, Y, w=w, before=base, after=moved))
        rows.append({"nX": X.n, "nY": Y.n, "d_gh": d, "embed_bound": al.value, "gap": al.value - d,
                     "truncated": res.truncated})
    P, Q = two_points(1.0), one_point_space()
    al = align_upper_bound(P, Q)
    tight = Tally("embedding bound is 0.5 on two points against one", allowed=TIGHT_DELTA)
    tight.record(abs(al.value - 0.5), _pair_witness(P, Q, bound=al.value, translation=al.translation))
    run.properties = [iso.outcome(), sound.outcome(),
                      shift.outcome(note="exact in real arithmetic; float translation rounds, so tol applies"),
                      tight.outcome(note="the remaining gap is measured, not asserted")]
    run.tables["embedding"] = rows
    return run


def oracle(rng, trials: int, tol: float, budget: int, threads: int) -> SuiteRun:
    run = SuiteRun()
    agree = Tally("branch and bound equals the oracle", allowed=EMBED_TOL)
    cert = Tally("certificate distortion is twice the value", allowed=EMBED_TOL)
    for X, Y in _instances(rng, trials, 2, 4):
        fast = gh_exact(X, Y, budget=budget, threads=threads)
        slow = gh_exact_oracle(X, Y)
        if fast.truncated:
            agree.skip()
        else:
            agree.record(abs(fast.value - slow.value), _pair_witness(X, Y, bnb=fast.value, oracle=slow.value))
        dis = distortion(fast.certificate, X, Y)
        cert.record(abs(dis - 2 * fast.value), _pair_witness(X, Y, value=fast.value, distortion=dis))
    run.properties = [agree.outcome(), cert.outcome()]
    return run


SuiteFn = Callable[..., SuiteRun]

SUITES: Dict[str, SuiteFn] = {
    "metric-axioms": metric_axioms,
    "thm3": admissible_sandwich,
    "thm6": eps_isometry_sandwich,
    "edwards-ineq": edwards_inequality,
    "edwards-metric": edwards_metric,
    "geodesic": geodesic,
    "embedding": embedding,
    "oracle": oracle,
}

DEFAULT_TRIALS: Dict[str, int] = {
    "metric-axioms": 100,
    "thm3": 10,
    "thm6": 50,
    "edwards-ineq": 100,
    "edwards-metric": 60,
    "geodesic": 25,
    "embedding": 30,
    "oracle": 200,
}


def run_suite(name: str, seed: int = 0, trials: Optional[int] = None, tol: float = TOL_NUM,
              budget: int = DEFAULT_BUDGET, threads: int = 1) -> SuiteRun:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    rng = np.random.default_rng(seed)
    n = DEFAULT_TRIALS[name] if trials is None else trials
    run = SUITES[name](rng, n, tol, budget, threads)
    run.results = {"suite": name, "seed": seed, "trials": n,
                   "passed": sum(p.passed for p in run.properties),
                   "failed": sum(not p.passed for p in run.properties)}
    return run
