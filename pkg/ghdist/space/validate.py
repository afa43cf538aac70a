# ghdist/space/validate.py
from __future__ import annotations
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple
import numpy as np
from ..core.config import TOL_METRIC
from ..core.model import FiniteMetricSpace
from ..core import errors

@dataclass
class Issue:
    code: str         # e.g., "VIOLATED_TRIANGLE", "NONZERO_DIAGONAL"
    path: str         # matrix location, e.g. "dist[0][2]" or "dist[0,1,2]"
    message: str
    severity: str = "error"
    entries: Tuple[int, ...] = ()
    slack: Optional[float] = None

@dataclass
class ValidationReport:
    issues: List[Issue] = field(default_factory=list)
    canonical: Optional[np.ndarray] = None
    def errors(self) -> List[Issue]:
        return [i for i in self.issues if i.severity == "error"]
    def warn(self) -> List[Issue]:
        return [i for i in self.issues if i.severity == "warning"]

_EXC = {
    "ZERO_DIMENSION": errors.ZeroDimension,
    "NON_SQUARE": errors.NonSquareMatrix,
    "NON_FINITE": errors.NonFiniteEntry,
    "NONZERO_DIAGONAL": errors.NonZeroDiagonal,
    "VIOLATED_SYMMETRY": errors.ViolatedSymmetry,
    "NONPOSITIVE_OFF_DIAGONAL": errors.NonPositiveOffDiagonal,
    "VIOLATED_TRIANGLE": errors.ViolatedTriangle,
    "BAD_LABELS": errors.BadLabels,
}

MAX_TRIANGLE_ISSUES = 20

def _as_array(matrix) -> Optional[np.ndarray]:
    try:
        M = np.asarray(matrix, dtype=float)
    except (TypeError, ValueError):
        return None
    return M

def check_matrix(matrix, tol_metric: float = TOL_METRIC,
                 labels: Optional[Sequence[str]] = None) -> ValidationReport:
    """Collect every violation of the metric axioms; `canonical` is set when there are none."""
    report = ValidationReport()
    M = _as_array(matrix)
    if M is None or M.ndim != 2 or M.shape[0] != M.shape[1]:
        if M is not None and M.size == 0:
            report.issues.append(Issue("ZERO_DIMENSION", "dist", "empty spaces are not allowed"))
        else:
            report.issues.append(Issue("NON_SQUARE", "dist", "distance matrix must be square"))
        return report
    n = M.shape[0]
    if n == 0:
        report.issues.append(Issue("ZERO_DIMENSION", "dist", "empty spaces are not allowed"))
        return report
    if labels is not None:
        if len(labels) != n:
            report.issues.append(Issue("BAD_LABELS", "labels", f"expected {n} labels, got {len(labels)}"))
        elif len(set(labels)) != n:
            report.issues.append(Issue("BAD_LABELS", "labels", "labels must be distinct"))

    bad = np.argwhere(~np.isfinite(M))
    if len(bad):
        i, j = (int(v) for v in bad[0])
        report.issues.append(Issue("NON_FINITE", f"dist[{i}][{j}]",
                                   f"entry {M[i, j]!r} is not a finite real", entries=(i, j)))
        return report

    asym = np.abs(M - M.T)
    if asym.max() > tol_metric:
        i, j = (int(v) for v in np.unravel_index(int(np.argmax(asym)), asym.shape))
        i, j = min(i, j), max(i, j)
        report.issues.append(Issue("VIOLATED_SYMMETRY", f"dist[{i}][{j}]",
                                   f"|d[{i}][{j}] - d[{j}][{i}]| = {asym[i, j]!r} exceeds {tol_metric!r}",
                                   entries=(i, j), slack=float(asym[i, j])))
        return report
    # averaging keeps both halves bit-identical: (a+b)/2 == (b+a)/2
    D = (M + M.T) / 2.0

    for i in range(n):
        if D[i, i] != 0.0:
            report.issues.append(Issue("NONZERO_DIAGONAL", f"dist[{i}][{i}]",
                                       f"diagonal entry is {D[i, i]!r}", entries=(i,)))
    off = D + np.diag(np.full(n, np.inf))
    for i, j in np.argwhere(off <= 0.0):
        if i < j:
            report.issues.append(Issue("NONPOSITIVE_OFF_DIAGONAL", f"dist[{i}][{j}]",
                                       f"distinct points {i},{j} at distance {D[i, j]!r}",
                                       entries=(int(i), int(j))))
    if report.errors():
        return report

    # slack[i,j,k] = d(i,j) + d(j,k) - d(i,k)
    slack = D[:, :, None] + D[None, :, :] - D[:, None, :]
    violations = np.argwhere(slack < -tol_metric)
    for i, j, k in violations[:MAX_TRIANGLE_ISSUES]:
        s = float(slack[i, j, k])
        report.issues.append(Issue("VIOLATED_TRIANGLE", f"dist[{i},{j},{k}]",
                                   f"d[{i}][{k}] = {D[i, k]!r} > d[{i}][{j}] + d[{j}][{k}] "
                                   f"= {D[i, j] + D[j, k]!r} (slack {s!r})",
                                   entries=(int(i), int(j), int(k)), slack=s))
    if len(violations) > MAX_TRIANGLE_ISSUES:
        report.issues.append(Issue("VIOLATED_TRIANGLE", "dist",
                                   f"{len(violations) - MAX_TRIANGLE_ISSUES} further triangle violations",
                                   severity="warning"))
    if not report.errors():
        report.canonical = D
    return report

def default_labels(n: int) -> List[str]:
    return [f"p{i}" for i in range(n)]

def validate_space(matrix, tol_metric: float = TOL_METRIC,
                   labels: Optional[Sequence[str]] = None) -> FiniteMetricSpace:
    """Return the space iff all metric axioms hold; raise the first violation otherwise."""
    report = check_matrix(matrix, tol_metric, labels)
    errs = report.errors()
    if errs:
        first = errs[0]
        raise _EXC[first.code](f"{first.path}: {first.message}", first.entries, first.slack)
    D = report.canonical
    names = list(labels) if labels is not None else default_labels(D.shape[0])
    return FiniteMetricSpace(labels=names, dist=D.tolist())
