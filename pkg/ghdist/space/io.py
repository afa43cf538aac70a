"""
Space files and the other structured-text artifacts.

A space file is a JSON object::

    {"n": 3, "labels": ["a", "b", "c"], "dist": [[0, 1, 3], [1, 0, 1], [3, 1, 0]]}

`labels` is optional (defaults to p0..p{n-1}). Numbers are parsed as decimals so that
no locale or float-literal quirks leak in; NaN/Infinity literals are rejected.
"""
from __future__ import annotations
import json
import os
from decimal import Decimal, InvalidOperation
from typing import Any, Dict, List, Optional
from ..core.config import TOL_METRIC
from ..core.errors import SpaceFileError, SpaceValidationError
from ..core.model import FiniteMetricSpace, PointMap, SupNormPointSet
from .validate import validate_space


def _reject_constant(name: str):
    raise ValueError(f"non-finite literal {name} is not allowed")


def _line_of(text: str, token: str) -> Optional[int]:
    pos = text.find(token)
    return None if pos < 0 else text.count("\n", 0, pos) + 1


def _to_float(v: Any, path: str, where: str, line: Optional[int]) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, Decimal)):
        raise SpaceFileError(path, line, f"{where}: expected a number, got {v!r}")
    try:
        return float(Decimal(v))
    except (InvalidOperation, ValueError) as e:
        raise SpaceFileError(path, line, f"{where}: {e}")


def parse_space(text: str, path: str = "<string>", tol_metric: float = TOL_METRIC) -> FiniteMetricSpace:
    try:
        obj = json.loads(text, parse_float=Decimal, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise SpaceFileError(path, e.lineno, e.msg)
    except ValueError as e:
        raise SpaceFileError(path, None, str(e))
    if not isinstance(obj, dict):
        raise SpaceFileError(path, 1, "expected an object with fields n, labels, dist")

    dist_line = _line_of(text, '"dist"')
    if "dist" not in obj:
        raise SpaceFileError(path, None, "missing field 'dist'")
    rows = obj["dist"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SpaceFileError(path, dist_line, "'dist' must be an array of arrays")
    matrix: List[List[float]] = []
    for i, r in enumerate(rows):
        row_line = None if dist_line is None else dist_line + i + (1 if "\n" in text else 0)
        matrix.append([_to_float(v, path, f"dist[{i}][{j}]", row_line) for j, v in enumerate(r)])

    n = obj.get("n", len(matrix))
    if isinstance(n, bool) or not isinstance(n, int):
        raise SpaceFileError(path, _line_of(text, '"n"'), f"'n' must be an integer, got {n!r}")
    if n != len(matrix):
        raise SpaceFileError(path, _line_of(text, '"n"'), f"n = {n} but dist has {len(matrix)} rows")

    labels = obj.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise SpaceFileError(path, _line_of(text, '"labels"'), "'labels' must be an array of strings")
    try:
        return validate_space(matrix, tol_metric=tol_metric, labels=labels)
    except SpaceValidationError as e:
        line = dist_line
        if e.entries and dist_line is not None and "\n" in text:
            line = dist_line + 1 + e.entries[0]
        raise SpaceFileError(path, line, f"{type(e).__name__}: {e}") from e


def read_space(path: str, tol_metric: float = TOL_METRIC) -> FiniteMetricSpace:
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_space(text, path=path, tol_metric=tol_metric)


def format_space(X: FiniteMetricSpace) -> str:
    rows = ",\n    ".join(json.dumps(r) for r in X.dist)
    return ("{\n"
            f'  "n": {X.n},\n'
            f'  "labels": {json.dumps(X.labels)},\n'
            f'  "dist": [\n    {rows}\n  ]\n'
            "}\n")


def write_space(path: str, X: FiniteMetricSpace) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(format_space(X))
    return path


def write_map(path: str, f: PointMap, source_file: str, target_file: str) -> str:
    """Maps are stored as index arrays next to the space files they refer to."""
    data = {"source": os.path.basename(source_file), "target": os.path.basename(target_file),
            "image": list(f.image)}
    return dump_json(path, data)


def write_point_set(path: str, P: SupNormPointSet) -> str:
    return dump_json(path, {"dim": P.dim, "points": P.points})


def dump_json(path: str, data: Dict[str, Any]) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
    return path
