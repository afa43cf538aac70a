from __future__ import annotations
from typing import Any, Dict, List
import hashlib
import json
import os
from .core.model import FiniteMetricSpace, RunReport
from .report.render import to_markdown
from .space.io import write_space


def run_hash(payload: Any, settings: dict) -> str:
    """Generate a stable hash of the run inputs for reproducibility tracking."""
    blob = json.dumps({"inputs": payload, "settings": settings}, sort_keys=True).encode("utf-8")
    return hashlib.sha1(blob).hexdigest()[:12]


def save_spaces(out_dir: str, spaces: Dict[str, FiniteMetricSpace]) -> List[str]:
    """Write intermediate spaces as `<name>.space.json`; returns their paths relative to out_dir."""
    names = []
    for name, X in sorted(spaces.items()):
        fn = f"{name}.space.json"
        write_space(os.path.join(out_dir, fn), X)
        names.append(fn)
    return names


def write_report(out_dir: str, report: RunReport) -> None:
    """
    Write report.json and report.md. JSON keys are sorted so identical runs produce
    identical files apart from the timing block.
    """
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as f:
        json.dump(report.model_dump(), f, indent=2, sort_keys=True)
    with open(os.path.join(out_dir, "report.md"), "w", encoding="utf-8") as f:
        f.write(to_markdown(report))
