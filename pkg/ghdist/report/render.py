from __future__ import annotations
import json
from typing import Any, Dict, List
from ..core.model import PropertyOutcome, RunReport

def _fmt(v: Any) -> str:
    if v is None: return "—"
    if isinstance(v, bool): return "yes" if v else "no"
    if isinstance(v, float): return f"{v:.9g}"
    return str(v)

def _table(rows: List[Dict[str, Any]]) -> List[str]:
    if not rows: return ["*(empty)*"]
    cols = list(rows[0].keys())
    for r in rows[1:]:
        cols += [k for k in r if k not in cols]
    out = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
    for r in rows:
        out.append("| " + " | ".join(_fmt(r.get(c)) for c in cols) + " |")
    return out

def _outcome(p: PropertyOutcome) -> List[str]:
    mark = "✅" if p.passed else "❌"
    dev = "" if p.max_deviation is None else f", max deviation {p.max_deviation:.3g}"
    lines = [f"- {mark} **{p.name}** ({p.checks} checks{dev})"]
    if p.note:
        lines.append(f"  - note: {p.note}")
    if not p.passed and p.witness:
        lines.append("  - witness:")
        lines.append("    ```json")
        lines += ["    " + ln for ln in json.dumps(p.witness, indent=2).splitlines()]
        lines.append("    ```")
    return lines

def to_markdown(report: RunReport) -> str:
    lines: List[str] = []
    lines.append("# GHDIST Report\n")
    lines.append(f"**Command:** `{' '.join(report.command)}`  ")
    lines.append(f"**Inputs digest:** `{report.inputs_digest}` | **Version:** {report.version} | "
                 f"**Exit code:** {report.exit_code}\n")

    if report.results:
        lines.append("## Results\n")
        for k, v in report.results.items():
            if isinstance(v, (dict, list)):
                lines.append(f"- **{k}**: `{json.dumps(v)}`")
            else:
                lines.append(f"- **{k}**: {_fmt(v)}")
        lines.append("")

    if report.properties:
        fails = report.failures()
        lines.append("## Properties\n")
        if fails:
            lines.append(f"⚠️ {len(fails)} of {len(report.properties)} properties failed.\n")
        else:
            lines.append(f"✅ All {len(report.properties)} properties hold.\n")
        for p in report.properties:
            lines += _outcome(p)
        lines.append("")

    for name, rows in report.tables.items():
        lines.append(f"## Table: {name}\n")
        lines += _table(rows)
        lines.append("")

    if report.artifacts:
        lines.append("## Artifacts\n")
        for a in report.artifacts:
            lines.append(f"- `{a}`")
        lines.append("")
    return "\n".join(lines)
