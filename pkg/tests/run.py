#!/usr/bin/env python3
from __future__ import annotations
import argparse, glob, json, os, re, subprocess, sys, zipfile

OUTPUT_FILES = ["report.json", "report.md"]

def read_cases(path: str):
    cases = []
    for fp in sorted(glob.glob(os.path.join(path, "*.json"))):
        with open(fp, "r", encoding="utf-8") as f:
            obj = json.load(f)
        cases.append(obj)
    return cases

def slug(name: str) -> str:
    return re.sub(r"\W+", "_", name.lower()).strip("_")

def write_spaces(out_dir: str, spaces: dict) -> dict:
    """Write each case space as <name>.space.json; returns name -> path."""
    paths = {}
    for name, dist in (spaces or {}).items():
        p = os.path.join(out_dir, f"{name}.space.json")
        with open(p, "w", encoding="utf-8") as f:
            json.dump({"n": len(dist), "dist": dist}, f)
        paths[name] = p
    return paths

def expand_argv(argv, paths: dict):
    out = []
    for a in argv:
        m = re.fullmatch(r"\{(\w+)\}", a)
        out.append(paths[m.group(1)] if m and m.group(1) in paths else a)
    return out

def run_cli(argv, out_dir: str):
    cmd = [sys.executable, "-m", "ghdist.cli"] + list(argv) + ["--out", out_dir]
    proc = subprocess.run(cmd, stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True, check=False)
    return proc.returncode, proc.stdout, " ".join(cmd)

def load_json(p: str):
    try:
        with open(p, "r", encoding="utf-8") as f: return json.load(f)
    except Exception:
        return {}

def run_checks(checks, rc: int, report):
    ok = True; msgs = []
    if not checks: return True, msgs
    results = report.get("results") or {}

    if "expect_exit" in checks:
        want = int(checks["expect_exit"]); cond = (rc == want)
        ok &= cond; msgs.append(f"exit == {want} -> observed: {rc} -> {'OK' if cond else 'FAIL'}")

    for key, target in (checks.get("value_close") or {}).items():
        want, tol = (target, 1e-9) if not isinstance(target, list) else (target[0], target[1])
        got = results.get(key)
        cond = isinstance(got, (int, float)) and abs(got - want) <= tol
        ok &= cond; msgs.append(f"{key} ≈ {want} (±{tol}) -> observed: {got} -> {'OK' if cond else 'FAIL'}")

    if "all_pass" in checks:
        props = report.get("properties") or []
        failed = [p["name"] for p in props if not p.get("passed")]
        cond = (len(failed) == 0) == bool(checks["all_pass"]) and len(props) > 0
        ok &= cond; msgs.append(f"all properties pass == {checks['all_pass']} -> failed: {failed or '[]'} -> {'OK' if cond else 'FAIL'}")

    if checks.get("lower_le_value"):
        lo, v = results.get("lower_bound"), results.get("value")
        cond = lo is not None and v is not None and lo <= v + 1e-12
        ok &= cond; msgs.append(f"lower_bound <= value -> observed: {lo} <= {v} -> {'OK' if cond else 'FAIL'}")

    for key, want in (checks.get("results_equal") or {}).items():
        got = results.get(key); cond = (got == want)
        ok &= cond; msgs.append(f"{key} == {want} -> observed: {got} -> {'OK' if cond else 'FAIL'}")

    return ok, msgs

def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cases-dir", default="tests/cases")
    ap.add_argument("--out-root", default="tests/out")
    ap.add_argument("--only", default="")
    ap.add_argument("--assert", dest="assert_mode", action="store_true")
    ap.add_argument("--zip-dump", action="store_true")
    args = ap.parse_args()

    only_ids = set([s.strip() for s in args.only.split(",") if s.strip()]) if args.only else None
    cases = read_cases(args.cases_dir)
    if only_ids: cases = [c for c in cases if c["id"] in only_ids]

    os.makedirs(args.out_root, exist_ok=True)
    summary = []
    any_fail = False

    for c in cases:
        out_dir = os.path.join(args.out_root, f"{c['id']}_{slug(c['name'])}")
        os.makedirs(out_dir, exist_ok=True)

        paths = write_spaces(out_dir, c.get("spaces", {}))
        rc, stdout, cmdline = run_cli(expand_argv(c["argv"], paths), out_dir)
        with open(os.path.join(out_dir, "stdout.txt"), "w", encoding="utf-8") as f: f.write(stdout)

        report = load_json(os.path.join(out_dir, "report.json"))
        results = {
            "id": c["id"],
            "name": c["name"],
            "cmd": cmdline,
            "returncode": rc,
            "value": (report.get("results") or {}).get("value"),
            "properties": len(report.get("properties") or []),
            "missing_outputs": [fn for fn in OUTPUT_FILES if not os.path.exists(os.path.join(out_dir, fn))],
        }

        ok, msgs = run_checks(c.get("checks", {}), rc, report) if args.assert_mode else (True, [])
        results["checks_ok"] = ok; results["check_messages"] = msgs

        with open(os.path.join(out_dir, "results.json"), "w", encoding="utf-8") as f: json.dump(results, f, indent=2)
        summary.append(results)

        if not ok:
            any_fail = True
            print(f"[FAIL] {c['id']} {c['name']}")
            for m in msgs: print("   -", m)
        else:
            print(f"[ OK ] {c['id']} {c['name']}  |  exit={rc}  value={results['value']}  properties={results['properties']}")

    with open("summary.json", "w", encoding="utf-8") as f: json.dump(summary, f, indent=2)

    if args.zip_dump:
        zip_name = "ghdist_test_dump.zip"
        with zipfile.ZipFile(zip_name, "w", compression=zipfile.ZIP_DEFLATED) as zf:
            for base, dirs, files in os.walk(args.out_root):
                for fn in files:
                    p = os.path.join(base, fn)
                    zf.write(p, os.path.relpath(p, "."))
        print(f"Wrote {zip_name}")

    if args.assert_mode and any_fail:
        sys.exit(1)

if __name__ == "__main__":
    main()
