from __future__ import annotations
import argparse, os, sys, time
from typing import Any, Dict, List, Optional
import ghdist as _ghdist_pkg
from .core.config import DEFAULT_BUDGET, TOL_METRIC, TOL_NUM
from .core.errors import BudgetExhausted, EnumerationTooLarge, GHError
from .core.model import FiniteMetricSpace, RunReport
from .correspondences import distortion, gh_exact, gh_exact_oracle, gh_lower_bound
from .embed import align_upper_bound, aligned_images
from .maps import hat_dGH, min_distortion_map
from .reporting import run_hash, save_spaces, write_report
from .space import generate_space, hausdorff_distance, read_space, subset, write_space
from .space.io import write_map, write_point_set
from .verify import DEMOS, SUITES, run_suite

DIST_KINDS = ["exact", "oracle", "lower", "edwards", "hat", "embed-bound", "hausdorff", "all"]

EXIT_OK, EXIT_SUITE_FAILED, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


def _pairs(cert) -> List[List[int]]:
    return [list(p) for p in cert.pairs]


def _int_list(text: Optional[str]) -> List[int]:
    if not text:
        return []
    return [int(t) for t in text.split(",") if t.strip()]


def _metric_tol(args) -> float:
    return args.tol if args.tol is not None else TOL_METRIC


def _load(args) -> List[FiniteMetricSpace]:
    return [read_space(p, tol_metric=_metric_tol(args)) for p in args.spaces]


def cmd_dist(args, report: RunReport) -> int:
    need = 1 if args.kind == "hausdorff" else 2
    if len(args.spaces) != need:
        raise ValueError(f"dist {args.kind} takes {need} space file(s), got {len(args.spaces)}")
    spaces = _load(args)
    report.inputs_digest = run_hash([S.model_dump() for S in spaces], _settings(args))
    r = report.results
    code = EXIT_OK

    if args.kind == "hausdorff":
        S = spaces[0]
        A, B = subset(S, _int_list(args.a)), subset(S, _int_list(args.b))
        r["hausdorff"] = hausdorff_distance(A, B)
        print(f"[GHDIST] d_H = {r['hausdorff']:.9g}")
        return code

    X, Y = spaces
    if args.kind in ("exact", "all"):
        res = gh_exact(X, Y, budget=args.budget, threads=args.threads)
        r.update(value=res.value, lower_bound=res.lower_bound, upper_bound=res.upper_bound,
                 nodes_explored=res.nodes_explored, truncated=res.truncated, method=res.method,
                 certificate=_pairs(res.certificate),
                 certificate_distortion=distortion(res.certificate, X, Y))
        print(f"[GHDIST] d_GH = {res.value:.9g} (bounds {res.lower_bound:.9g}..{res.upper_bound:.9g}, "
              f"{res.nodes_explored} nodes)")
        if res.truncated:
            print("[GHDIST] ⚠️ node budget exhausted; value is an upper bound")
            code = EXIT_BUDGET
    if args.kind == "oracle":
        res = gh_exact_oracle(X, Y)
        r.update(value=res.value, lower_bound=res.lower_bound, upper_bound=res.upper_bound,
                 nodes_explored=res.nodes_explored, method=res.method,
                 certificate=_pairs(res.certificate))
        print(f"[GHDIST] d_GH = {res.value:.9g} (oracle, {res.nodes_explored} correspondences)")
    if args.kind == "lower":
        r["value"] = gh_lower_bound(X, Y)
        print(f"[GHDIST] d_GH >= {r['value']:.9g}")
    if args.kind in ("edwards", "all"):
        f, fwd = min_distortion_map(X, Y, budget=args.budget, threads=args.threads)
        g, bwd = min_distortion_map(Y, X, budget=args.budget, threads=args.threads)
        key = "value" if args.kind == "edwards" else "d_e"
        r.update({key: max(fwd, bwd), "forward": list(f.image), "backward": list(g.image),
                  "forward_distortion": fwd, "backward_distortion": bwd})
        report.artifacts += [os.path.basename(write_map(os.path.join(args.out, "forward.map.json"), f, args.spaces[0], args.spaces[1])),
                             os.path.basename(write_map(os.path.join(args.out, "backward.map.json"), g, args.spaces[1], args.spaces[0]))]
        print(f"[GHDIST] d_E = {max(fwd, bwd):.9g} (X→Y {fwd:.9g}, Y→X {bwd:.9g})")
    if args.kind in ("hat", "all"):
        try:
            h = hat_dGH(X, Y, threads=args.threads)
        except EnumerationTooLarge as e:
            if args.kind == "hat":
                raise
            print(f"[GHDIST] ⚠️ d̂_GH skipped: {e}")
            h = None
        if h is not None:
            key = "value" if args.kind == "hat" else "hat"
            r.update({key: h.value, "attained": h.attained, "hat_forward": h.forward,
                      "hat_backward": h.backward})
            print(f"[GHDIST] d̂_GH = {h.value:.9g} ({'attained' if h.attained else 'infimum not attained'})")
    if args.kind in ("embed-bound", "all"):
        al = align_upper_bound(X, Y, restarts=args.restarts, rng_seed=args.seed, threads=args.threads)
        key = "value" if args.kind == "embed-bound" else "embed_bound"
        r.update({key: al.value, "translation": al.translation, "restart": al.restart,
                  "permutation": al.permutation})
        phi, psi = aligned_images(X, Y, al)
        for name, P in (("phi", phi), ("psi", psi)):
            report.artifacts.append(os.path.basename(write_point_set(os.path.join(args.out, f"{name}.points.json"), P)))
        print(f"[GHDIST] embedding bound = {al.value:.9g} (restart {al.restart})")
    if args.kind == "all":
        rows = [
            {"quantity": "d_GH", "value": r.get("value")},
            {"quantity": "d̂_GH", "value": r.get("hat")},
            {"quantity": "d_E", "value": r.get("d_e")},
            {"quantity": "½·d_E", "value": 0.5 * r["d_e"]},
            {"quantity": "embedding bound", "value": r.get("embed_bound")},
        ]
        report.tables["comparison"] = rows
        for row in rows:
            v = row["value"]
            print(f"  • {row['quantity']:<16} {'—' if v is None else f'{v:.9g}'}")
    return code


def cmd_verify(args, report: RunReport) -> int:
    tol = args.tol if args.tol is not None else TOL_NUM
    report.inputs_digest = run_hash({"suite": args.suite}, _settings(args))
    print(f"[GHDIST] Running suite {args.suite} (seed {args.seed})")
    run = run_suite(args.suite, seed=args.seed, trials=args.trials, tol=tol,
                    budget=args.budget, threads=args.threads)
    return _absorb(run, report, args.out)


def cmd_demo(args, report: RunReport) -> int:
    tol = args.tol if args.tol is not None else TOL_NUM
    inputs: Dict[str, Any] = {"demo": args.demo}
    if args.demo == "density":
        kw: Dict[str, Any] = dict(chord=args.chord, budget=args.budget, threads=args.threads, tol=tol)
        if args.levels:
            kw["levels"] = _int_list(args.levels)
        run = DEMOS["density"](**kw)
    elif args.demo == "contract":
        X = read_space(args.space, tol_metric=_metric_tol(args)) if args.space else None
        if X is not None:
            inputs["space"] = X.model_dump()
        run = DEMOS["contract"](X=X, seed=args.seed, n=args.n, budget=args.budget,
                                threads=args.threads, tol=tol)
    else:
        run = DEMOS["ray"](budget=args.budget, tol=tol)
    report.inputs_digest = run_hash(inputs, _settings(args))
    print(f"[GHDIST] Demo {args.demo}")
    return _absorb(run, report, args.out)


def cmd_generate(args, report: RunReport) -> int:
    X = generate_space(args.kind, args.n, seed=args.seed, chord=args.chord)
    path = args.file or os.path.join(args.out, f"{args.kind}_{args.n}.space.json")
    write_space(path, X)
    report.inputs_digest = run_hash({"kind": args.kind, "n": args.n}, _settings(args))
    report.results.update(kind=args.kind, n=X.n, file=path)
    if not args.file:
        report.artifacts.append(os.path.basename(path))
    print(f"[GHDIST] Wrote {args.kind} space with {X.n} points to {path}")
    return EXIT_OK


def _absorb(run, report: RunReport, out_dir: str) -> int:
    report.properties = run.properties
    report.tables.update(run.tables)
    report.results.update(run.results)
    report.artifacts += save_spaces(out_dir, run.spaces)
    for p in run.properties:
        mark = "✅" if p.passed else "❌"
        print(f"  {mark} {p.name} ({p.checks} checks)")
    return EXIT_SUITE_FAILED if run.failed() else EXIT_OK


def _settings(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "func", "version")}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    common.add_argument("--trials", type=int, help="Instances per property suite (default: per suite)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help=f"Search node budget (default: {DEFAULT_BUDGET})")
    common.add_argument("--tol", type=float, help="Slack for metric validation and property checks")
    common.add_argument("--threads", type=int, default=1, help="Worker processes for searches (default: 1)")
    common.add_argument("--out", default="out", help="Output folder")

    parser = argparse.ArgumentParser(prog="ghdist", description=f"Gromov–Hausdorff distances of finite metric spaces (v{_ghdist_pkg.__version__})")
    parser.add_argument("-V", "--version", action="store_true", help="Print version and module path and exit")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("dist", parents=[common], help="Compute a distance between space files")
    p.add_argument("kind", choices=DIST_KINDS)
    p.add_argument("spaces", nargs="+", help="Space files (one for hausdorff, two otherwise)")
    p.add_argument("--restarts", type=int, default=8, help="Embedding-bound restarts (default: 8)")
    p.add_argument("--a", help="hausdorff: comma-separated indices of the first subset")
    p.add_argument("--b", help="hausdorff: comma-separated indices of the second subset")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("verify", parents=[common], help="Run a seeded property suite")
    p.add_argument("suite", choices=list(SUITES))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", parents=[common], help="Run a desk-scale demonstration")
    p.add_argument("demo", choices=list(DEMOS))
    p.add_argument("--chord", action="store_true", help="density: chord metric instead of arc length")
    p.add_argument("--levels", help="density: comma-separated n-gon sizes (default: 4,8,16,32,64)")
    p.add_argument("--space", help="contract: space file to shrink (default: random)")
    p.add_argument("--n", type=int, default=5, help="contract: size of the random space (default: 5)")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("generate", parents=[common], help="Write a generated space file")
    p.add_argument("kind", choices=["random", "ngon", "line", "simplex"])
    p.add_argument("n", type=int)
    p.add_argument("--chord", action="store_true", help="ngon: chord metric instead of arc length")
    p.add_argument("--file", help="Output space file (default: <out>/<kind>_<n>.space.json)")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        print(f"GHDIST v{_ghdist_pkg.__version__} @ {_ghdist_pkg.__file__}")
        return EXIT_OK
    if not args.command:
        parser.print_help()
        return EXIT_INVALID

    command = list(argv) if argv is not None else sys.argv[1:]
    report = RunReport(version=_ghdist_pkg.__version__, command=command, inputs_digest="")
    os.makedirs(args.out, exist_ok=True)
    t0 = time.perf_counter()
    try:
        code = args.func(args, report)
    except BudgetExhausted as e:
        print(f"[GHDIST] ⚠️ {e}")
        report.results.update(error=str(e), lower_bound=e.lower_bound, upper_bound=e.upper_bound,
                              nodes_explored=e.nodes_explored)
        code = EXIT_BUDGET
    except (GHError, ValueError, OSError) as e:
        # parse/validation errors, size caps, unreadable files
        print(f"[GHDIST] ❌ {e}")
        report.results.update(error=str(e), error_type=type(e).__name__)
        if e.__cause__ is not None:
            report.results["violation"] = type(e.__cause__).__name__
            e = e.__cause__
        entries = getattr(e, "entries", None)
        if entries:
            report.results["entries"] = list(entries)
        code = EXIT_INVALID
    report.exit_code = code
    report.timing = {"wall_seconds": round(time.perf_counter() - t0, 3)}
    write_report(args.out, report)
    print("Wrote:", args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
