"""Command line front end.

Every command writes a CSV (first line a timestamped ``#`` comment, the
rest deterministic) and a JSON summary into ``--out-dir``.

Exit codes: 0 ok, 1 hard invariant failed, 2 bad usage or config,
3 unreadable graph file, 4 kernel exhaustion did not converge.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .antitree import build_antitree, combinatorial_levels, dimension, power_sphere_function, reduce
from .bounds import (
    AnchorGeometry, BoundParams, anchor_radius, anchored_bound, antitree2_bound, antitree_bound_combinatorial,
    antitree_bound_intrinsic, ratio_report,
)
from .config import ConfigError, ExperimentConfig, canonical, load_config, override, parse_t_grid
from .functionals import (
    BRUTE_FORCE_CAP, GammaParams, MeanParams, TruncationError, ball_members, ball_volumes, degree_mean, doubling_constant,
    gamma_error, isoperimetric_balls, isoperimetric_bruteforce, isoperimetric_path_exact, measure_mean,
)
from .graph import GraphFormatError, WeightedGraph, read_graph, write_graph
from .heat import HeatKernel, assemble_dirichlet, decompose, exhaustion_converge, geometric_grid
from .metric import ball, make_metric, verify_intrinsic
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GRAPH, EXIT_UNCONVERGED = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


# -- output ----------------------------------------------------------------------

def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_csv(path: Path, columns, rows, command: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    with open(path, "w", newline="") as fh:
        fh.write(f"# graphheat {command} {stamp}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(v) for v in row])
    return path


def csv_body(path) -> str:
    """File contents without the timestamped first line."""
    text = Path(path).read_text()
    return text.split("\n", 1)[1] if text.startswith("#") else text


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return None
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf")
    return obj


def write_summary(path: Path, summary: dict) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(summary), indent=2, sort_keys=True) + "\n")
    return path


def _out(args, default_name: str) -> Path:
    return Path(args.out) if getattr(args, "out", None) else Path(args.out_dir) / default_name


# -- inputs ------------------------------------------------------------------------

def load_graph(args) -> WeightedGraph:
    if args.graph:
        try:
            return read_graph(args.graph)
        except (OSError, GraphFormatError) as exc:
            raise CliError(f"cannot read graph {args.graph}: {exc}", EXIT_GRAPH) from exc
    if args.gamma is None or args.levels is None:
        raise CliError("give --graph FILE or --gamma G --levels N")
    s = power_sphere_function(args.gamma)
    return build_antitree(s, args.levels).graph if args.full else reduce(s, args.levels).graph


def read_pairs(path) -> list[tuple[int, int]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read pairs file: {exc}") from exc
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].replace(",", " ").split()
        if not line:
            continue
        if len(line) != 2:
            raise CliError(f"pairs line {lineno}: expected two vertex indices")
        try:
            pairs.append((int(line[0]), int(line[1])))
        except ValueError:
            raise CliError(f"pairs line {lineno}: not integers") from None
    return pairs


def _pair(text: str) -> tuple[int, int]:
    a, _, b = text.partition(",")
    try:
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None


def _t_grid(text: str) -> np.ndarray:
    try:
        return geometric_grid(*parse_t_grid(text))
    except (ConfigError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _radii(text: str) -> np.ndarray:
    """``a:b:step`` or a comma list."""
    try:
        if ":" in text:
            a, b, step = (float(v) for v in text.split(":"))
            return np.arange(a, b + step / 2, step)
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad radius list {text!r}") from None


def _pairs_from(args, default):
    pairs = list(args.pair or [])
    if args.pairs:
        pairs += read_pairs(args.pairs)
    return pairs or default


# -- commands ------------------------------------------------------------------------

def cmd_antitree(args) -> int:
    if args.gamma is None or args.levels is None:
        raise CliError("antitree needs --gamma and --levels")
    g = load_graph(args)
    kind = "full" if args.full else "reduced"
    path = _out(args, f"antitree_{args.gamma}_{args.levels}_{kind}.txt")
    path.parent.mkdir(parents=True, exist_ok=True)
    write_graph(g, path)
    summary = {"vertices": g.vertex_count, "edges": g.edge_count, "kind": kind, "dimension": dimension(args.gamma),
               "graph_file": str(path)}
    write_summary(Path(args.out_dir) / "antitree.json", summary)
    print(f"wrote {kind} realization with {g.vertex_count} vertices, {g.edge_count} edges to {path}")
    return EXIT_OK


def cmd_metric(args) -> int:
    g = load_graph(args)
    rho = make_metric(g, args.kind)
    sources = args.source if args.source else [0]
    rows = []
    for x in sources:
        d = rho.distances_from(x)
        rows += [(x, y, float(d[y])) for y in range(g.vertex_count)]
    rep = verify_intrinsic(g, rho)
    path = write_csv(_out(args, "metric.csv"), ("source", "target", "distance"), rows, "metric")
    write_summary(Path(args.out_dir) / "metric.json", {
        "kind": args.kind, "jump_size": rho.jump_size, "intrinsic": rep.passed,
        "worst_vertex": rep.worst[0], "worst_slack": rep.worst[1], "csv": str(path),
    })
    print(f"{args.kind} metric: jump size {rho.jump_size:.6g}, intrinsic {'pass' if rep.passed else 'FAIL'} "
          f"(min slack {rep.worst[1]:.3g} at {rep.worst[0]})")
    return EXIT_OK


def cmd_ball(args) -> int:
    g = load_graph(args)
    rho = make_metric(g, args.kind)
    B = ball(g, rho, args.center, args.radius, closed=not args.open)
    d = rho.distances_from(args.center)
    rows = [(int(v), float(d[v])) for v in B.members]
    path = write_csv(_out(args, "ball.csv"), ("vertex", "distance"), rows, "ball")
    write_summary(Path(args.out_dir) / "ball.json", {
        "center": args.center, "radius": args.radius, "closed": not args.open, "size": len(B),
        "measure": float(g.measure[B.members].sum()), "csv": str(path),
    })
    print(f"ball of radius {args.radius} about {args.center}: {len(B)} vertices")
    return EXIT_OK


def _kernel_domain(g, rho, args, times, pairs):
    """Fixed ball truncation, or an exhaustion when ``--tol`` is given."""
    truncated = np.isin(np.arange(g.vertex_count), list(g.truncated))
    if args.tol is not None:
        res = exhaustion_converge(g, rho, args.center, float(times.max()), args.tol, probes=pairs, times=times,
                                  radius0=args.truncate, cutoff_scale=args.cutoff_scale, max_size=args.max_size)
        if not res.trace:
            raise CliError("truncation cap reached before the probes fit in a ball", EXIT_UNCONVERGED)
        return res.domain, "converged" if res.converged else "unconverged", len(res.trace)
    if args.truncate is None:
        dom = np.flatnonzero(~truncated)
    else:
        dom = np.flatnonzero((rho.distances_from(args.center) <= args.truncate) & ~truncated)
    return dom, "fixed", 1


def evaluate_kernel(g, rho, args, times, pairs):
    dom, verdict, steps = _kernel_domain(g, rho, args, times, pairs)
    needed = sorted({v for pr in pairs for v in pr})
    if not set(needed) <= set(dom.tolist()):
        raise CliError("a probe vertex lies outside the truncation")
    cutoff = None if args.cutoff_scale is None else args.cutoff_scale / float(times.min())
    dec = decompose(assemble_dirichlet(g, dom, args.max_size), cutoff=cutoff, keep=needed)
    hk = HeatKernel(dec)
    values = {}
    for t in times:
        mass = dict(zip(needed, hk.mass(float(t), needed)))
        for x, y in pairs:
            values[float(t), x, y] = (hk(float(t), x, y), 1.0 - mass[x])
    return values, int(dom.size), verdict, steps


def cmd_kernel(args) -> int:
    g = load_graph(args)
    rho = make_metric(g, args.metric)
    pairs = _pairs_from(args, [(args.center, args.center)])
    times = args.t_grid
    values, size, verdict, steps = evaluate_kernel(g, rho, args, times, pairs)
    rows = [(t, x, y, p, defect, size, verdict) for (t, x, y), (p, defect) in values.items()]
    cols = ("t", "x", "y", "p", "mass_defect", "domain_size", "verdict")
    path = write_csv(_out(args, "kernel.csv"), cols, rows, "kernel")
    write_summary(Path(args.out_dir) / "kernel.json", {
        "domain_size": size, "verdict": verdict, "exhaustion_steps": steps, "rows": len(rows),
        "note": "Dirichlet values are lower approximations of the heat kernel", "csv": str(path),
    })
    print(f"kernel on {size} vertices, {len(rows)} rows, truncation {verdict}")
    return EXIT_UNCONVERGED if verdict == "unconverged" else EXIT_OK


def _beta(args, q: float) -> float:
    return args.beta if args.beta is not None else 1.0 + 1.0 / max(args.n, 2.0 * q)


def cmd_geometry(args) -> int:
    g = load_graph(args)
    rho = make_metric(g, args.metric)
    ops = [o.strip() for o in args.ops.split(",") if o.strip()]
    bad = set(ops) - {"dp", "mp", "gamma", "doubling"}
    if bad:
        raise CliError(f"unknown ops: {', '.join(sorted(bad))}")
    mp = MeanParams(args.p, args.anchor)
    rows = []
    for r in args.radii:
        if "dp" in ops:
            rows.append(("dp", float(r), degree_mean(g, rho, args.anchor, r, args.p)))
        if "mp" in ops:
            rows.append(("mp", float(r), measure_mean(g, rho, args.anchor, r, args.p)))
        if "gamma" in ops:
            gp = GammaParams(args.n, _beta(args, mp.q), rho.jump_size)
            rows.append(("gamma", float(r), gamma_error(g, rho, args.anchor, r, mp, gp)))
    if "doubling" in ops:
        d = args.d if args.d is not None else (dimension(args.gamma) if args.gamma is not None and not args.graph else None)
        if d is None:
            raise CliError("doubling needs --d for a graph file")
        R1 = args.R1 if args.R1 is not None else float(args.radii.min())
        R2 = args.R2 if args.R2 is not None else float(args.radii.max())
        dc = doubling_constant(g, rho, args.anchor, d, R1, R2, args.radii)
        rows += [("C_D", math.nan, dc.C_D), ("C_D_star", math.nan, dc.C_D_star)]
    path = write_csv(_out(args, "geometry.csv"), ("op", "r", "value"), rows, "geometry")
    write_summary(Path(args.out_dir) / "geometry.json", {"anchor": args.anchor, "p": args.p, "ops": ops,
                                                         "rows": len(rows), "csv": str(path)})
    print(f"geometry: {len(rows)} rows written to {path}")
    return EXIT_OK


def cmd_iso(args) -> int:
    g = load_graph(args)
    rho = make_metric(g, args.metric)
    U = ball_members(g, rho, args.center, args.set_radius)
    if args.method == "balls":
        res = isoperimetric_balls(g, rho, args.set_radius, args.n, args.center)
    elif args.method == "brute":
        res = isoperimetric_bruteforce(g, rho, U, args.n)
    elif U.size <= BRUTE_FORCE_CAP or not g.is_path():
        res = isoperimetric_bruteforce(g, rho, U, args.n)
    else:
        res = isoperimetric_path_exact(g, rho, U, args.n)
    W = sorted(res.minimizer)
    rows = [(res.method, args.set_radius, int(U.size), res.value, len(W), " ".join(map(str, W)))]
    path = write_csv(_out(args, "iso.csv"), ("method", "r", "set_size", "h", "minimizer_size", "minimizer"), rows, "iso")
    write_summary(Path(args.out_dir) / "iso.json", {"method": res.method, "h": res.value, "set_size": int(U.size),
                                                    "n": args.n, "csv": str(path)})
    print(f"h = {res.value:.10g} ({res.method}, |U| = {U.size}, |W| = {len(W)})")
    return EXIT_OK


def cmd_bounds(args) -> int:
    g = load_graph(args)
    rho = make_metric(g, "degree")
    if args.gamma is None:
        raise CliError("bounds needs --gamma for the dimension")
    d = args.d if args.d is not None else dimension(args.gamma)
    n = args.n if args.n is not None else 2 * d
    o = args.anchor
    levels = combinatorial_levels(g, o)
    pairs = _pairs_from(args, [(x, y) for x in range(args.max_level + 1) for y in range(x, args.max_level + 1)])
    times = args.t_grid
    args.center = o
    values, size, verdict, _ = evaluate_kernel(g, rho, args, times, pairs)
    converged = verdict != "unconverged"
    dist = rho.distances_from(o)
    vol_o = ball_volumes(g, rho, o, np.sqrt(times))
    params = BoundParams(n=n, d=d, p=args.p, S=rho.jump_size, R1=args.R1, R2=args.R2, C_free=args.C_free)
    mp = MeanParams(args.p, o)
    gp = GammaParams(n, params.beta, rho.jump_size) if args.formula == "main" else None
    T, X, Y, P, shapes = [], [], [], [], []
    for i, t in enumerate(times):
        t = float(t)
        for x, y in pairs:
            pair_ok = x == y or levels[x] != levels[y]
            rxy = rho(x, y)
            if args.formula == "antitree1":
                b = antitree_bound_intrinsic(args.gamma, n, dist[x], dist[y], rxy, vol_o[i], t, args.C_free, pair_ok=pair_ok)
            elif args.formula == "antitree1c":
                b = antitree_bound_combinatorial(args.gamma, int(levels[x]), int(levels[y]), t, args.C_free)
            elif args.formula == "antitree2":
                bx = ball_volumes(g, rho, x, [math.sqrt(t)])[0]
                by = ball_volumes(g, rho, y, [math.sqrt(t)])[0]
                b = antitree2_bound(args.gamma, n, rxy, bx, by, t, args.C_free, dist[x], dist[y], pair_ok=pair_ok)
            else:
                gx = gamma_error(g, rho, o, anchor_radius(dist[x], t, params.R2), mp, gp)
                gy = gamma_error(g, rho, o, anchor_radius(dist[y], t, params.R2), mp, gp)
                mB = ball_volumes(g, rho, o, [min(math.sqrt(t), params.R2)])[0]
                b = anchored_bound(params, AnchorGeometry(gx, gy, dist[x], dist[y], rxy, mB), t)
            T.append(t), X.append(x), Y.append(y), P.append(values[t, x, y][0]), shapes.append(b)
    rep = ratio_report(T, X, Y, P, shapes, np.full(len(T), converged))
    rows = [r + (size, verdict) for r in rep.rows()]
    cols = ("t", "x", "y", "p", "bound_shape", "ratio", "flags", "domain_size", "verdict")
    path = write_csv(_out(args, "bounds.csv"), cols, rows, "bounds")
    used = bool(rep.used.any())
    summary = {
        "formula": args.formula, "n": n, "d": d, "C_free": args.C_free, "domain_size": size, "verdict": verdict,
        "excluded": rep.excluded, "sup_ratio": rep.sup if used else None,
        "stability": rep.stability if used else None, "growth": rep.growth if used else None,
        "argmax": rep.argmax if used else None, "csv": str(path),
    }
    if args.formula == "main":
        summary["preconditions"] = params.violations() or "ok"
    write_summary(Path(args.out_dir) / "bounds.json", summary)
    if used:
        print(f"{args.formula}: sup p/shape = {rep.sup:.6g}, per-time spread {rep.stability:.4g}, "
              f"{rep.excluded} rows excluded")
    else:
        print(f"{args.formula}: every row excluded (flags or unconverged)")
    return EXIT_OK if converged else EXIT_UNCONVERGED


def run_verify(cfg: ExperimentConfig, threads: int = 1) -> tuple[int, dict]:
    """Run the configured suites, write one CSV per suite and ``summary.json``."""
    out = Path(cfg.out_dir)
    names = list(cfg.suites)
    graph = None
    if cfg.graph:
        try:
            graph = read_graph(cfg.graph)
        except (OSError, GraphFormatError) as exc:
            raise CliError(f"cannot read graph {cfg.graph}: {exc}", EXIT_GRAPH) from exc
        names.append("graph")
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(lambda name: run_suite(name, cfg.seed, cfg, graph), names))
    for res in results:
        write_csv(out / f"{res.name}.csv", res.columns, res.rows, f"verify {res.name}")
    failed = [r.name for r in results if not r.ok]
    unconverged = [r.name for r in results if r.unconverged]
    code = EXIT_UNCONVERGED if unconverged else (EXIT_FAIL if failed else EXIT_OK)
    summary = {
        "config": canonical(cfg),
        "exit_code": code,
        "failed": failed,
        "unconverged": unconverged,
        "suites": {r.name: {"ok": r.ok, "metrics": r.metrics, "targets": r.targets, "seconds": round(r.seconds, 3),
                            "unconverged": r.unconverged} for r in results},
    }
    write_summary(out / "summary.json", summary)
    return code, summary


def cmd_verify(args) -> int:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    suites = None
    if args.suites is not None:
        suites = tuple(s.strip() for s in args.suites.split(",") if s.strip() and s.strip() != "none")
    cfg = override(cfg, seed=args.seed, out_dir=args.out_dir_given, suites=suites)
    code, summary = run_verify(cfg, args.threads)
    for name, s in summary["suites"].items():
        missed = [k for k, v in s["targets"].items() if not v]
        tag = "ok" if s["ok"] else "FAIL"
        extra = f"  targets missed: {', '.join(missed)}" if missed else ""
        print(f"{name:<13} {tag:<4} {s['seconds']:8.2f}s{extra}")
    print(f"exit {code}; reports in {cfg.out_dir}")
    return code


# -- parser ----------------------------------------------------------------------------

def _kernel_opts(t_grid="1:100", tol=None, cutoff_scale=None) -> argparse.ArgumentParser:
    # a fresh parent per subcommand: parents share action objects, so set_defaults would leak
    opts = argparse.ArgumentParser(add_help=False)
    opts.add_argument("--t-grid", type=_t_grid, default=_t_grid(t_grid), help="start:stop[:ratio]")
    opts.add_argument("--pair", type=_pair, action="append", help="probe pair x,y (repeatable)")
    opts.add_argument("--pairs", help="file with one 'x y' pair per line")
    opts.add_argument("--truncate", type=float, default=None, help="ball radius of the truncation")
    opts.add_argument("--tol", type=float, default=tol, help="grow truncations until stable to this tolerance")
    opts.add_argument("--cutoff-scale", type=float, default=cutoff_scale,
                      help="keep eigenvalues below this over the smallest time")
    opts.add_argument("--max-size", type=int, default=50_000, help="largest truncation")
    opts.add_argument("--out", help="CSV path (default: <out-dir>/<command>.csv)")
    return opts


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed (verify suites)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for independent suites")
    common.add_argument("--out-dir", dest="out_dir_given", default=None, help="report directory (default: reports)")

    graph_src = argparse.ArgumentParser(add_help=False)
    graph_src.add_argument("--graph", help="graph text file")
    graph_src.add_argument("--gamma", type=float, help="anti-tree exponent for a generated realization")
    graph_src.add_argument("--levels", type=int, help="levels of the generated realization")
    graph_src.add_argument("--full", action="store_true", help="full anti-tree instead of the reduced line")

    p = argparse.ArgumentParser(prog="graphheat", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("antitree", parents=[common, graph_src], help="write an anti-tree realization")
    a.add_argument("--reduced", action="store_true", help="reduced line (the default)")
    a.add_argument("--out", help="graph file path")
    a.set_defaults(func=cmd_antitree)

    m = sub.add_parser("metric", parents=[common, graph_src], help="distances and the intrinsic check")
    m.add_argument("--kind", choices=("degree", "combinatorial"), default="degree")
    m.add_argument("--source", type=int, action="append", help="source vertex (repeatable, default 0)")
    m.add_argument("--out")
    m.set_defaults(func=cmd_metric)

    b = sub.add_parser("ball", parents=[common, graph_src], help="members of a metric ball")
    b.add_argument("--kind", choices=("degree", "combinatorial"), default="degree")
    b.add_argument("--center", type=int, default=0)
    b.add_argument("--radius", type=float, required=True)
    b.add_argument("--open", action="store_true", help="strict inequality")
    b.add_argument("--out")
    b.set_defaults(func=cmd_ball)

    k = sub.add_parser("kernel", parents=[common, graph_src, _kernel_opts()], help="Dirichlet heat kernel values")
    k.add_argument("--center", type=int, default=0)
    k.add_argument("--metric", choices=("degree", "combinatorial"), default="degree")
    k.set_defaults(func=cmd_kernel)

    ge = sub.add_parser("geometry", parents=[common, graph_src], help="means, error function, doubling")
    ge.add_argument("--anchor", type=int, default=0)
    ge.add_argument("--metric", choices=("degree", "combinatorial"), default="degree")
    ge.add_argument("--ops", default="dp,mp,gamma,doubling")
    ge.add_argument("--radii", type=_radii, default=_radii("2:20:2"), help="a:b:step or comma list")
    ge.add_argument("--p", type=float, default=math.inf)
    ge.add_argument("--n", type=float, default=8.0)
    ge.add_argument("--beta", type=float, default=None, help="default 1 + 1/max(n, 2q)")
    ge.add_argument("--d", type=float, default=None, help="default from --gamma")
    ge.add_argument("--R1", type=float, default=None)
    ge.add_argument("--R2", type=float, default=None)
    ge.add_argument("--out")
    ge.set_defaults(func=cmd_geometry)

    i = sub.add_parser("iso", parents=[common, graph_src], help="isoperimetric constant of a ball")
    i.add_argument("--center", type=int, default=0)
    i.add_argument("--metric", choices=("degree", "combinatorial"), default="degree")
    i.add_argument("--set-radius", type=float, required=True)
    i.add_argument("--n", type=float, required=True, help="dimension parameter (inf allowed)")
    i.add_argument("--method", choices=("brute", "balls", "exact"), default="exact")
    i.add_argument("--out")
    i.set_defaults(func=cmd_iso)

    bo = sub.add_parser("bounds", parents=[common, graph_src, _kernel_opts("10368:80000", 1e-9, 60.0)], help="kernel against a bound shape")
    bo.add_argument("--formula", choices=("main", "antitree1", "antitree1c", "antitree2"), default="antitree1")
    bo.add_argument("--anchor", type=int, default=0)
    bo.add_argument("--max-level", type=int, default=5, help="default pairs: all x <= y <= this")
    bo.add_argument("--n", type=float, default=None, help="default 2d")
    bo.add_argument("--d", type=float, default=None, help="default from gamma")
    bo.add_argument("--p", type=float, default=math.inf)
    bo.add_argument("--R1", type=float, default=72.0)
    bo.add_argument("--R2", type=float, default=math.inf)
    bo.add_argument("--C-free", dest="C_free", type=float, default=1.0)
    bo.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", parents=[common], help="run the verification suites")
    v.add_argument("--config", help="key = value config file")
    v.add_argument("--suites", default=None, help=f"comma list from: {', '.join(SUITES)}")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.out_dir = args.out_dir_given or "reports"
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphFormatError as exc:
        print(f"graph error: {exc}", file=sys.stderr)
        return EXIT_GRAPH
    except (TruncationError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
