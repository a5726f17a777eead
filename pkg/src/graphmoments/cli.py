"""Command-line front end.

Subcommands mirror the library: analyze, census, moments, bounds, estimate,
eigencount, spectrum, sample-ego, report.  Graphs come from an edge-list
path or --generate; the moment-driven commands instead accept --moments-file
so published moment sequences can be analyzed without their source datasets.

Exit codes: 0 success, 1 analysis error, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .analysis import (AnalysisReport, analyze_graph, analyze_moments, ego_csv,
                       report_csv, sample_ego)
from .bounds import bounds_bisect, bounds_s1, bounds_s2
from .census import aggregates, node_census
from .errors import (ConsistencyError, DegenerateInputError, InfeasibleMomentsError,
                     ParseError, ValidationError)
from .eigencount import IntervalQuery, cdf_bound_sweep, eigencount_upper
from .estimators import estimator_report
from .graph import Graph, generate, load_edge_list
from .moments import MomentSequence, load_moments, moments_from_census
from .spectrum import DEFAULT_EIG_CAP, eigenvalues, histogram, spectral_cdf

_ANALYSIS_ERRORS = (DegenerateInputError, InfeasibleMomentsError,
                    ConsistencyError, ValidationError)


def _common_flags(parser: argparse.ArgumentParser, graph_input: bool = True) -> None:
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--tol", type=float, default=1e-6)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int,
                        default=int(os.environ.get("GRAPHMOMENTS_THREADS", "1")))
    parser.add_argument("--moments-file", default=None,
                        help="JSON {n, m, source} file used instead of a graph")
    if graph_input:
        parser.add_argument("path", nargs="?", default=None,
                            help="edge-list file (one 'u v' pair per line)")
        parser.add_argument("--generate", default=None, metavar="KIND:N[:P]",
                            help="synthesize a graph (ring|complete|star|path|erdos_renyi)")
        parser.add_argument("--index-base", type=int, choices=(0, 1), default=0)
        parser.add_argument("--dedup", action="store_true",
                            help="drop duplicate edges and self-loops instead of failing")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphmoments",
        description="moment-based spectral analysis of graphs")
    parser.add_argument("--version", action="version",
                        version=f"graphmoments {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full pipeline: census, moments, bounds, estimators")
    _common_flags(p)
    p.add_argument("--no-spectrum", action="store_true")
    p.add_argument("--eig-cap", type=int, default=DEFAULT_EIG_CAP)

    p = sub.add_parser("census", help="per-node degree/triangle/quadrangle/pentagon counts")
    _common_flags(p)

    p = sub.add_parser("moments", help="spectral moments from structure")
    _common_flags(p)

    p = sub.add_parser("bounds", help="support bounds on the extreme eigenvalues")
    _common_flags(p)
    p.add_argument("--level", choices=("1", "2", "auto"), default="auto")
    p.add_argument("--bisect", action="store_true",
                   help="force the bisection path instead of the closed form")

    p = sub.add_parser("estimate", help="classical bounds and radius estimators")
    _common_flags(p)

    p = sub.add_parser("eigencount", help="upper bound on eigenvalue fraction in an interval")
    _common_flags(p)
    p.add_argument("--interval", default=None, metavar="A,B")
    p.add_argument("--omega", default="auto", metavar="auto|A,B",
                   help="window containing all eigenvalues (auto = [-d_max, d_max])")
    p.add_argument("--k", type=int, default=5, choices=(2, 3, 4, 5))
    p.add_argument("--sweep", default=None, metavar="LO:STEP:HI",
                   help="bound the spectral CDF on a grid; emits CSV")

    p = sub.add_parser("spectrum", help="dense eigenvalues (desk-scale ground truth)")
    _common_flags(p)
    p.add_argument("--bins", type=int, default=0,
                   help="also emit an eigenvalue histogram with this many bins")
    p.add_argument("--eig-cap", type=int, default=DEFAULT_EIG_CAP)

    p = sub.add_parser("sample-ego", help="batch ego-subgraph experiment with correlations")
    _common_flags(p)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--eig-cap", type=int, default=DEFAULT_EIG_CAP)

    p = sub.add_parser("report", help="flatten analysis JSON reports into one CSV table")
    p.add_argument("reports", nargs="*", help="JSON files produced by `analyze`")
    return parser


def _load_graph(args) -> Graph:
    if args.generate is not None:
        parts = args.generate.split(":")
        if len(parts) not in (2, 3):
            raise ParseError(f"bad --generate spec {args.generate!r}, want KIND:N[:P]")
        kind = parts[0]
        try:
            n = int(parts[1])
            p = float(parts[2]) if len(parts) == 3 else None
        except ValueError:
            raise ParseError(f"bad --generate spec {args.generate!r}") from None
        return generate(kind, n, p=p, seed=args.seed)
    if args.path is None:
        raise ParseError("no graph given: pass an edge-list path or --generate")
    with open(args.path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh, index_base=args.index_base,
                              allow_duplicates=args.dedup)


def _load_any_moments(args) -> MomentSequence:
    if args.moments_file is not None:
        return load_moments(args.moments_file)
    g = _load_graph(args)
    return moments_from_census(node_census(g))


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(payload) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True))


def _config(args, keys=("tol", "seed", "threads", "format")) -> dict:
    return {k: getattr(args, k) for k in keys if hasattr(args, k)}


def _cmd_analyze(args) -> int:
    if args.moments_file is not None:
        ms = load_moments(args.moments_file)
        report = analyze_moments(ms, source=args.moments_file, tol=args.tol,
                                 config=_config(args))
    else:
        g = _load_graph(args)
        source = args.path or args.generate or ""
        report = analyze_graph(g, source=source, tol=args.tol,
                               with_spectrum=not args.no_spectrum,
                               eig_cap=args.eig_cap, config=_config(args))
    if args.format == "csv":
        _emit(report_csv([report]))
    else:
        _emit(report.to_json())
    return 0


def _cmd_census(args) -> int:
    g = _load_graph(args)
    c = node_census(g)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["node", "d", "t", "q", "p"])
        for i in range(c.n):
            writer.writerow([i, int(c.degree[i]), int(c.triangles[i]),
                             int(c.quadrangles[i]), int(c.pentagons[i])])
        _emit(buf.getvalue())
    else:
        agg = aggregates(c)
        _emit_json({
            "nodes": [{"node": i, "d": int(c.degree[i]), "t": int(c.triangles[i]),
                       "q": int(c.quadrangles[i]), "p": int(c.pentagons[i])}
                      for i in range(c.n)],
            "aggregates": {"n": agg.n, "edges": agg.edges, "triangles": agg.triangles,
                           "quadrangles": agg.quadrangles, "pentagons": agg.pentagons,
                           "degree_square_sum": agg.degree_square_sum,
                           "degree_triangle_sum": agg.degree_triangle_sum},
        })
    return 0


def _cmd_moments(args) -> int:
    ms = _load_any_moments(args)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "source"] + [f"m{k}" for k in range(len(ms.values))])
        writer.writerow([ms.n, ms.source] + [repr(v) for v in ms.values])
        _emit(buf.getvalue())
    else:
        _emit_json(ms.to_dict())
    return 0


def _cmd_bounds(args) -> int:
    ms = _load_any_moments(args)
    levels = [1, 2] if args.level == "auto" else [int(args.level)]
    out = {}
    for level in levels:
        if 2 * level + 1 > ms.order:
            out[str(level)] = {"error": f"needs moments up to order {2 * level + 1}"}
            continue
        if args.bisect:
            b = bounds_bisect(ms, level, tol=args.tol)
        elif level == 1:
            b = bounds_s1(ms)
        else:
            b = bounds_s2(ms, tol=args.tol)
        out[str(level)] = {"level": b.level, "lower": b.lower, "upper": b.upper,
                           "method": b.method, "residual": b.residual}
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["level", "lower", "upper", "method"])
        for level in sorted(out):
            rec = out[level]
            if "error" in rec:
                writer.writerow([level, "", "", rec["error"]])
            else:
                writer.writerow([level, repr(rec["lower"]), repr(rec["upper"]),
                                 rec["method"]])
        _emit(buf.getvalue())
    else:
        _emit_json(out)
    return 0


def _cmd_estimate(args) -> int:
    g = _load_graph(args)
    est = estimator_report(g, aggregates(node_census(g)))
    _emit_json({
        "edge_degree_bound": est.edge_degree_bound,
        "neighbor_degree_bound": est.neighbor_degree_bound,
        "chung_lu": est.chung_lu,
        "dominance": est.dominance,
        "dominance_simple": est.dominance_simple,
    })
    return 0


def _parse_interval(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"bad interval {text!r}, want A,B")
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise ParseError(f"bad interval {text!r}") from None
    return a, b


def _cmd_eigencount(args) -> int:
    graph = None
    if args.moments_file is not None:
        ms = load_moments(args.moments_file)
    else:
        graph = _load_graph(args)
        ms = moments_from_census(node_census(graph))
    if args.omega == "auto":
        if graph is None:
            raise ParseError("--omega auto needs a graph; give --omega A,B with a moments file")
        dmax = float(graph.degrees().max(initial=0))
        if dmax <= 0:
            raise DegenerateInputError("edgeless graph: eigenvalue window is a point")
        window = (-dmax, dmax)
    else:
        window = _parse_interval(args.omega)
    k = min(args.k, ms.order)
    if args.sweep is not None:
        parts = args.sweep.split(":")
        if len(parts) != 3:
            raise ParseError(f"bad --sweep {args.sweep!r}, want LO:STEP:HI")
        lo, step, hi = (float(p) for p in parts)
        if step <= 0:
            raise ParseError("sweep step must be positive")
        alphas = np.arange(lo, hi + 0.5 * step, step)
        points = cdf_bound_sweep(ms, alphas, window, k, tol=min(args.tol, 1e-8))
        exact = None
        if graph is not None and graph.n <= DEFAULT_EIG_CAP:
            exact = eigenvalues(graph)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alpha", "bound", "exact_cdf"])
        for alpha, bound in points:
            row = [repr(float(alpha)), repr(float(bound))]
            row.append(repr(spectral_cdf(exact, alpha)) if exact is not None else "")
            writer.writerow(row)
        _emit(buf.getvalue())
        return 0
    if args.interval is None:
        raise ParseError("give --interval A,B or --sweep LO:STEP:HI")
    raw = _parse_interval(args.interval)
    # the measure carries no mass outside the window, so clamping the
    # requested interval to it changes nothing about the answer
    target = (max(raw[0], window[0]), min(raw[1], window[1]))
    if target[0] > target[1]:
        _emit_json({"bound": 0.0, "coefficients": [], "status": "optimal",
                    "note": "interval lies outside the eigenvalue window"})
        return 0
    res = eigencount_upper(ms, IntervalQuery(target=target, window=window, order=k),
                           tol=min(args.tol, 1e-8))
    _emit_json({
        "bound": res.bound,
        "coefficients": list(res.coefficients),
        "target_margin": res.target_margin,
        "window_margin": res.window_margin,
        "status": res.status,
        "note": res.note,
    })
    return 0


def _cmd_spectrum(args) -> int:
    g = _load_graph(args)
    summary = eigenvalues(g, cap=args.eig_cap)
    if args.bins > 0 and args.format == "csv":
        edges, counts = histogram(summary, args.bins)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["bin_lo", "bin_hi", "count"])
        for i in range(len(counts)):
            writer.writerow([repr(float(edges[i])), repr(float(edges[i + 1])),
                             int(counts[i])])
        _emit(buf.getvalue())
        return 0
    payload = {
        "n": summary.n,
        "rho": summary.spectral_radius,
        "lambda_min": summary.min_eigenvalue,
        "eigenvalues": [float(v) for v in summary.eigenvalues],
        "moments": list(summary.moments.values),
    }
    if args.bins > 0:
        edges, counts = histogram(summary, args.bins)
        payload["histogram"] = {"edges": [float(v) for v in edges],
                                "counts": [int(v) for v in counts]}
    _emit_json(payload)
    return 0


def _cmd_sample_ego(args) -> int:
    g = _load_graph(args)
    result = sample_ego(g, count=args.count, radius=args.radius, seed=args.seed,
                        threads=args.threads, tol=args.tol, eig_cap=args.eig_cap)
    if args.format == "csv":
        _emit(ego_csv(result))
    else:
        _emit_json(result.to_dict())
    return 0


def _cmd_report(args) -> int:
    reports = []
    for path in args.reports:
        with open(path, "r", encoding="utf-8") as fh:
            reports.append(AnalysisReport.from_dict(json.load(fh)))
    _emit(report_csv(reports))
    return 0


_HANDLERS = {
    "analyze": _cmd_analyze,
    "census": _cmd_census,
    "moments": _cmd_moments,
    "bounds": _cmd_bounds,
    "estimate": _cmd_estimate,
    "eigencount": _cmd_eigencount,
    "spectrum": _cmd_spectrum,
    "sample-ego": _cmd_sample_ego,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (OSError, ParseError, json.JSONDecodeError) as exc:
        print(f"graphmoments: {exc}", file=sys.stderr)
        return 2
    except _ANALYSIS_ERRORS as exc:
        print(f"graphmoments [{args.command}]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
