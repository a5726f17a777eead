"""End-to-end analysis pipeline, batch ego-subgraph experiments, and reports.

A report bundles what the individual modules computed for one graph (or one
externally supplied moment sequence): totals, moments, feasibility, support
bounds, estimators, and optionally the exact spectrum.  Reports serialize to
versioned JSON and to flat CSV rows; identical inputs and flags produce
byte-identical output, so no wall-clock fields appear anywhere.
"""

from __future__ import annotations

import csv
import io
import json
import random
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import __version__
from .bounds import SupportBounds, bounds_s1, bounds_s2
from .census import CensusAggregates, aggregates, node_census
from .errors import DegenerateInputError, InfeasibleMomentsError, ParseError
from .estimators import EstimatorReport, estimator_report
from .graph import EgoSpec, Graph, ego_subgraph
from .hankel import is_feasible_hamburger, strong_duality_holds
from .moments import MomentSequence, moments_from_census
from .spectrum import DEFAULT_EIG_CAP, eigenvalues

SCHEMA_VERSION = 1

REPORT_COLUMNS = [
    "source", "n", "e", "m2", "m3", "m4", "m5",
    "alpha1", "beta1", "alpha2", "beta2",
    "edge_degree_bound", "neighbor_degree_bound", "chung_lu",
    "dominance", "dominance_simple", "rho", "note",
]

EGO_COLUMNS = [
    "root", "n", "e", "rho", "beta1", "beta2",
    "chung_lu", "dominance", "dominance_simple", "note",
]


@dataclass
class AnalysisReport:
    """One graph's (or moment sequence's) full analysis, JSON-serializable."""

    graph_meta: dict
    moments: dict = field(default_factory=dict)
    aggregates: dict | None = None
    feasibility: dict | None = None
    bounds: dict = field(default_factory=dict)
    estimators: dict | None = None
    spectrum: dict | None = None
    eigencount: list | None = None
    note: str = ""
    provenance: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "graph_meta": self.graph_meta,
            "moments": self.moments,
            "aggregates": self.aggregates,
            "feasibility": self.feasibility,
            "bounds": self.bounds,
            "estimators": self.estimators,
            "spectrum": self.spectrum,
            "eigencount": self.eigencount,
            "note": self.note,
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        known = {f for f in cls.__dataclass_fields__}  # unknown fields ignored
        kwargs = {k: v for k, v in data.items() if k in known}
        if "graph_meta" not in kwargs:
            raise ParseError("report record lacks graph_meta")
        return cls(**kwargs)

    def to_json(self) -> str:
        return json.dumps(_sanitize(self.to_dict()), indent=2, sort_keys=True)


def _sanitize(obj):
    """Make a structure strictly JSON-safe: numpy scalars to Python, NaN to None."""
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return None if v != v else v
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    return obj


def _bounds_dict(b: SupportBounds) -> dict:
    d = asdict(b)
    d["bracket"] = list(b.bracket) if b.bracket is not None else None
    return d


def _provenance(config: dict | None = None) -> dict:
    return {
        "package": f"graphmoments {__version__}",
        "schema_version": SCHEMA_VERSION,
        "config": config or {},
        "window_note": ("eigencount window is compact (default [-d_max, d_max]), "
                        "not the whole real line"),
    }


def compute_bounds(ms: MomentSequence, tol: float = 1e-6) -> dict:
    """Level-1 and level-2 support bounds, with degeneracies recorded not raised."""
    out: dict = {}
    try:
        out["1"] = _bounds_dict(bounds_s1(ms))
    except (DegenerateInputError, InfeasibleMomentsError) as exc:
        out["1"] = {"error": str(exc)}
    if ms.order >= 5:
        try:
            out["2"] = _bounds_dict(bounds_s2(ms, tol=tol))
        except (DegenerateInputError, InfeasibleMomentsError) as exc:
            out["2"] = {"error": str(exc)}
    return out


def analyze_moments(ms: MomentSequence, source: str = "", tol: float = 1e-6,
                    config: dict | None = None) -> AnalysisReport:
    """Moments-only pipeline: feasibility, duality diagnostics, support bounds."""
    s_max = ms.order // 2
    feas = is_feasible_hamburger(ms, s_max)
    report = AnalysisReport(
        graph_meta={"n": ms.n, "e": None, "source": source},
        moments={ms.source: {"n": ms.n, "m": list(ms.values), "source": ms.source}},
        feasibility={
            "level": s_max,
            "feasible": bool(feas.feasible),
            "min_eigenvalue": feas.min_eigenvalue,
            "strong_duality": bool(strong_duality_holds(ms, s_max)),
        },
        bounds=compute_bounds(ms, tol=tol),
        provenance=_provenance(config),
    )
    return report


def analyze_graph(g: Graph, source: str = "", tol: float = 1e-6,
                  with_spectrum: bool = True, eig_cap: int = DEFAULT_EIG_CAP,
                  interval_queries=None, config: dict | None = None) -> AnalysisReport:
    """Full pipeline: census, moments, feasibility, bounds, estimators, spectrum.

    The spectrum is skipped (with a note) above ``eig_cap`` nodes; every
    other stage runs on structure alone.  ``interval_queries`` optionally
    adds eigenvalue-count bounds for a list of :class:`IntervalQuery`.
    """
    census = node_census(g)
    agg = aggregates(census)
    note = ""
    try:
        ms = moments_from_census(census)
        moments_block = {"census": {"n": ms.n, "m": list(ms.values), "source": "census"}}
        feas = is_feasible_hamburger(ms, 2)
        feasibility = {
            "level": 2,
            "feasible": bool(feas.feasible),
            "min_eigenvalue": feas.min_eigenvalue,
            "strong_duality": bool(strong_duality_holds(ms, 2)),
        }
        bounds = compute_bounds(ms, tol=tol)
    except DegenerateInputError as exc:
        moments_block, feasibility, bounds = {}, None, {}
        note = f"degenerate-input: {exc}"
    try:
        est = asdict(estimator_report(g, agg))
    except DegenerateInputError as exc:
        est = None
        note = note or f"degenerate-input: {exc}"
    spectrum_block = None
    if with_spectrum and g.n > 0:
        if g.n <= eig_cap:
            summary = eigenvalues(g, cap=eig_cap)
            spectrum_block = {
                "rho": summary.spectral_radius,
                "lambda_min": summary.min_eigenvalue,
                "moments": list(summary.moments.values),
            }
        else:
            spectrum_block = {"skipped": f"n={g.n} above cap {eig_cap}"}
    eigencount_block = None
    if interval_queries:
        from .eigencount import eigencount_upper
        ms_q = moments_from_census(census)
        eigencount_block = []
        for query in interval_queries:
            res = eigencount_upper(ms_q, query, tol=min(tol, 1e-8))
            eigencount_block.append({"target": list(query.target),
                                     "window": list(query.window),
                                     "order": query.order,
                                     "bound": res.bound,
                                     "status": res.status})
    return AnalysisReport(
        graph_meta={"n": g.n, "e": g.edge_count, "source": source},
        moments=moments_block,
        aggregates={
            "n": agg.n, "edges": agg.edges, "triangles": agg.triangles,
            "quadrangles": agg.quadrangles, "pentagons": agg.pentagons,
            "degree_square_sum": agg.degree_square_sum,
            "degree_triangle_sum": agg.degree_triangle_sum,
        },
        feasibility=feasibility,
        bounds=bounds,
        estimators=est,
        spectrum=spectrum_block,
        eigencount=eigencount_block,
        note=note,
        provenance=_provenance(config),
    )


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float | None:
    """Pearson correlation over pairs where both values are present."""
    pairs = [(x, y) for x, y in zip(xs, ys) if x is not None and y is not None]
    if len(pairs) < 2:
        return None
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    if a.std() == 0 or b.std() == 0:
        return None
    return float(np.corrcoef(a, b)[0, 1])


@dataclass
class EgoBatchResult:
    rows: list[dict]
    correlations: dict
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return _sanitize({
            "schema_version": SCHEMA_VERSION,
            "rows": self.rows,
            "correlations": self.correlations,
            "warnings": self.warnings,
        })


def _analyze_ego(g: Graph, root: int, radius: int, tol: float,
                 eig_cap: int) -> dict:
    sub, _node_map = ego_subgraph(g, EgoSpec(root=root, radius=radius))
    row: dict = {"root": root, "n": sub.n, "e": sub.edge_count,
                 "rho": None, "beta1": None, "beta2": None, "chung_lu": None,
                 "dominance": None, "dominance_simple": None, "note": ""}
    try:
        census = node_census(sub)
        agg = aggregates(census)
        ms = moments_from_census(census)
        row["beta1"] = bounds_s1(ms).upper
        row["beta2"] = bounds_s2(ms, tol=tol).upper
        est = estimator_report(sub, agg)
        row["chung_lu"] = est.chung_lu
        row["dominance"] = est.dominance
        row["dominance_simple"] = est.dominance_simple
    except (DegenerateInputError, InfeasibleMomentsError) as exc:
        row["note"] = f"degenerate-input: {exc}"
    if 0 < sub.n <= eig_cap:
        row["rho"] = eigenvalues(sub, cap=eig_cap).spectral_radius
    return row


def sample_ego(g: Graph, count: int, radius: int, seed: int,
               threads: int = 1, tol: float = 1e-6,
               eig_cap: int = DEFAULT_EIG_CAP) -> EgoBatchResult:
    """Analyze ego subgraphs around seeded random roots; report correlations.

    Roots are drawn without replacement from one seeded stream, so the whole
    batch is reproducible.  Rows keep input order regardless of worker
    scheduling.  Requesting more roots than nodes caps the count with a
    warning rather than failing.
    """
    if count < 1:
        raise DegenerateInputError(f"need count >= 1, got {count}")
    notes = []
    if count > g.n:
        notes.append(f"count {count} capped to node count {g.n}")
        count = g.n
    rng = random.Random(seed)
    roots = rng.sample(range(g.n), count)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(
                lambda r: _analyze_ego(g, r, radius, tol, eig_cap), roots))
    else:
        rows = [_analyze_ego(g, r, radius, tol, eig_cap) for r in roots]
    rho = [row["rho"] for row in rows]
    correlations = {
        key: pearson(rho, [row[key] for row in rows])
        for key in ("beta1", "beta2", "chung_lu", "dominance", "dominance_simple")
    }
    return EgoBatchResult(rows=rows, correlations=correlations, warnings=notes)


def _field_from_report(report: AnalysisReport, column: str):
    meta = report.graph_meta
    moments = next(iter(report.moments.values()), None) if report.moments else None
    get_bound = lambda lvl, side: (report.bounds.get(lvl, {}) or {}).get(side)
    est = report.estimators or {}
    spec = report.spectrum or {}
    mapping = {
        "source": meta.get("source", ""),
        "n": meta.get("n"),
        "e": meta.get("e"),
        "m2": moments["m"][2] if moments and len(moments["m"]) > 2 else None,
        "m3": moments["m"][3] if moments and len(moments["m"]) > 3 else None,
        "m4": moments["m"][4] if moments and len(moments["m"]) > 4 else None,
        "m5": moments["m"][5] if moments and len(moments["m"]) > 5 else None,
        "alpha1": get_bound("1", "lower"),
        "beta1": get_bound("1", "upper"),
        "alpha2": get_bound("2", "lower"),
        "beta2": get_bound("2", "upper"),
        "edge_degree_bound": est.get("edge_degree_bound"),
        "neighbor_degree_bound": est.get("neighbor_degree_bound"),
        "chung_lu": est.get("chung_lu"),
        "dominance": est.get("dominance"),
        "dominance_simple": est.get("dominance_simple"),
        "rho": spec.get("rho"),
        "note": report.note,
    }
    return mapping[column]


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)  # shortest round-trip decimal
    return str(value)


def report_csv(reports: Sequence[AnalysisReport]) -> str:
    """Flat CSV table over reports: fixed column order, round-trip floats."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for report in reports:
        writer.writerow([_format_cell(_field_from_report(report, col))
                         for col in REPORT_COLUMNS])
    return buf.getvalue()


def ego_csv(result: EgoBatchResult) -> str:
    """CSV rows for an ego batch, with correlations appended as comment lines."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(EGO_COLUMNS)
    for row in result.rows:
        writer.writerow([_format_cell(row.get(col)) for col in EGO_COLUMNS])
    for key in sorted(result.correlations):
        buf.write(f"# corr_rho_{key},{_format_cell(result.correlations[key])}\n")
    for note in result.warnings:
        buf.write(f"# warning,{note}\n")
    return buf.getvalue()
