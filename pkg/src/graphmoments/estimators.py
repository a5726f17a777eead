"""Closed-form spectral-radius estimators and classical degree-based bounds.

Two families live here.  The classical bounds are proven one-sided: they
never undershoot the spectral radius.  The estimators (Chung-Lu degree ratio
and the fifth-moment dominance pair) track the radius closely on clustered
networks but carry no guarantee in either direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .census import CensusAggregates
from .errors import DegenerateInputError
from .graph import Graph


@dataclass(frozen=True)
class EstimatorReport:
    """All closed-form radius estimates for one graph.

    ``edge_degree_bound`` and ``neighbor_degree_bound`` are true upper
    bounds on the radius.  ``chung_lu`` is the degree-ratio estimator (the
    almost-sure radius limit for random graphs with the same expected
    degrees).  The dominance estimates are fifth-root formulas driven by
    pentagon counts and degree-triangle coupling; ``None`` marks an
    undefined value (nonpositive radicand, e.g. on sparse cycle-free
    graphs).  ``dominance_simple`` drops the triangle correction and is
    always at least ``dominance`` when both exist.  ``inputs_summary``
    records the totals the estimates were computed from.
    """

    edge_degree_bound: float
    neighbor_degree_bound: float
    chung_lu: float
    dominance: float | None
    dominance_simple: float | None
    inputs_summary: dict


def classical_bounds(g: Graph) -> tuple[float, float]:
    """Degree-based upper bounds on the spectral radius.

    The first uses only edge count and extreme degrees:

        u1 = sqrt(2e - (n-1)*d_min + (d_min - 1)*d_max).

    The second couples each node's degree with its mean neighbor degree and
    takes the worst edge endpoint:

        u2 = max over nodes v on an edge of sqrt(d_v * m_v),

    with m_v the average degree over v's neighbors (so d_v * m_v is just the
    sum of neighbor degrees).  Tight on regular graphs and on stars.
    """
    if g.edge_count == 0:
        raise DegenerateInputError("bounds are undefined for edgeless graphs")
    d = g.degrees()
    n = g.n
    e = g.edge_count
    u1 = math.sqrt(2 * e - (n - 1) * int(d.min()) + (int(d.min()) - 1) * int(d.max()))
    best = 0.0
    for v in range(n):
        if d[v] == 0:
            continue
        best = max(best, float(d[g.neighbors(v)].sum()))
    return u1, math.sqrt(best)


def chung_lu_estimator(degrees) -> float:
    """Degree second-moment ratio: sum(d^2) / sum(d).

    Equals the radius exactly on regular graphs and converges to it almost
    surely on random graphs with the given expected degree sequence.
    """
    d = np.asarray(degrees, dtype=float)
    total = float(d.sum())
    if total <= 0:
        raise DegenerateInputError("estimator undefined for an all-zero degree sequence")
    return float((d * d).sum()) / total


def social_estimators(agg: CensusAggregates) -> tuple[float | None, float | None]:
    """Fifth-moment dominance estimates of the spectral radius.

    When one eigenvalue dominates the spectrum, the fifth power sum is close
    to that eigenvalue's fifth power, giving

        estimate   = (10*pentagons + 10*degree_triangle_sum - 30*triangles)^(1/5)
        simplified = (10*pentagons + 10*degree_triangle_sum)^(1/5)

    over graph totals (the radicand is exactly n times the fifth spectral
    moment).  The simplified form drops the triangle term, which is
    empirically negligible on social graphs.  Nonpositive radicands yield
    ``None``: the estimate is undefined there, not zero.
    """
    radicand = 10.0 * agg.pentagons + 10.0 * agg.degree_triangle_sum - 30.0 * agg.triangles
    radicand_simple = 10.0 * agg.pentagons + 10.0 * agg.degree_triangle_sum
    dominance = radicand ** 0.2 if radicand > 0 else None
    simple = radicand_simple ** 0.2 if radicand_simple > 0 else None
    return dominance, simple


def estimator_report(g: Graph, agg: CensusAggregates) -> EstimatorReport:
    u1, u2 = classical_bounds(g)
    dom, dom_simple = social_estimators(agg)
    return EstimatorReport(
        edge_degree_bound=u1,
        neighbor_degree_bound=u2,
        chung_lu=chung_lu_estimator(g.degrees()),
        dominance=dom,
        dominance_simple=dom_simple,
        inputs_summary={"n": agg.n, "edges": agg.edges, "triangles": agg.triangles,
                        "pentagons": agg.pentagons,
                        "degree_square_sum": agg.degree_square_sum,
                        "degree_triangle_sum": agg.degree_triangle_sum},
    )
