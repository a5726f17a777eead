"""Spectral moments by three routes: structural census, closed walks, eigenvalues.

The k-th spectral moment of a graph's adjacency matrix is the average of the
k-th powers of its eigenvalues, which equals the number of closed k-walks
divided by the node count.  Census and walk routes therefore produce exact
integer numerators over n; those are kept alongside the float values because
the downstream Hankel determinants are sensitive to rounding.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .census import CensusAggregates, NodeCensus, walk_diagonal
from .errors import DegenerateInputError, ParseError, ValidationError
from .graph import Graph

SOURCES = ("census", "walks", "spectrum", "external")


@dataclass(frozen=True)
class MomentSequence:
    """Truncated moment sequence (m_0=1, m_1, ..., m_k) of a spectral measure on n atoms.

    ``numerators`` holds the exact integers n*m_k when the source permits
    (census/walk routes); float ``values`` are derived from them in that case.
    """

    n: int
    values: tuple[float, ...]
    source: str = "external"
    numerators: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValidationError(f"unknown moment source {self.source!r}")
        if len(self.values) < 1:
            raise ValidationError("moment sequence needs at least m_0")
        if abs(self.values[0] - 1.0) > 1e-12:
            raise ValidationError(f"m_0 must be 1 (a density), got {self.values[0]}")
        if self.n < 1:
            raise ValidationError(f"atom count must be positive, got {self.n}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.numerators is not None:
            nums = tuple(int(v) for v in self.numerators)
            if len(nums) != len(self.values):
                raise ValidationError("numerators and values length mismatch")
            if nums[0] != self.n:
                raise ValidationError("numerator of m_0 must equal n")
            if len(nums) > 1 and nums[1] != 0:
                raise ValidationError("n*m_1 must be 0 for a graph spectrum")
            if len(nums) > 2 and nums[2] % 2:
                raise ValidationError("n*m_2 must be even (twice the edge count)")
            if len(nums) > 3 and nums[3] % 6:
                raise ValidationError("n*m_3 must be divisible by 6 (six walks per triangle)")
            for num, val in zip(nums, self.values):
                if abs(val * self.n - num) > 1e-9 * (1 + abs(num)):
                    raise ValidationError("numerators disagree with float values")
            object.__setattr__(self, "numerators", nums)

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def require_order(self, k: int) -> None:
        if self.order < k:
            raise ValidationError(f"need moments up to order {k}, have {self.order}")

    def to_dict(self) -> dict:
        return {"n": self.n, "m": list(self.values), "source": self.source}

    @classmethod
    def from_dict(cls, data: dict) -> "MomentSequence":
        try:
            n = int(data["n"])
            m = [float(v) for v in data["m"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad moment record: {exc}") from None
        source = data.get("source", "external")
        if source not in SOURCES:
            source = "external"
        return cls(n=n, values=tuple(m), source=source)


def load_moments(path: str) -> MomentSequence:
    with open(path, "r", encoding="utf-8") as fh:
        return MomentSequence.from_dict(json.load(fh))


def moments_from_census(c: NodeCensus) -> MomentSequence:
    """Moments m_1..m_5 from per-node counts.

    m_2 averages degrees, m_3 counts each triangle six times, m_4 adds
    quadrangle traversals to the degree-only walk shapes, and m_5 combines
    pentagons with triangle-degree coupling:

        n*m_4 = sum_i 2*q_i + 2*d_i*(d_i - 1) + d_i
        n*m_5 = sum_i 2*p_i + 10*t_i*d_i - 10*t_i
    """
    if c.n == 0:
        raise DegenerateInputError("moments are undefined for the empty graph")
    d = c.degree.astype(object)
    t = c.triangles.astype(object)
    q = c.quadrangles.astype(object)
    p = c.pentagons.astype(object)
    num1 = 0
    num2 = int(np.sum(d))
    num3 = int(np.sum(2 * t))
    num4 = int(np.sum(2 * q + 2 * d * (d - 1) + d))
    num5 = int(np.sum(2 * p + 10 * t * d - 10 * t))
    nums = (c.n, num1, num2, num3, num4, num5)
    values = tuple(num / c.n for num in nums)
    return MomentSequence(n=c.n, values=(1.0,) + values[1:], source="census",
                          numerators=nums)


def moments_from_aggregates(a: CensusAggregates) -> MomentSequence:
    """Moments m_1..m_5 from graph totals only.

        m_2 = 2e/n      m_3 = 6*triangles/n
        m_4 = (8*quadrangles + 2*degree_square_sum - 2e)/n
        m_5 = (10*pentagons + 10*degree_triangle_sum - 30*triangles)/n

    Totals may be floats (e.g. published rounded averages); exact integer
    numerators are attached only when every total is integral.
    """
    if a.n == 0:
        raise DegenerateInputError("moments are undefined for the empty graph")
    fields = (a.edges, a.triangles, a.quadrangles, a.pentagons,
              a.degree_square_sum, a.degree_triangle_sum)
    exact = all(float(f).is_integer() for f in fields)
    if exact:
        e, tri, quad, pent, w2, cdt = (int(f) for f in fields)
        nums = (a.n, 0, 2 * e, 6 * tri, 8 * quad + 2 * w2 - 2 * e,
                10 * pent + 10 * cdt - 30 * tri)
        values = (1.0,) + tuple(num / a.n for num in nums[1:])
        return MomentSequence(n=a.n, values=values, source="census", numerators=nums)
    m2 = 2.0 * a.edges / a.n
    m3 = 6.0 * a.triangles / a.n
    m4 = (8.0 * a.quadrangles + 2.0 * a.degree_square_sum - 2.0 * a.edges) / a.n
    m5 = (10.0 * a.pentagons + 10.0 * a.degree_triangle_sum - 30.0 * a.triangles) / a.n
    return MomentSequence(n=a.n, values=(1.0, 0.0, m2, m3, m4, m5), source="external")


def moments_from_walks(g: Graph, kmax: int = 5) -> MomentSequence:
    """Moments m_1..m_kmax as per-node closed-walk counts averaged over the graph."""
    if g.n == 0:
        raise DegenerateInputError("moments are undefined for the empty graph")
    if not (1 <= kmax <= 5):
        raise ValidationError(f"kmax must be in 1..5, got {kmax}")
    nums = [g.n, 0]
    for k in range(2, kmax + 1):
        nums.append(int(walk_diagonal(g, k).sum()))
    values = (1.0,) + tuple(num / g.n for num in nums[1:])
    return MomentSequence(n=g.n, values=values, source="walks", numerators=tuple(nums))


def moments_from_spectrum(eigs: Sequence[float], kmax: int = 5) -> MomentSequence:
    """Power-sum moments of an explicit eigenvalue list.

    Terms are accumulated largest magnitude first with exact (fsum)
    summation, so cancellation between large opposite-sign powers does not
    contaminate the small moments of near-bipartite spectra.
    """
    arr = np.asarray(eigs, dtype=float)
    if arr.size == 0:
        raise DegenerateInputError("need at least one eigenvalue")
    ordered = arr[np.argsort(-np.abs(arr), kind="stable")]
    values = [1.0]
    for k in range(1, kmax + 1):
        values.append(math.fsum((ordered ** k).tolist()) / arr.size)
    return MomentSequence(n=arr.size, values=tuple(values), source="spectrum")
