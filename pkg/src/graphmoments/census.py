"""Per-node structural census: degrees, triangles, quadrangles, pentagons.

Triangles come from sorted-adjacency intersections.  Quadrangle and pentagon
counts are recovered from closed-walk diagonals: the number of closed k-walks
starting at a node splits into walk types by the shape of the traversed
subgraph, and subtracting the degenerate types (out-and-back excursions,
triangle traversals with detours) leaves twice the cycle count.  The
``brute_force_cycles`` enumerator exists to validate that decomposition
exactly and plays no part in the fast path.

All counts are exact 64-bit integers; a density guard refuses graphs whose
walk counts could overflow.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, ValidationError
from .graph import Graph

# closed k-walk counts are bounded by d_max**k; keep d_max**5 < 2**63
_MAX_DEGREE = 5000


@dataclass(frozen=True)
class NodeCensus:
    """Per-node counts: degree and the number of 3-, 4-, 5-cycles touching each node."""

    degree: np.ndarray
    triangles: np.ndarray
    quadrangles: np.ndarray
    pentagons: np.ndarray

    @property
    def n(self) -> int:
        return len(self.degree)


@dataclass(frozen=True)
class CensusAggregates:
    """Graph-level totals derived from a census.

    ``degree_triangle_sum`` couples each node's degree with its triangle
    count (sum of degree*triangles over nodes); it is the correlation-like
    quantity that feeds the fifth spectral moment.  Fields are floats so
    that published, rounded totals can be carried through the same type.
    """

    n: int
    edges: float
    triangles: float
    quadrangles: float
    pentagons: float
    degree_square_sum: float
    degree_triangle_sum: float


def _row_sums(values: np.ndarray, indptr: np.ndarray) -> np.ndarray:
    """Sum `values` (aligned with a CSR indices array) over each row."""
    csum = np.concatenate(([0], np.cumsum(values, dtype=np.int64)))
    return csum[indptr[1:]] - csum[indptr[:-1]]


def edge_triangle_counts(g: Graph) -> np.ndarray:
    """Common-neighbor count for every directed edge slot, aligned with ``g.indices``.

    Entry at slot (i -> j) is |N(i) ∩ N(j)|, the number of triangles through
    edge {i, j}.  Computed once per undirected edge by sorted intersection
    and mirrored to both slots.
    """
    indptr, indices = g.indptr, g.indices
    out = np.zeros(len(indices), dtype=np.int64)
    for i in range(g.n):
        row_i = indices[indptr[i]:indptr[i + 1]]
        for slot in range(indptr[i], indptr[i + 1]):
            j = indices[slot]
            if j < i:
                continue
            row_j = indices[indptr[j]:indptr[j + 1]]
            c = len(np.intersect1d(row_i, row_j, assume_unique=True))
            out[slot] = c
            back = indptr[j] + np.searchsorted(row_j, i)
            out[back] = c
    return out


def _two_walk_counts(g: Graph, i: int) -> np.ndarray:
    """Number of 2-step walks from node i to every node (row i of the squared adjacency)."""
    indptr, indices = g.indptr, g.indices
    row = indices[indptr[i]:indptr[i + 1]]
    if len(row) == 0:
        return np.zeros(g.n, dtype=np.int64)
    targets = np.concatenate([indices[indptr[j]:indptr[j + 1]] for j in row])
    return np.bincount(targets, minlength=g.n)


def walk_diagonal(g: Graph, k: int) -> np.ndarray:
    """Closed k-walk count starting (and ending) at each node, for k in 2..5.

    Works per node on the 2-step neighborhood: with w2 the vector of 2-walk
    counts from node i, the closed-walk diagonals are d_i (k=2), the sum of
    w2 over neighbors (k=3), the squared norm of w2 (k=4), and the sum of
    w2[j]*w2[l] over adjacent pairs (j, l) (k=5).  No dense matrix power is
    ever formed.
    """
    if k not in (2, 3, 4, 5):
        raise ValidationError(f"walk length must be in 2..5, got {k}")
    d = g.degrees()
    if g.n and int(d.max()) > _MAX_DEGREE:
        raise ValidationError(
            f"max degree {int(d.max())} exceeds the overflow guard ({_MAX_DEGREE})")
    if k == 2:
        return d.astype(np.int64)
    indptr, indices = g.indptr, g.indices
    out = np.zeros(g.n, dtype=np.int64)
    for i in range(g.n):
        if d[i] == 0:
            continue
        w2 = _two_walk_counts(g, i)
        if k == 3:
            out[i] = w2[indices[indptr[i]:indptr[i + 1]]].sum()
        elif k == 4:
            out[i] = np.dot(w2, w2)
        else:
            nz = np.nonzero(w2)[0]
            acc = 0
            for j in nz:
                acc += int(w2[j]) * int(w2[indices[indptr[j]:indptr[j + 1]]].sum())
            out[i] = acc
    return out


def _halve(values: np.ndarray, what: str) -> np.ndarray:
    if np.any(values & 1):
        raise ConsistencyError(f"{what}: walk decomposition produced an odd count")
    if np.any(values < 0):
        raise ConsistencyError(f"{what}: walk decomposition went negative")
    return values >> 1


def node_census(g: Graph) -> NodeCensus:
    """Exact per-node degree, triangle, quadrangle, and pentagon counts.

    Quadrangles through node i satisfy

        2*q_i = walk4_i - d_i*(d_i - 1) - sum_{j~i} (d_j - 1) - d_i,

    subtracting the closed 4-walks that revisit the start or backtrack.
    Pentagons satisfy

        2*p_i = walk5_i - 10*t_i - 4*t_i*(d_i - 2)
                - 2*sum_{j~i} t_ij*(d_j - 2) - 2*sum_{j~i} (t_j - t_ij),

    where t_ij counts triangles on edge {i, j}: the subtracted terms are the
    closed 5-walks that traverse a triangle (in place, with a detour at the
    start node, with a detour at a neighbor) or hang a triangle off an edge
    at the start node.  Both halving steps assert evenness, which catches
    any error in the decomposition immediately.
    """
    d = g.degrees().astype(np.int64)
    if g.n == 0:
        z = np.zeros(0, dtype=np.int64)
        return NodeCensus(z, z.copy(), z.copy(), z.copy())
    if int(d.max()) > _MAX_DEGREE:
        raise ValidationError(
            f"max degree {int(d.max())} exceeds the overflow guard ({_MAX_DEGREE})")

    indptr, indices = g.indptr, g.indices
    tij = edge_triangle_counts(g)
    t2 = _row_sums(tij, indptr)          # 2*t_i: each triangle at i covers two edge slots
    t = _halve(t2, "triangles")

    walk4 = walk_diagonal(g, 4)
    walk5 = walk_diagonal(g, 5)

    nbr_deg_sum = _row_sums(d[indices], indptr)
    q2 = walk4 - d * (d - 1) - (nbr_deg_sum - d) - d
    q = _halve(q2, "quadrangles")

    detour_at_nbr = _row_sums(tij * (d[indices] - 2), indptr)
    pendant_triangle = _row_sums(t[indices] - tij, indptr)
    p2 = walk5 - 10 * t - 4 * t * (d - 2) - 2 * detour_at_nbr - 2 * pendant_triangle
    p = _halve(p2, "pentagons")

    return NodeCensus(d, t, q, p)


def aggregates(c: NodeCensus) -> CensusAggregates:
    """Collapse a census to graph totals, enforcing the divisibility identities.

    Every triangle touches 3 nodes, every quadrangle 4, every pentagon 5, so
    the per-node sums must divide exactly; a remainder means the census is
    inconsistent and is reported as an internal error.
    """
    deg_sum = int(c.degree.sum())
    t_sum = int(c.triangles.sum())
    q_sum = int(c.quadrangles.sum())
    p_sum = int(c.pentagons.sum())
    if deg_sum % 2 or t_sum % 3 or q_sum % 4 or p_sum % 5:
        raise ConsistencyError(
            f"divisibility failure: sums (d={deg_sum}, t={t_sum}, q={q_sum}, p={p_sum})")
    return CensusAggregates(
        n=c.n,
        edges=deg_sum // 2,
        triangles=t_sum // 3,
        quadrangles=q_sum // 4,
        pentagons=p_sum // 5,
        degree_square_sum=int(np.dot(c.degree, c.degree)),
        degree_triangle_sum=int(np.dot(c.degree, c.triangles)),
    )


def brute_force_cycles(g: Graph, k: int, node: int) -> int:
    """Count distinct k-cycles (k in 3..5) through ``node`` by path enumeration.

    Depth-first over simple paths out of ``node``, closing the last step via
    a neighbor-bitmask intersection; each cycle is found once per direction,
    so the raw count is halved.  Independent of the census decomposition by
    construction; intended for small graphs (n up to a few hundred).
    """
    if k not in (3, 4, 5):
        raise ValidationError(f"cycle length must be 3, 4, or 5, got {k}")
    if not (0 <= node < g.n):
        raise ValidationError(f"node {node} out of range for n={g.n}")
    masks = []
    for i in range(g.n):
        m = 0
        for j in g.neighbors(i):
            m |= 1 << int(j)
        masks.append(m)
    nbrs = [list(map(int, g.neighbors(i))) for i in range(g.n)]
    i = node
    total = 0
    if k == 3:
        for a in nbrs[i]:
            total += (masks[a] & masks[i]).bit_count()
    elif k == 4:
        for a in nbrs[i]:
            for b in nbrs[a]:
                if b == i:
                    continue
                total += (masks[b] & masks[i] & ~(1 << a)).bit_count()
    else:
        for a in nbrs[i]:
            bit_a = 1 << a
            for b in nbrs[a]:
                if b == i:
                    continue
                bit_ab = bit_a | (1 << b)
                for c in nbrs[b]:
                    if c == i or c == a:
                        continue
                    total += (masks[c] & masks[i] & ~bit_ab).bit_count()
    if total % 2:
        raise ConsistencyError("directed cycle enumeration returned an odd total")
    return total // 2
