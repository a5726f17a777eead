"""Undirected simple graphs: construction, edge-list I/O, generators, ego subgraphs.

Graphs are stored in compressed sorted-adjacency form (CSR-style index arrays)
so that neighbor intersections run in time linear in the combined degree.
Instances are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .errors import ParseError, ValidationError

GENERATOR_KINDS = ("ring", "complete", "star", "path", "erdos_renyi")


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph.

    ``indptr``/``indices`` follow the usual compressed-row convention: the
    neighbors of node ``i`` are ``indices[indptr[i]:indptr[i+1]]``, sorted
    ascending.  Every edge appears in both endpoint rows; self-loops and
    duplicate entries are rejected at construction time.
    """

    indptr: np.ndarray
    indices: np.ndarray

    def __post_init__(self):
        indptr = np.ascontiguousarray(self.indptr, dtype=np.int64)
        indices = np.ascontiguousarray(self.indices, dtype=np.int64)
        indptr.setflags(write=False)
        indices.setflags(write=False)
        object.__setattr__(self, "indptr", indptr)
        object.__setattr__(self, "indices", indices)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def has_edge(self, i: int, j: int) -> bool:
        row = self.neighbors(i)
        pos = np.searchsorted(row, j)
        return pos < len(row) and row[pos] == j

    def edges(self) -> Iterable[tuple[int, int]]:
        """Each undirected edge once, as (i, j) with i < j, in row order."""
        for i in range(self.n):
            for j in self.neighbors(i):
                if j > i:
                    yield i, int(j)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   allow_duplicates: bool = False) -> "Graph":
        """Build a graph on nodes 0..n-1 from an iterable of endpoint pairs.

        With ``allow_duplicates`` set, repeated edges and self-loops are
        silently dropped; otherwise they raise :class:`ValidationError`.
        """
        if n < 0:
            raise ValidationError(f"node count must be nonnegative, got {n}")
        rows: list[list[int]] = [[] for _ in range(n)]
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                if allow_duplicates:
                    continue
                raise ValidationError(f"self-loop at node {u} (pass allow_duplicates to drop)")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                if allow_duplicates:
                    continue
                raise ValidationError(f"duplicate edge {key} (pass allow_duplicates to drop)")
            seen.add(key)
            rows[u].append(v)
            rows[v].append(u)
        indptr = np.zeros(n + 1, dtype=np.int64)
        for i, row in enumerate(rows):
            row.sort()
            indptr[i + 1] = indptr[i] + len(row)
        indices = np.empty(indptr[-1], dtype=np.int64)
        for i, row in enumerate(rows):
            indices[indptr[i]:indptr[i + 1]] = row
        return cls(indptr, indices)

    def validate(self) -> None:
        """Full re-validation pass: sortedness, no loops, symmetry, degree sum."""
        if len(self.indptr) < 1 or self.indptr[0] != 0:
            raise ValidationError("indptr must start at 0")
        if np.any(np.diff(self.indptr) < 0):
            raise ValidationError("indptr must be nondecreasing")
        n = self.n
        if len(self.indices) and (self.indices.min() < 0 or self.indices.max() >= n):
            raise ValidationError("neighbor index out of range")
        for i in range(n):
            row = self.neighbors(i)
            if np.any(np.diff(row) <= 0):
                raise ValidationError(f"adjacency row {i} not strictly increasing")
            if np.any(row == i):
                raise ValidationError(f"self-loop at node {i}")
            for j in row:
                if not self.has_edge(int(j), i):
                    raise ValidationError(f"asymmetric edge ({i}, {j})")
        if len(self.indices) % 2 != 0:
            raise ValidationError("odd number of directed edge slots")


@dataclass(frozen=True)
class EgoSpec:
    """Root node plus hop radius for neighborhood extraction."""

    root: int
    radius: int

    def __post_init__(self):
        if self.radius < 1:
            raise ValidationError(f"radius must be >= 1, got {self.radius}")


def load_edge_list(source: str | TextIO, index_base: int = 0,
                   allow_duplicates: bool = False) -> Graph:
    """Parse whitespace-delimited "u v" lines into a :class:`Graph`.

    Lines starting with ``#`` and blank lines are ignored.  ``index_base=1``
    re-bases one-indexed files to 0..n-1.  The node count is the largest
    index seen plus one (after re-basing).
    """
    if index_base not in (0, 1):
        raise ValidationError(f"index_base must be 0 or 1, got {index_base}")
    lines = source.splitlines() if isinstance(source, str) else source
    edges: list[tuple[int, int]] = []
    max_idx = -1
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two integer tokens, got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer token in {line!r}") from None
        u -= index_base
        v -= index_base
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative node index after re-basing")
        edges.append((u, v))
        max_idx = max(max_idx, u, v)
    return Graph.from_edges(max_idx + 1, edges, allow_duplicates=allow_duplicates)


def generate(kind: str, n: int, p: float | None = None,
             seed: int | None = None) -> Graph:
    """Synthesize a named graph family; deterministic for fixed arguments.

    ``erdos_renyi`` requires both ``p`` in [0, 1] and a ``seed``; every edge
    on ordered pairs i < j is drawn independently from one seeded stream, so
    the same inputs always give the same edge set.
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    if kind == "ring":
        edges = [(i, (i + 1) % n) for i in range(n)]
        return Graph.from_edges(n, edges, allow_duplicates=True)
    if kind == "complete":
        return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    if kind == "star":
        return Graph.from_edges(n, [(0, i) for i in range(1, n)])
    if kind == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "erdos_renyi":
        if p is None or not (0.0 <= p <= 1.0):
            raise ValidationError(f"erdos_renyi needs edge probability in [0, 1], got {p}")
        if seed is None:
            raise ValidationError("erdos_renyi needs a seed")
        rng = random.Random(seed)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        return Graph.from_edges(n, edges)
    raise ValidationError(f"unknown graph kind {kind!r}; choose from {GENERATOR_KINDS}")


def bfs_distances(g: Graph, root: int) -> np.ndarray:
    """Hop distance from root to every node; -1 where unreachable."""
    if not (0 <= root < g.n):
        raise ValidationError(f"root {root} out of range for n={g.n}")
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in g.neighbors(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(int(v))
    return dist


def ego_subgraph(g: Graph, spec: EgoSpec) -> tuple[Graph, list[int]]:
    """Induced subgraph on all nodes within ``spec.radius`` hops of the root.

    Returns the re-indexed subgraph and the list of original node indices in
    BFS discovery order (root first, neighbors scanned in ascending order),
    which doubles as the new-to-original index map.
    """
    if not (0 <= spec.root < g.n):
        raise ValidationError(f"root {spec.root} out of range for n={g.n}")
    order = [spec.root]
    depth = {spec.root: 0}
    queue = deque([spec.root])
    while queue:
        u = queue.popleft()
        if depth[u] == spec.radius:
            continue
        for v in g.neighbors(u):
            v = int(v)
            if v not in depth:
                depth[v] = depth[u] + 1
                order.append(v)
                queue.append(v)
    relabel = {orig: new for new, orig in enumerate(order)}
    edges = []
    for orig in order:
        for j in g.neighbors(orig):
            j = int(j)
            if j in relabel and relabel[j] > relabel[orig]:
                edges.append((relabel[orig], relabel[j]))
    return Graph.from_edges(len(order), edges), order
