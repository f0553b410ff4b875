"""Pseudo-metrics on weighted graphs: path metrics, intrinsic check, balls."""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from .graph import WeightedGraph, weighted_degree

INTRINSIC_TOL = 1e-12


class VertexMetric:
    """A pseudo-metric on the vertices of a finite realization.

    Either a shortest-path metric built from per-edge lengths (distances
    computed per source on demand and memoized), or an explicit table.
    """

    def __init__(self, graph: WeightedGraph, edge_lengths=None, table=None, name="custom"):
        if (edge_lengths is None) == (table is None):
            raise ValueError("give exactly one of edge_lengths or table")
        self.graph = graph
        self.name = name
        self._lock = threading.Lock()
        self._rows: dict[int, np.ndarray] = {}
        self._lengths = None
        self._table = None
        if table is not None:
            table = np.array(table, dtype=float)
            n = graph.vertex_count
            if table.shape != (n, n):
                raise ValueError("metric table has wrong shape")
            if np.any(table < 0) or np.any(np.diag(table) != 0) or not np.allclose(table, table.T, rtol=0, atol=0):
                raise ValueError("table is not a symmetric nonnegative table with zero diagonal")
            table.setflags(write=False)
            self._table = table
        else:
            lengths = np.asarray(edge_lengths, dtype=float)
            if lengths.shape != (graph.edge_count,) or np.any(lengths < 0):
                raise ValueError("need one nonnegative length per edge")
            self._lengths = lengths
            n = graph.vertex_count
            i, j = graph.edges[:, 0], graph.edges[:, 1]
            self._csr = sp.csr_matrix((lengths, (i, j)), shape=(n, n))
        self._jump = None

    @property
    def edge_lengths(self):
        return self._lengths

    def distances_from(self, x: int) -> np.ndarray:
        x = int(x)
        if self._table is not None:
            return self._table[x]
        row = self._rows.get(x)
        if row is None:
            with self._lock:
                row = self._rows.get(x)
                if row is None:
                    row = self._shortest_paths(x)
                    row.setflags(write=False)
                    self._rows[x] = row
        return row

    def _shortest_paths(self, x: int) -> np.ndarray:
        g = self.graph
        if g.is_path():
            # unique path: prefix sums are exact and fast
            cum = np.concatenate([[0.0], np.cumsum(self._lengths)])
            return np.abs(cum - cum[x])
        if np.any(self._lengths == 0):
            # csgraph ignores explicit zero entries
            return _dijkstra_py(g, self._lengths, x)
        return dijkstra(self._csr, directed=False, indices=x)

    def __call__(self, x: int, y: int) -> float:
        return float(self.distances_from(x)[y])

    def edge_values(self) -> np.ndarray:
        """``rho(x, y)`` for every stored edge."""
        g = self.graph
        if self._table is not None:
            return self._table[g.edges[:, 0], g.edges[:, 1]]
        if g.is_path() or g.edge_count == g.vertex_count - 1:
            # trees: the edge is the only path
            return self._lengths.copy()
        return np.array([self(int(i), int(j)) for i, j in g.edges])

    @property
    def jump_size(self) -> float:
        if self._jump is None:
            ev = self.edge_values()
            self._jump = float(ev.max()) if ev.size else 0.0
        return self._jump

    def scaled(self, c: float) -> "VertexMetric":
        if c < 0:
            raise ValueError("scale must be nonnegative")
        if self._table is not None:
            return VertexMetric(self.graph, table=c * self._table, name=f"{c}*{self.name}")
        return VertexMetric(self.graph, edge_lengths=c * self._lengths, name=f"{c}*{self.name}")

    def __repr__(self):
        return f"VertexMetric({self.name}, n={self.graph.vertex_count})"


def _dijkstra_py(g: WeightedGraph, lengths, source):
    import heapq

    n = g.vertex_count
    adj = [[] for _ in range(n)]
    for (i, j), w in zip(g.edges, lengths):
        adj[i].append((j, w))
        adj[j].append((i, w))
    dist = np.full(n, np.inf)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def degree_edge_lengths(g: WeightedGraph) -> np.ndarray:
    """``(1/Deg(x) ∧ 1/Deg(y))^(1/2)`` per edge."""
    deg = weighted_degree(g)
    i, j = g.edges[:, 0], g.edges[:, 1]
    return np.sqrt(np.minimum(1.0 / deg[i], 1.0 / deg[j]))


def path_degree_metric(g: WeightedGraph) -> VertexMetric:
    """Intrinsic path degree metric."""
    g.require_connected()
    return VertexMetric(g, edge_lengths=degree_edge_lengths(g), name="degree")


def combinatorial_metric(g: WeightedGraph) -> VertexMetric:
    g.require_connected()
    return VertexMetric(g, edge_lengths=np.ones(g.edge_count), name="combinatorial")


def zero_metric(g: WeightedGraph) -> VertexMetric:
    n = g.vertex_count
    return VertexMetric(g, table=np.zeros((n, n)), name="zero")


def make_metric(g: WeightedGraph, kind: str) -> VertexMetric:
    kinds = {"degree": path_degree_metric, "combinatorial": combinatorial_metric}
    if kind not in kinds:
        raise ValueError(f"unknown metric kind {kind!r}")
    return kinds[kind](g)


@dataclass(frozen=True)
class IntrinsicReport:
    slack: np.ndarray  # m(x) - sum_y b(x,y) rho(x,y)^2

    @property
    def passed(self) -> bool:
        return bool(np.all(self.slack >= -INTRINSIC_TOL))

    @property
    def worst(self) -> tuple[int, float]:
        k = int(np.argmin(self.slack))
        return k, float(self.slack[k])


def verify_intrinsic(g: WeightedGraph, rho: VertexMetric) -> IntrinsicReport:
    ev = rho.edge_values()
    term = g.weights * ev**2
    acc = np.zeros(g.vertex_count)
    np.add.at(acc, g.edges[:, 0], term)
    np.add.at(acc, g.edges[:, 1], term)
    return IntrinsicReport(g.measure - acc)


def jump_size(g: WeightedGraph, rho: VertexMetric) -> float:
    return rho.jump_size


@dataclass(frozen=True)
class MetricBall:
    center: int
    radius: float
    members: np.ndarray
    closed: bool = True

    def __len__(self):
        return int(self.members.size)

    def __contains__(self, v):
        return bool(np.any(self.members == v))


def ball(g: WeightedGraph, rho: VertexMetric, center: int, r: float, closed: bool = True) -> MetricBall:
    if r < 0:
        raise ValueError("radius must be nonnegative")
    dist = rho.distances_from(center)
    members = np.flatnonzero(dist <= r) if closed else np.flatnonzero(dist < r)
    return MetricBall(int(center), float(r), members, closed)
