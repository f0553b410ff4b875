"""Weighted graphs over discrete measure spaces.

A :class:`WeightedGraph` is a finite realization of a locally finite graph
``b`` over ``(X, m)``: symmetric positive edge weights stored once per
unordered pair, and a strictly positive vertex measure.  Edge sums of the
form ``sum_{x,y}`` always run over *ordered* pairs, so every edge is seen in
both orientations.

Realizations cut out of an infinite graph may mark a set of ``truncated``
vertices whose neighbourhoods are incomplete; geometric quantities that
touch them are refused downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components


class GraphFormatError(ValueError):
    """Raised for malformed graph text or invalid graph data."""


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    measure: np.ndarray
    edges: np.ndarray  # (E, 2), rows sorted i < j
    weights: np.ndarray
    truncated: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        m = np.asarray(self.measure, dtype=float)
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        n = m.shape[0]
        if n == 0:
            raise GraphFormatError("graph needs at least one vertex")
        if np.any(~np.isfinite(m)) or np.any(m <= 0):
            raise GraphFormatError("measure must be positive")
        if e.shape[0] != w.shape[0]:
            raise GraphFormatError("edges and weights differ in length")
        if np.any(~np.isfinite(w)) or np.any(w <= 0):
            raise GraphFormatError("edge weights must be positive")
        if e.size and (e.min() < 0 or e.max() >= n):
            raise GraphFormatError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            raise GraphFormatError("loops are not allowed")
        e = np.sort(e, axis=1)
        key = e[:, 0] * n + e[:, 1]
        if np.unique(key).size != key.size:
            raise GraphFormatError("duplicate edge")
        for a in (m, e, w):
            a.setflags(write=False)
        object.__setattr__(self, "measure", m)
        object.__setattr__(self, "edges", e)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "truncated", frozenset(int(v) for v in self.truncated))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[float]], measure=None, truncated=()):
        """Build from ``(i, j, weight)`` triples; measure defaults to 1."""
        triples = list(edges)
        e = np.array([(int(i), int(j)) for i, j, _ in triples], dtype=np.int64).reshape(-1, 2)
        w = np.array([float(b) for _, _, b in triples], dtype=float)
        m = np.ones(n) if measure is None else np.asarray(measure, dtype=float)
        if m.shape != (n,):
            raise GraphFormatError(f"measure must have length {n}")
        return cls(m, e, w, frozenset(truncated))

    @property
    def vertex_count(self) -> int:
        return int(self.measure.shape[0])

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """Symmetric sparse matrix of edge weights ``b``."""
        n = self.vertex_count
        i, j = self.edges[:, 0], self.edges[:, 1]
        a = sp.coo_matrix(
            (np.concatenate([self.weights, self.weights]), (np.concatenate([i, j]), np.concatenate([j, i]))),
            shape=(n, n),
        )
        return a.tocsr()

    @cached_property
    def row_sums(self) -> np.ndarray:
        """``deg(x) = sum_y b(x, y)``."""
        out = np.asarray(self.adjacency.sum(axis=1)).ravel()
        out.setflags(write=False)
        return out

    def neighbors(self, x: int) -> np.ndarray:
        a = self.adjacency
        return a.indices[a.indptr[x]:a.indptr[x + 1]]

    def weight(self, x: int, y: int) -> float:
        return float(self.adjacency[x, y])

    def is_connected(self) -> bool:
        ncomp, _ = connected_components(self.adjacency, directed=False)
        return ncomp == 1

    def components(self) -> np.ndarray:
        return connected_components(self.adjacency, directed=False)[1]

    def require_connected(self):
        if not self.is_connected():
            raise ValueError("graph is not connected")

    @cached_property
    def _path_shape(self) -> bool:
        n = self.vertex_count
        if self.edge_count != n - 1:
            return False
        return bool(np.all(self.edges[:, 1] - self.edges[:, 0] == 1)) and np.unique(self.edges[:, 0]).size == n - 1

    def is_path(self) -> bool:
        """True if the only edges are ``(k, k+1)`` for all consecutive k."""
        return self._path_shape

    def __repr__(self):
        return f"WeightedGraph(vertices={self.vertex_count}, edges={self.edge_count})"


def _as_set(g: WeightedGraph, A) -> np.ndarray:
    mask = np.zeros(g.vertex_count, dtype=bool)
    idx = np.fromiter((int(a) for a in A), dtype=np.int64) if not isinstance(A, np.ndarray) else A
    if idx.dtype == bool:
        return idx.copy()
    mask[idx] = True
    return mask


def laplacian_apply(g: WeightedGraph, f) -> np.ndarray:
    """``(Delta f)(x) = (1/m(x)) sum_y b(x,y) (f(x) - f(y))``."""
    f = np.asarray(f, dtype=float)
    return (g.row_sums * f - g.adjacency @ f) / g.measure


def weighted_degree(g: WeightedGraph, x=None):
    """``Deg(x) = deg(x)/m(x)``; the whole vector when ``x`` is None."""
    deg = g.row_sums / g.measure
    return deg if x is None else float(deg[x])


def boundary(g: WeightedGraph, W) -> np.ndarray:
    """Ordered pairs ``(x, y)`` with exactly one endpoint in ``W``, both orientations."""
    inside = _as_set(g, W)
    e = g.edges
    cross = inside[e[:, 0]] != inside[e[:, 1]]
    c = e[cross]
    return np.concatenate([c, c[:, ::-1]]) if c.size else np.empty((0, 2), dtype=np.int64)


def edge_metric_values(g: WeightedGraph, rho) -> np.ndarray:
    """``rho(x, y)`` on each stored edge; ``rho`` may be a metric or a constant."""
    if np.isscalar(rho):
        return np.full(g.edge_count, float(rho))
    return rho.edge_values()


def boundary_weight(g: WeightedGraph, rho, W) -> float:
    """``b rho(dW) = sum over ordered boundary pairs of b(x,y) rho(x,y)``."""
    inside = _as_set(g, W)
    e = g.edges
    cross = inside[e[:, 0]] != inside[e[:, 1]]
    return float(2.0 * np.sum(g.weights[cross] * edge_metric_values(g, rho)[cross]))


def interior(g: WeightedGraph, A) -> np.ndarray:
    """Combinatorial interior: vertices of ``A`` with no neighbour outside ``A``."""
    inside = _as_set(g, A)
    outside_nbrs = g.adjacency @ (~inside).astype(float)
    return np.flatnonzero(inside & (outside_nbrs == 0))


def green_sides(g: WeightedGraph, f, h) -> tuple[float, float]:
    """Both sides of ``sum m f (Delta h) = 1/2 sum_{x,y} b grad f grad h``."""
    f = np.asarray(f, dtype=float)
    h = np.asarray(h, dtype=float)
    lhs = float(np.sum(g.measure * f * laplacian_apply(g, h)))
    i, j = g.edges[:, 0], g.edges[:, 1]
    # each unordered edge appears twice in the ordered sum
    rhs = float(np.sum(g.weights * (f[i] - f[j]) * (h[i] - h[j])))
    return lhs, rhs


def _pair_weights(g: WeightedGraph, w) -> tuple[np.ndarray, np.ndarray]:
    """Split ordered-pair weights into (w(x,y), w(y,x)) per stored edge."""
    if w is None:
        return g.weights, g.weights
    w = w.toarray() if sp.issparse(w) else np.asarray(w, dtype=float)
    if np.any(w < 0):
        raise ValueError("pair weights must be nonnegative")
    off_edge = w.copy()
    i, j = g.edges[:, 0], g.edges[:, 1]
    off_edge[i, j] = 0.0
    off_edge[j, i] = 0.0
    if np.any(off_edge != 0):
        raise ValueError("pair weights must vanish off the edge set")
    return w[i, j], w[j, i]


def coarea_sides(g: WeightedGraph, w, f) -> tuple[float, float]:
    """Co-area identity ``sum_{x,y} w |f(x)-f(y)| = int w(d{f > t}) dt``.

    ``w`` is a nonnegative (n, n) array supported on edges, or None for ``b``.
    The level integral runs over all real t, which is the half line for
    ``f >= 0``.  It is summed exactly over the intervals between sorted
    distinct values of ``f``.
    """
    f = np.asarray(f, dtype=float)
    wf, wb = _pair_weights(g, w)
    i, j = g.edges[:, 0], g.edges[:, 1]
    lhs = float(np.sum((wf + wb) * np.abs(f[i] - f[j])))
    levels = np.unique(f)
    rhs = 0.0
    for lo, hi in zip(levels[:-1], levels[1:]):
        above = f > lo
        cross = above[i] != above[j]
        rhs += float(np.sum(wf[cross] + wb[cross])) * (hi - lo)
    return lhs, rhs


def area_sides(g: WeightedGraph, f, alpha: float) -> tuple[float, float]:
    """Area identity ``alpha sum m f^(1/alpha) = int_0^inf m({f>t}) t^(1/alpha-1) dt``."""
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    f = np.asarray(f, dtype=float)
    if np.any(f < 0):
        raise ValueError("f must be nonnegative")
    k = 1.0 / alpha
    lhs = alpha * float(np.sum(g.measure * f**k))
    levels = np.unique(np.concatenate([[0.0], f]))
    rhs = 0.0
    for lo, hi in zip(levels[:-1], levels[1:]):
        mass = float(np.sum(g.measure[f > lo]))
        rhs += mass * alpha * (hi**k - lo**k)
    return lhs, rhs


def h_omega(g: WeightedGraph, omega) -> float:
    """``sup_x (1/m(x)) sum_y b(x,y) |grad e^w grad e^-w|``."""
    omega = np.asarray(omega, dtype=float)
    i, j = g.edges[:, 0], g.edges[:, 1]
    ep, em = np.exp(omega), np.exp(-omega)
    term = g.weights * np.abs((ep[i] - ep[j]) * (em[i] - em[j]))
    acc = np.zeros(g.vertex_count)
    np.add.at(acc, i, term)
    np.add.at(acc, j, term)
    return float(np.max(acc / g.measure))


# -- text format ------------------------------------------------------------

def parse_graph(text: str) -> WeightedGraph:
    """Parse ``m <i> <measure>`` / ``e <i> <j> <weight>`` records.

    A comment of the form ``#! truncated i j ...`` restores the truncated
    vertex set of a realization; other comments are ignored.
    """
    measures: dict[int, float] = {}
    edges = []
    seen = set()
    truncated: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#!"):
            tok = line[2:].split()
            if tok and tok[0] == "truncated":
                try:
                    truncated += [int(v) for v in tok[1:]]
                except ValueError as exc:
                    raise GraphFormatError(f"line {lineno}: bad truncated list") from exc
            continue
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        try:
            if tok[0] == "m" and len(tok) == 3:
                i, val = int(tok[1]), float(tok[2])
                if i in measures:
                    raise GraphFormatError(f"line {lineno}: duplicate measure for {i}")
                if not val > 0:
                    raise GraphFormatError(f"line {lineno}: nonpositive measure")
                measures[i] = val
            elif tok[0] == "e" and len(tok) == 4:
                i, j, val = int(tok[1]), int(tok[2]), float(tok[3])
                if i == j:
                    raise GraphFormatError(f"line {lineno}: loop at {i}")
                if not val > 0:
                    raise GraphFormatError(f"line {lineno}: nonpositive weight")
                key = (min(i, j), max(i, j))
                if key in seen:
                    raise GraphFormatError(f"line {lineno}: duplicate edge {key}")
                seen.add(key)
                edges.append((i, j, val))
            else:
                raise GraphFormatError(f"line {lineno}: unrecognised record {line!r}")
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"line {lineno}: {exc}") from exc
    n = len(measures)
    if n == 0:
        raise GraphFormatError("no vertices")
    if set(measures) != set(range(n)):
        raise GraphFormatError("vertex indices must be dense from 0")
    for i, j, _ in edges:
        if i < 0 or j < 0 or i >= n or j >= n:
            raise GraphFormatError(f"edge ({i}, {j}) references unknown vertex")
    if any(v < 0 or v >= n for v in truncated):
        raise GraphFormatError("truncated vertex out of range")
    return WeightedGraph.from_edges(n, edges, [measures[i] for i in range(n)], truncated)


def format_graph(g: WeightedGraph) -> str:
    lines = [f"# vertices {g.vertex_count} edges {g.edge_count}"]
    if g.truncated:
        lines.append("#! truncated " + " ".join(str(v) for v in sorted(g.truncated)))
    lines += [f"m {i} {float(v)!r}" for i, v in enumerate(g.measure)]
    lines += [f"e {int(i)} {int(j)} {float(w)!r}" for (i, j), w in zip(g.edges, g.weights)]
    return "\n".join(lines) + "\n"


def read_graph(path) -> WeightedGraph:
    return parse_graph(Path(path).read_text())


def write_graph(g: WeightedGraph, path):
    Path(path).write_text(format_graph(g))
