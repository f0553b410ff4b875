"""Anti-trees, their one-dimensional reduction and the power family geometry.

Level ``k`` of an anti-tree is the combinatorial sphere ``S_k``; consecutive
spheres are joined by complete bipartite edge sets.  Realizations are cut at
some level ``N`` and the last level is marked truncated, since its vertices
lose their forward neighbours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse.csgraph import shortest_path

from .graph import WeightedGraph

MAX_FULL_VERTICES = 200_000


@dataclass(frozen=True)
class SphereFunction:
    """Sphere sizes ``s_k`` for ``k >= 0``; ``s_0 = 1`` and ``s_{-1} = 0``.

    Either the power family ``s_{k-1} = floor(k^gamma)`` or an explicit table
    ``(s_0, s_1, ...)``.
    """

    gamma: float | None = None
    table: tuple[int, ...] | None = None

    def __post_init__(self):
        if (self.gamma is None) == (self.table is None):
            raise ValueError("give exactly one of gamma or table")
        if self.table is not None:
            if not self.table or self.table[0] != 1 or any(int(v) != v or v < 1 for v in self.table):
                raise ValueError("table must start with s_0 = 1 and hold positive integers")

    def __call__(self, k: int) -> int:
        if k < 0:
            return 0
        if self.table is not None:
            if k >= len(self.table):
                raise IndexError(f"sphere table has no level {k}")
            return int(self.table[k])
        return _floor_power(k + 1, self.gamma)

    def sizes(self, N: int) -> np.ndarray:
        """``(s_0, ..., s_N)`` as floats."""
        return np.array([self(k) for k in range(N + 1)], dtype=float)


def _floor_power(base: int, gamma: float) -> int:
    v = base**gamma
    r = round(v)
    # pow may land a hair below an exact integer power
    if abs(v - r) <= 1e-12 * max(v, 1.0):
        return int(r)
    return int(math.floor(v))


def power_sphere_function(gamma: float) -> SphereFunction:
    if not 0 <= gamma < 2:
        raise ValueError("gamma must lie in [0, 2)")
    return SphereFunction(gamma=float(gamma))


def dimension(gamma: float) -> float:
    """Volume growth dimension ``2(gamma+1)/(2-gamma)``."""
    if not 0 <= gamma < 2:
        raise ValueError("gamma must lie in [0, 2)")
    return 2.0 * (gamma + 1.0) / (2.0 - gamma)


@dataclass(frozen=True, eq=False)
class AntiTree:
    graph: WeightedGraph
    level: np.ndarray  # vertex -> combinatorial distance to the root 0
    sphere: SphereFunction | None
    levels: int

    def sphere_members(self, k: int) -> np.ndarray:
        return np.flatnonzero(self.level == k)

    def ball_levels(self, N: int) -> np.ndarray:
        """Vertices of ``A_N = S_0 ∪ ... ∪ S_N``."""
        return np.flatnonzero(self.level <= N)

    def without_edge(self, u: int, v: int) -> "AntiTree":
        keep = ~(((self.graph.edges[:, 0] == min(u, v)) & (self.graph.edges[:, 1] == max(u, v))))
        if keep.all():
            raise ValueError(f"({u}, {v}) is not an edge")
        g = WeightedGraph(self.graph.measure, self.graph.edges[keep], self.graph.weights[keep], self.graph.truncated)
        return AntiTree(g, combinatorial_levels(g), None, self.levels)


def combinatorial_levels(g: WeightedGraph, root: int = 0) -> np.ndarray:
    d = shortest_path(g.adjacency, unweighted=True, directed=False, indices=root)
    if np.any(~np.isfinite(d)):
        raise ValueError("graph is not connected")
    return d.astype(np.int64)


def build_antitree(s: SphereFunction, N: int, max_vertices: int = MAX_FULL_VERTICES) -> AntiTree:
    """Anti-tree on levels ``0..N`` with standard weights and counting measure."""
    if N < 1:
        raise ValueError("need at least one level beyond the root")
    sizes = [s(k) for k in range(N + 1)]
    total = sum(sizes)
    if total > max_vertices:
        raise ValueError(f"anti-tree would have {total} vertices (cap {max_vertices}); use the reduced line")
    starts = np.concatenate([[0], np.cumsum(sizes)])
    level = np.repeat(np.arange(N + 1), sizes)
    blocks = []
    for k in range(N):
        a = np.arange(starts[k], starts[k + 1])
        b = np.arange(starts[k + 1], starts[k + 2])
        blocks.append(np.stack(np.meshgrid(a, b, indexing="ij"), axis=-1).reshape(-1, 2))
    edges = np.concatenate(blocks)
    g = WeightedGraph(np.ones(total), edges, np.ones(len(edges)), frozenset(range(starts[N], starts[N + 1])))
    return AntiTree(g, level, s, N)


@dataclass(frozen=True, eq=False)
class ReducedLine:
    """Weighted path on ``0..N`` with ``m(k) = s_k`` and ``b(k,k+1) = s_k s_{k+1}``."""

    graph: WeightedGraph
    sphere: SphereFunction
    levels: int


def reduce(s: SphereFunction, N: int) -> ReducedLine:
    if N < 1:
        raise ValueError("need at least one level beyond the root")
    sizes = s.sizes(N)
    k = np.arange(N)
    edges = np.stack([k, k + 1], axis=1)
    g = WeightedGraph(sizes, edges, sizes[:-1] * sizes[1:], frozenset([N]))
    return ReducedLine(g, s, N)


def check_characterization(at: AntiTree, x: int, x2: int, y: int, y2: int) -> bool:
    """Is swapping ``x<->x2`` and ``y<->y2`` (fixing the rest) an automorphism?"""
    lv = at.level
    if lv[x] != lv[x2] or lv[y] != lv[y2]:
        raise ValueError("swapped vertices must lie on a common sphere")
    if len({x, x2} & {y, y2}) == 1 and {x, x2} != {y, y2}:
        raise ValueError("the two swaps overlap in exactly one vertex")
    n = at.graph.vertex_count
    perm = np.arange(n)
    perm[x], perm[x2] = x2, x
    if {x, x2} != {y, y2}:
        perm[y], perm[y2] = y2, y
    e = at.graph.edges
    mapped = np.sort(perm[e], axis=1)
    key = lambda a: np.sort(a[:, 0] * n + a[:, 1])
    return bool(np.array_equal(key(mapped), key(e)))


# -- geometry of the power family ---------------------------------------------

def line_degrees(s: SphereFunction, N: int) -> np.ndarray:
    """``Deg(k) = s_{k-1} + s_{k+1}`` for ``k = 0..N`` (exact, no truncation)."""
    sizes = s.sizes(N + 1)
    prev = np.concatenate([[0.0], sizes[:N]])
    return prev + sizes[1:N + 2]


def line_edge_lengths(s: SphereFunction, N: int) -> np.ndarray:
    """Degree-metric lengths of the edges ``(k, k+1)``, ``k = 0..N-1``."""
    deg = line_degrees(s, N)
    return np.sqrt(np.minimum(1.0 / deg[:-1], 1.0 / deg[1:]))


def line_distances(s: SphereFunction, N: int) -> np.ndarray:
    """``rho(0, k)`` on the reduced line for ``k = 0..N``."""
    return np.concatenate([[0.0], np.cumsum(line_edge_lengths(s, N))])


def levels_for_radius(s: SphereFunction, R: float, margin: int = 2) -> int:
    """Truncation level ``N`` whose realization holds ``B_0(R)`` strictly inside.

    The closed ball plus one jump stays below level ``N - margin``, so
    degrees, boundaries and distances on the ball are those of the infinite
    graph.
    """
    N = 8
    while True:
        dist = line_distances(s, N)
        jump = float(line_edge_lengths(s, N).max())
        inside = np.flatnonzero(dist <= R + jump)
        if inside.size and inside[-1] < N - margin:
            return int(inside[-1] + margin + 1)
        N *= 2


@dataclass(frozen=True)
class BandReport:
    """Min/max of a measured-over-model ratio across a parameter range."""

    params: np.ndarray
    ratios: np.ndarray

    @property
    def min(self) -> float:
        return float(self.ratios.min())

    @property
    def max(self) -> float:
        return float(self.ratios.max())

    @property
    def spread(self) -> float:
        return self.max / self.min

    @property
    def argmin(self) -> float:
        return float(self.params[np.argmin(self.ratios)])

    @property
    def argmax(self) -> float:
        return float(self.params[np.argmax(self.ratios)])


def distance_band(gamma: float, levels: Sequence[int]) -> BandReport:
    """``rho(o, x) / |x|^((2-gamma)/2)`` over the given levels."""
    levels = np.asarray(levels, dtype=np.int64)
    s = power_sphere_function(gamma)
    dist = line_distances(s, int(levels.max()))
    return BandReport(levels.astype(float), dist[levels] / levels ** ((2.0 - gamma) / 2.0))


def volume_model(r, r_x: float, d: float):
    r = np.asarray(r, dtype=float)
    return np.where(r >= r_x, r**d, r * max(r_x, 0.0) ** (d - 1))


def volume_band(gamma: float, x_level: int, radii: Sequence[float]) -> BandReport:
    """``m(B_x(r))`` against ``r^d`` (``r >= r_x``) or ``r r_x^(d-1)`` (``r <= r_x``)."""
    radii = np.asarray(radii, dtype=float)
    s = power_sphere_function(gamma)
    d = dimension(gamma)
    N = levels_for_radius(s, float(radii.max()) + _radius_to_level(s, x_level))
    dist = line_distances(s, N)
    sizes = s.sizes(N)
    from_x = np.abs(dist - dist[x_level])
    measured = np.array([sizes[from_x <= r].sum() for r in radii])
    return BandReport(radii, measured / volume_model(radii, dist[x_level], d))


def _radius_to_level(s: SphereFunction, k: int) -> float:
    return float(line_distances(s, max(k, 1))[k])
