"""Dirichlet heat kernels on finite truncations.

On a finite set ``A`` the generator is the symmetrized matrix
``L = M^{-1/2} (D - B) M^{-1/2}`` restricted to ``A``, where ``D`` keeps the
*full* row sums of ``b`` (edges leaving ``A`` contribute to the diagonal).
Its kernel ``p^A_t`` increases to the minimal heat kernel along exhaustions,
so every value computed here is a lower approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as la
import scipy.sparse as sp

from .graph import WeightedGraph
from .metric import VertexMetric

MAX_DENSE = 12_000
NEGATIVE_CLAMP = 1e-12


class UnconvergedError(RuntimeError):
    """Exhaustion hit its cap before stabilizing; carries the trace."""

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True, eq=False)
class DirichletGenerator:
    domain: np.ndarray  # sorted vertex ids of A
    matrix: sp.csr_matrix
    measure: np.ndarray

    @property
    def size(self) -> int:
        return int(self.domain.size)

    def index_of(self, vertices) -> np.ndarray:
        v = np.atleast_1d(np.asarray(vertices, dtype=np.int64))
        pos = np.searchsorted(self.domain, v)
        if np.any(pos >= self.domain.size) or np.any(self.domain[np.minimum(pos, self.domain.size - 1)] != v):
            raise KeyError("vertex outside the Dirichlet domain")
        return pos

    def tridiagonal(self):
        """``(diag, offdiag)`` when ``A`` is a path in index order, else None."""
        L = self.matrix
        if self.size == 1:
            return L.diagonal(), np.empty(0)
        coo = L.tocoo()
        if np.all(np.abs(coo.row - coo.col) <= 1):
            return L.diagonal(), L.diagonal(1)
        return None


def assemble_dirichlet(g: WeightedGraph, A, max_size: int = MAX_DENSE) -> DirichletGenerator:
    dom = np.unique(np.asarray(list(A) if not isinstance(A, np.ndarray) else A, dtype=np.int64))
    if dom.size == 0:
        raise ValueError("Dirichlet domain must be nonempty")
    if dom.size > max_size:
        raise ValueError(f"domain of {dom.size} vertices exceeds the cap {max_size}")
    m = g.measure[dom]
    B = g.adjacency[dom][:, dom]
    scale = sp.diags(1.0 / np.sqrt(m))
    L = scale @ (sp.diags(g.row_sums[dom]) - B) @ scale
    return DirichletGenerator(dom, sp.csr_matrix(L), m)


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenpairs of a Dirichlet generator.

    ``eigenvectors`` holds all rows of ``U`` unless ``rows`` restricts them.
    With an eigenvalue cutoff only eigenvalues ``<= cutoff`` are kept and
    ``tail_bound(t) = exp(-t * cutoff)`` bounds the dropped part of
    ``sum_j e^{-t lambda_j} u_j(x) u_j(y)``.
    """

    generator: DirichletGenerator
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    rows: np.ndarray | None = None  # domain positions kept in eigenvectors
    cutoff: float | None = None
    projections: np.ndarray | None = None  # U^T sqrt(m) over the whole domain

    def row_of(self, vertices) -> np.ndarray:
        pos = self.generator.index_of(vertices)
        if self.rows is None:
            return pos
        where = np.searchsorted(self.rows, pos)
        if np.any(where >= self.rows.size) or np.any(self.rows[np.minimum(where, self.rows.size - 1)] != pos):
            raise KeyError("vertex row was not retained")
        return where

    @property
    def complete(self) -> bool:
        return self.rows is None and self.cutoff is None

    def tail_bound(self, t: float) -> float:
        return 0.0 if self.cutoff is None else math.exp(-t * self.cutoff)

    def reconstruction_residual(self) -> float:
        if not self.complete:
            raise ValueError("residual needs the complete decomposition")
        L = self.generator.matrix.toarray()
        U = self.eigenvectors
        return float(np.linalg.norm(L - (U * self.eigenvalues) @ U.T) / max(np.linalg.norm(L), 1e-300))


def decompose(gen: DirichletGenerator, cutoff: float | None = None, keep=None) -> SpectralDecomposition:
    """Symmetric eigendecomposition of ``gen``.

    Paths use the tridiagonal LAPACK solver; everything else goes through a
    dense symmetric solver.  ``cutoff`` keeps only eigenvalues below it and
    ``keep`` retains only the eigenvector rows of the given vertices.
    """
    rows = None if keep is None else np.unique(gen.index_of(keep))
    tri = gen.tridiagonal()
    if tri is not None:
        d, e = tri
        if cutoff is None:
            w, U = la.eigh_tridiagonal(d, e)
        else:
            w, U = la.eigh_tridiagonal(d, e, select="v", select_range=(-1.0, cutoff))
    else:
        L = gen.matrix.toarray()
        if cutoff is None:
            w, U = la.eigh(L)
        else:
            w, U = la.eigh(L, subset_by_value=(-np.inf, cutoff))
    proj = U.T @ np.sqrt(gen.measure)
    if rows is not None:
        U = U[rows]
    return SpectralDecomposition(gen, w, U, rows, cutoff, proj)


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(~np.isfinite(t)):
        raise ValueError("time must be finite and nonnegative")
    return t


class HeatKernel:
    """Evaluates ``p^A_t(x, y) = (m(x) m(y))^{-1/2} sum_j e^{-t l_j} u_j(x) u_j(y)``."""

    def __init__(self, dec: SpectralDecomposition):
        self.dec = dec
        self.gen = dec.generator

    def matrix(self, t: float, xs, ys) -> np.ndarray:
        t = float(_check_t(t))
        ix, iy = self.dec.row_of(xs), self.dec.row_of(ys)
        if t == 0.0 and self.dec.complete:
            px = self.gen.index_of(xs)
            py = self.gen.index_of(ys)
            return (px[:, None] == py[None, :]) / self.gen.measure[px][:, None]
        U = self.dec.eigenvectors
        w = np.exp(-t * self.dec.eigenvalues)
        K = (U[ix] * w) @ U[iy].T
        mx = self.gen.measure[self.gen.index_of(xs)]
        my = self.gen.measure[self.gen.index_of(ys)]
        K = K / np.sqrt(np.outer(mx, my))
        K[(K < 0) & (K >= -NEGATIVE_CLAMP)] = 0.0
        return K

    def __call__(self, t: float, x: int, y: int) -> float:
        return float(self.matrix(t, [x], [y])[0, 0])

    def full(self, t: float) -> np.ndarray:
        """Kernel on all of ``A`` (needs every eigenvector row)."""
        if self.dec.rows is not None:
            raise ValueError("decomposition keeps only some rows")
        return self.matrix(t, self.gen.domain, self.gen.domain)

    def mass(self, t: float, xs=None) -> np.ndarray:
        """``sum_y m(y) p_t(x, y)`` for ``x`` in ``xs`` (default: all of ``A``).

        With an eigenvalue cutoff the dropped modes are missing from the sum.
        """
        t = float(_check_t(t))
        xs = self.gen.domain if xs is None else np.atleast_1d(xs)
        U = self.dec.eigenvectors[self.dec.row_of(xs)]
        sm = np.sqrt(self.gen.measure[self.gen.index_of(xs)])
        return (U * np.exp(-t * self.dec.eigenvalues)) @ self.dec.projections / sm


def heat_kernel(dec: SpectralDecomposition, t: float, x: int, y: int) -> float:
    return HeatKernel(dec)(t, x, y)


def geometric_grid(a: float, b: float, ratio: float = math.sqrt(2.0)) -> np.ndarray:
    """``a, a*ratio, ...`` up to and including ``b`` (``b`` appended if missed)."""
    if not (0 < a <= b) or ratio <= 1:
        raise ValueError("need 0 < a <= b and ratio > 1")
    k = int(math.floor(math.log(b / a) / math.log(ratio) + 1e-9))
    grid = a * ratio ** np.arange(k + 1)
    if grid[-1] < b * (1 - 1e-12):
        grid = np.append(grid, b)
    return grid


@dataclass
class ExhaustionStep:
    radius: float
    size: int
    values: np.ndarray  # (times, probes)


@dataclass
class ExhaustionResult:
    domain: np.ndarray
    converged: bool
    trace: list = field(default_factory=list)
    times: np.ndarray | None = None
    probes: list | None = None

    @property
    def monotone(self) -> bool:
        vals = [s.values for s in self.trace]
        return all(np.all(b >= a - 1e-12) for a, b in zip(vals, vals[1:]))


def _allowed(g: WeightedGraph) -> np.ndarray:
    ok = np.ones(g.vertex_count, dtype=bool)
    ok[list(g.truncated)] = False
    return ok


def exhaustion_converge(
    g: WeightedGraph,
    rho: VertexMetric,
    center: int,
    t_max: float,
    tol: float,
    probes=None,
    times=None,
    radius0: float | None = None,
    growth: float = 1.5,
    max_size: int = MAX_DENSE,
    cutoff_scale: float | None = None,
) -> ExhaustionResult:
    """Grow ball truncations ``B_center(R_k)`` until probe kernels stabilize.

    Domains exclude truncated vertices of the realization.  Returns an
    unconverged result (never raises) when the size cap or the realization
    is exhausted before two successive domains agree within ``tol``.
    ``cutoff_scale`` keeps only eigenvalues below ``cutoff_scale / t_min``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    probes = [(int(center), int(center))] if probes is None else [(int(a), int(b)) for a, b in probes]
    times = np.array([t_max], dtype=float) if times is None else np.asarray(times, dtype=float)
    _check_t(times)
    ok = _allowed(g)
    dist = rho.distances_from(center)
    needed = {v for pr in probes for v in pr}
    r = radius0 if radius0 is not None else max(float(max(dist[list(needed)])) + rho.jump_size, 2.0 * math.sqrt(max(times.max(), 1e-12)))
    cutoff = None if cutoff_scale is None else cutoff_scale / float(max(times.min(), 1e-12))
    result = ExhaustionResult(np.empty(0, dtype=np.int64), False, [], times, probes)
    prev_size = -1
    prev_vals = None
    while True:
        dom = np.flatnonzero((dist <= r) & ok)
        full = dom.size == int(ok.sum())
        if dom.size > max_size:
            return result
        if dom.size != prev_size and needed <= set(dom.tolist()):
            gen = assemble_dirichlet(g, dom, max_size)
            dec = decompose(gen, cutoff=cutoff, keep=sorted(needed))
            hk = HeatKernel(dec)
            vals = np.array([[hk(t, a, b) for a, b in probes] for t in times])
            result.trace.append(ExhaustionStep(float(r), int(dom.size), vals))
            result.domain = dom
            if prev_vals is not None and np.all(np.abs(vals - prev_vals) < tol):
                result.converged = True
                return result
            if full and not g.truncated:
                # the whole finite graph: nothing left to add
                result.converged = True
                return result
            prev_vals, prev_size = vals, dom.size
        if full:
            return result
        r *= growth


def lambda_bottom(g: WeightedGraph, exhaustion) -> np.ndarray:
    """Smallest Dirichlet eigenvalue on each domain of an increasing sequence."""
    out = []
    prev = None
    for A in exhaustion:
        dom = np.unique(np.asarray(A, dtype=np.int64))
        if prev is not None and not np.all(np.isin(prev, dom)):
            raise ValueError("exhaustion must be increasing")
        gen = assemble_dirichlet(g, dom)
        tri = gen.tridiagonal()
        if tri is not None:
            w = la.eigh_tridiagonal(tri[0], tri[1], eigvals_only=True, select="i", select_range=(0, 0))
        else:
            w = la.eigh(gen.matrix.toarray(), eigvals_only=True, subset_by_index=(0, 0))
        out.append(float(w[0]))
        prev = dom
    return np.array(out)
