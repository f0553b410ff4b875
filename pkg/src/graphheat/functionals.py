"""Geometric functionals around an anchor: means, error function, doubling,
isoperimetric constants and Sobolev inequalities.

Ball-based functionals refuse balls that reach the truncated layer of a
realization (or its neighbours), because the value would then describe the
cut graph rather than the infinite one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph, edge_metric_values, interior, weighted_degree
from .metric import VertexMetric, ball

BRUTE_FORCE_CAP = 22
DP_CELL_CAP = 50_000_000
SOBOLEV_RTOL = 1e-12


class TruncationError(ValueError):
    """A ball or set reaches the truncated part of a realization."""


def _forbidden(g: WeightedGraph) -> np.ndarray:
    bad = np.zeros(g.vertex_count, dtype=bool)
    if g.truncated:
        t = np.fromiter(g.truncated, dtype=np.int64)
        bad[t] = True
        bad[g.adjacency[t].indices] = True
    return bad


def require_interior(g: WeightedGraph, members) -> None:
    members = np.asarray(members, dtype=np.int64)
    if np.any(_forbidden(g)[members]):
        raise TruncationError("set touches the truncation boundary of the realization")


def ball_members(g: WeightedGraph, rho: VertexMetric, o: int, R: float) -> np.ndarray:
    members = ball(g, rho, o, R).members
    require_interior(g, members)
    return members


# -- means --------------------------------------------------------------------

@dataclass(frozen=True)
class MeanParams:
    p: float
    anchor: int = 0

    def __post_init__(self):
        if not self.p > 1:
            raise ValueError("p must exceed 1")

    @property
    def q(self) -> float:
        return 1.0 if math.isinf(self.p) else self.p / (self.p - 1.0)


def _power_mean(weights, values, p) -> float:
    if math.isinf(p):
        return float(np.max(values))
    return float((np.sum(weights * values**p) / np.sum(weights)) ** (1.0 / p))


def degree_mean(g: WeightedGraph, rho: VertexMetric, o: int, R: float, p: float) -> float:
    """``D_p(o, R)``; ``p = inf`` gives the supremum of ``Deg`` on the ball."""
    B = ball_members(g, rho, o, R)
    return _power_mean(g.measure[B], weighted_degree(g)[B], p)


def measure_mean(g: WeightedGraph, rho: VertexMetric, o: int, R: float, p: float) -> float:
    """``M_p(o, R)``; ``p = inf`` gives the supremum of ``1/m`` on the ball."""
    B = ball_members(g, rho, o, R)
    return _power_mean(g.measure[B], 1.0 / g.measure[B], p)


# -- error function -------------------------------------------------------------

@dataclass(frozen=True)
class GammaParams:
    n: float
    beta: float
    S: float

    def __post_init__(self):
        if not self.n > 2:
            raise ValueError("n must exceed 2")
        if not self.S > 0:
            raise ValueError("jump size must be positive")
        if not self.beta > 1:
            raise ValueError("beta must exceed 1")


def kappa(r: float, S: float) -> int:
    return int(math.floor(math.sqrt(r / (4.0 * S)) - 2.0))


def theta(r: float, beta: float, S: float) -> float:
    return 0.5 * beta ** (-kappa(r, S))


def gamma_from_values(r, Dp, Mp, mB, q, beta, S) -> float:
    bracket = (1.0 + r * r * Dp) * Mp**q * mB**q
    return float(bracket ** theta(r, beta, S))


def gamma_error(g: WeightedGraph, rho: VertexMetric, o: int, r: float, mp: MeanParams, gp: GammaParams) -> float:
    """``Gamma(r) = [(1 + r^2 D_p(r)) M_p(r)^q m(B(r))^q]^theta(r)``."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if gp.beta > 1.0 + 1.0 / mp.q + 1e-15:
        raise ValueError("beta must not exceed 1 + 1/q")
    B = ball_members(g, rho, o, r)
    Dp = _power_mean(g.measure[B], weighted_degree(g)[B], mp.p)
    Mp = _power_mean(g.measure[B], 1.0 / g.measure[B], mp.p)
    return gamma_from_values(r, Dp, Mp, float(g.measure[B].sum()), mp.q, gp.beta, gp.S)


# -- volume doubling ------------------------------------------------------------

def ball_volumes(g: WeightedGraph, rho: VertexMetric, o: int, radii) -> np.ndarray:
    """``m(B_o(r))`` for each radius, refusing balls that reach the truncation."""
    radii = np.asarray(radii, dtype=float)
    dist = rho.distances_from(o)
    order = np.argsort(dist, kind="stable")
    cum = np.cumsum(g.measure[order])
    count = np.searchsorted(dist[order], radii, side="right")
    require_interior(g, order[: int(count.max())])
    return cum[count - 1]


@dataclass(frozen=True)
class DoublingResult:
    C_D: float
    C_D_star: float


def doubling_constant(g: WeightedGraph, rho: VertexMetric, o: int, d: float, R1: float, R2: float, grid) -> DoublingResult:
    """Empirical doubling constants over a radius grid in ``[R1, R2]``.

    ``C_D`` maximizes ``m(B(r2)) / ((r2/r1)^d m(B(r1)))`` over grid pairs
    ``r1 <= r2``; ``C_D_star`` maximizes ``m(B(2r)) / m(B(r))`` over grid
    radii with ``2r <= R2``.
    """
    if R1 > R2:
        raise ValueError("need R1 <= R2")
    grid = np.unique(np.asarray(grid, dtype=float))
    grid = grid[(grid >= R1) & (grid <= R2) & (grid > 0)]
    if grid.size == 0:
        raise ValueError("no grid radius in [R1, R2]")
    vol = ball_volumes(g, rho, o, grid)
    r1, r2 = np.meshgrid(grid, grid, indexing="ij")
    v1, v2 = np.meshgrid(vol, vol, indexing="ij")
    q = np.where(r1 <= r2, v2 / ((r2 / r1) ** d * v1), -np.inf)
    small = grid[2 * grid <= R2]
    star = 0.0
    if small.size:
        star = float(np.max(ball_volumes(g, rho, o, 2 * small) / ball_volumes(g, rho, o, small)))
    return DoublingResult(float(q.max()), star)


# -- isoperimetry -----------------------------------------------------------------

@dataclass(frozen=True)
class IsoperimetricResult:
    value: float
    minimizer: frozenset
    method: str


def _iso_exponent(n: float) -> float:
    if math.isinf(n):
        return 1.0
    if not n > 2:
        raise ValueError("n must exceed 2")
    return (n - 2.0) / n


def isoperimetric_ratio(g: WeightedGraph, rho, W, n: float) -> float:
    from .graph import boundary_weight

    W = list(W)
    return boundary_weight(g, rho, W) / float(g.measure[W].sum()) ** _iso_exponent(n)


def isoperimetric_bruteforce(g: WeightedGraph, rho, U, n: float, cap: int = BRUTE_FORCE_CAP) -> IsoperimetricResult:
    """Exact ``h_{U,n}`` by enumerating every nonempty ``W`` inside ``U``."""
    U = np.unique(np.asarray(list(U), dtype=np.int64))
    k = U.size
    if k == 0:
        raise ValueError("U must be nonempty")
    if k > cap:
        raise ValueError(f"|U| = {k} exceeds the enumeration cap {cap}")
    expo = _iso_exponent(n)
    bit = np.full(g.vertex_count, -1)
    bit[U] = np.arange(k)
    e = g.edges
    touch = (bit[e[:, 0]] >= 0) | (bit[e[:, 1]] >= 0)
    bi, bj = bit[e[touch, 0]], bit[e[touch, 1]]
    cost = 2.0 * g.weights[touch] * edge_metric_values(g, rho)[touch]
    mU = g.measure[U]
    shifts = np.arange(k, dtype=np.int64)
    best, best_mask = math.inf, 0
    chunk = 1 << 15
    total = 1 << k
    for start in range(1, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((masks[:, None] >> shifts) & 1).astype(bool)
        padded = np.concatenate([bits, np.zeros((bits.shape[0], 1), dtype=bool)], axis=1)
        cross = padded[:, bi] != padded[:, bj]  # index -1 hits the zero column
        cut = cross.astype(float) @ cost
        mass = bits.astype(float) @ mU
        ratio = cut / mass**expo
        j = int(np.argmin(ratio))
        if ratio[j] < best:
            best, best_mask = float(ratio[j]), int(masks[j])
    W = frozenset(int(U[i]) for i in range(k) if best_mask >> i & 1)
    return IsoperimetricResult(best, W, "brute")


def isoperimetric_balls(line_graph: WeightedGraph, rho: VertexMetric, r: float, n: float, center: int = 0) -> IsoperimetricResult:
    """Minimum over initial segments ``{0..k}`` contained in ``B_center(r)``."""
    if not line_graph.is_path():
        raise ValueError("ball method needs a line graph")
    target = ball_members(line_graph, rho, center, r)
    inside = np.zeros(line_graph.vertex_count, dtype=bool)
    inside[target] = True
    expo = _iso_exponent(n)
    ev = edge_metric_values(line_graph, rho)
    cum = np.cumsum(line_graph.measure)
    best, best_k = math.inf, -1
    for k in range(line_graph.vertex_count - 1):
        if not inside[k]:
            break
        val = 2.0 * line_graph.weights[k] * ev[k] / cum[k] ** expo
        if val < best:
            best, best_k = val, k
    if best_k < 0:
        raise ValueError("target ball contains no initial segment")
    return IsoperimetricResult(float(best), frozenset(range(best_k + 1)), "balls")


def isoperimetric_path_exact(line_graph: WeightedGraph, rho, U, n: float, cell_cap: int = DP_CELL_CAP) -> IsoperimetricResult:
    """Exact ``h_{U,n}`` on a path with integer measures.

    Dynamic programme over vertices in path order with state (in W?, m(W)):
    for every attainable mass it finds the cheapest boundary, then minimizes
    boundary / mass^((n-2)/n).  Equivalent to full enumeration.
    """
    g = line_graph
    if not g.is_path():
        raise ValueError("path method needs a line graph")
    m = g.measure
    if np.any(m != np.round(m)):
        raise ValueError("path method needs integer measures")
    U = np.unique(np.asarray(list(U), dtype=np.int64))
    if U.size == 0:
        raise ValueError("U must be nonempty")
    expo = _iso_exponent(n)
    mi = m.astype(np.int64)
    M = int(mi[U].sum())
    N = g.vertex_count
    last = min(int(U.max()) + 1, N - 1)
    if (last + 1) * (M + 1) > cell_cap:
        raise ValueError("dynamic programme too large")
    cost = 2.0 * g.weights * edge_metric_values(g, rho)  # edge (k, k+1)
    inU = np.zeros(N, dtype=bool)
    inU[U] = True
    inf = math.inf
    out_c = np.full(M + 1, inf)
    in_c = np.full(M + 1, inf)
    out_c[0] = 0.0
    choice = np.zeros((last + 1, 2, M + 1), dtype=np.int8)  # predecessor state
    for k in range(last + 1):
        c = cost[k - 1] if k > 0 else 0.0
        # vertex k out of W
        stay = out_c
        leave = in_c + c
        new_out = np.minimum(stay, leave)
        choice[k, 0] = leave < stay
        new_in = np.full(M + 1, inf)
        if inU[k]:
            mk = int(mi[k])
            a = out_c[: M + 1 - mk] + c
            b = in_c[: M + 1 - mk]
            new_in[mk:] = np.minimum(a, b)
            choice[k, 1, mk:] = b <= a
        out_c, in_c = new_out, new_in
    # the edge beyond `last` (if any) is cut when `last` is in W
    tail = cost[last] if last < N - 1 else 0.0
    final = np.minimum(out_c, in_c + tail)
    masses = np.arange(M + 1, dtype=float)
    with np.errstate(divide="ignore"):
        ratio = np.where(masses > 0, final / np.where(masses > 0, masses, 1.0) ** expo, inf)
    mass = int(np.argmin(ratio))
    state = 1 if in_c[mass] + tail <= out_c[mass] else 0
    members = []
    for k in range(last, -1, -1):
        prev = int(choice[k, state, mass])
        if state == 1:
            members.append(k)
            mass -= int(mi[k])
        state = prev
    return IsoperimetricResult(float(ratio.min()), frozenset(members), "path-dp")


# -- Sobolev inequalities ------------------------------------------------------------

def _grad_energy(g: WeightedGraph, u) -> float:
    """``sum_{x,y} b(x,y) (u(x) - u(y))^2`` over ordered pairs."""
    i, j = g.edges[:, 0], g.edges[:, 1]
    return float(2.0 * np.sum(g.weights * (u[i] - u[j]) ** 2))


def _lp_power(g: WeightedGraph, u, p) -> float:
    return float(np.sum(g.measure * np.abs(u) ** p))


@dataclass(frozen=True)
class SobolevResult:
    holds: bool
    slack: float
    lhs: float
    rhs: float
    factor_lhs: float | None = None

    @property
    def factor_holds(self) -> bool | None:
        if self.factor_lhs is None:
            return None
        return self.factor_lhs <= self.rhs * (1 + SOBOLEV_RTOL)


def _support_check(g, allowed, u):
    mask = np.zeros(g.vertex_count, dtype=bool)
    mask[np.asarray(list(allowed), dtype=np.int64)] = True
    if np.any((u != 0) & ~mask):
        raise ValueError("function is not supported in the required set")


def sobolev_check(g: WeightedGraph, rho, U, n: float, C: float, h: float, phi) -> SobolevResult:
    """Isoperimetric Sobolev inequality for ``phi`` supported in ``U``.

    Checks ``(h/C) (sum m |phi|^(2n/(n-2)))^((n-2)/n)
    <= sum_{x,y} b (grad phi)^2 + C^-2 sum m phi^2``.  The variant with the
    extra factor ``n/(n-2)`` inside the bracket is reported as ``factor_lhs``.
    """
    if C <= 0:
        raise ValueError("C must be positive")
    phi = np.asarray(phi, dtype=float)
    _support_check(g, U, phi)
    if math.isinf(n):
        p, a, factor = 2.0, 1.0, 1.0
    else:
        if not n > 2:
            raise ValueError("n must exceed 2")
        p, a, factor = 2.0 * n / (n - 2.0), (n - 2.0) / n, n / (n - 2.0)
    norm = _lp_power(g, phi, p)
    lhs = h / C * norm**a
    with_factor = h / C * (factor * norm) ** a
    rhs = _grad_energy(g, phi) + _lp_power(g, phi, 2.0) / C**2
    slack = rhs - lhs
    return SobolevResult(bool(slack >= -SOBOLEV_RTOL * max(rhs, 1.0)), slack, lhs, rhs, with_factor)


def _def_sides(g, rho, o, n, R, u):
    if not n > 2:
        raise ValueError("n must exceed 2")
    if R <= 0:
        raise ValueError("R must be positive")
    u = np.asarray(u, dtype=float)
    B = ball_members(g, rho, o, R)
    _support_check(g, interior(g, B), u)
    mB = float(g.measure[B].sum())
    p = 2.0 * n / (n - 2.0)
    lp2 = _lp_power(g, u, p) ** (2.0 / p)
    scaled = mB ** (2.0 / n) / R**2 * lp2
    rhs = _grad_energy(g, u) + _lp_power(g, u, 2.0) / R**2
    return scaled, rhs


def sobolev_def_check(g: WeightedGraph, rho, o: int, n: float, R: float, C_S: float, u) -> SobolevResult:
    """Ball Sobolev inequality for ``u`` supported in the interior of ``B_o(R)``."""
    if C_S <= 0:
        raise ValueError("C_S must be positive")
    scaled, rhs = _def_sides(g, rho, o, n, R, u)
    lhs = scaled / C_S
    slack = rhs - lhs
    return SobolevResult(bool(slack >= -SOBOLEV_RTOL * max(rhs, 1.0)), slack, lhs, rhs)


def sobolev_constant_for(g: WeightedGraph, rho, o: int, n: float, R: float, u) -> float:
    """Smallest ``C_S`` for which the ball inequality holds for this ``u``."""
    scaled, rhs = _def_sides(g, rho, o, n, R, u)
    return 0.0 if scaled == 0 else scaled / rhs


def empirical_sobolev_constant(g: WeightedGraph, rho, o: int, n: float, R: float, functions) -> float:
    return max(sobolev_constant_for(g, rho, o, n, R, u) for u in functions)


def test_functions(rng: np.random.Generator, support, n_vertices: int, count: int, rho=None, center=None) -> list:
    """Seeded uniform functions on ``support`` plus indicator/hat/plateau families."""
    support = np.asarray(list(support), dtype=np.int64)
    out = []
    for _ in range(count):
        f = np.zeros(n_vertices)
        f[support] = rng.uniform(-1.0, 1.0, support.size)
        out.append(f)
    f = np.zeros(n_vertices)
    f[support] = 1.0
    out.append(f)
    if rho is not None and center is not None:
        dist = rho.distances_from(center)[support]
        top = float(dist.max()) if dist.size else 0.0
        if top > 0:
            hat = np.zeros(n_vertices)
            hat[support] = 1.0 - dist / (top * (1 + 1e-9))
            out.append(hat)
            for frac in (0.25, 0.5, 0.75):
                plateau = np.zeros(n_vertices)
                plateau[support[dist <= frac * top]] = 1.0
                if plateau.any():
                    out.append(plateau)
    return out


test_functions.__test__ = False  # not a pytest test


# -- decreasing-function inequality ---------------------------------------------------

def decreasing_inequality_check(breaks, values, alpha: float) -> tuple[float, float]:
    """``((1/a) int F t^(1/a-1))^a`` and ``int F^a`` for a step function.

    ``F = values[i]`` on ``[breaks[i], breaks[i+1])`` with ``breaks[0] = 0``
    and ``F = 0`` beyond the last break.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    t = np.asarray(breaks, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.size != v.size + 1 or t[0] != 0 or np.any(np.diff(t) <= 0):
        raise ValueError("breaks must start at 0, increase strictly and exceed values by one")
    if np.any(v < 0) or np.any(np.diff(v) > 0):
        raise ValueError("F must be nonnegative and nonincreasing")
    k = 1.0 / alpha
    # (1/a) int_{t_i}^{t_i+1} t^(1/a-1) dt = t_{i+1}^(1/a) - t_i^(1/a)
    lhs = float(np.sum(v * np.diff(t**k))) ** alpha
    rhs = float(np.sum(v**alpha * np.diff(t)))
    return lhs, rhs
