"""Gaussian bound shapes for heat kernels and kernel-vs-bound ratio reports.

Every bound carries an unknown analytic constant; it enters as ``C_free``
(default 1) so that ``sup p / shape`` is the empirical constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .antitree import dimension

ANTITREE_R0 = 72.0
ANTITREE_T_MIN = 2 * ANTITREE_R0**2


def _positive_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    return t


def zeta(r, t, S: float = 1.0):
    """``S^-2 (r S arsinh(r S / t) + t - sqrt(t^2 + r^2 S^2))``."""
    t = _positive_t(t)
    if S <= 0:
        raise ValueError("S must be positive")
    a = np.asarray(r, dtype=float) * S
    # t - sqrt(t^2 + a^2) without cancellation
    out = (a * np.arcsinh(a / t) - a * a / (t + np.hypot(t, a))) / S**2
    return out if out.ndim else float(out)


def sigma(r, t, S: float = 1.0):
    """``2 S^-2 (sqrt(1 + r^2 S^2 / t^2) - 1)``."""
    t = _positive_t(t)
    if S <= 0:
        raise ValueError("S must be positive")
    x2 = (np.asarray(r, dtype=float) * S / t) ** 2
    out = 2.0 / S**2 * x2 / (np.sqrt(1.0 + x2) + 1.0)
    return out if out.ndim else float(out)


def _middle(rho_xy, t, S, power):
    """``(1 ∨ S^-2 (sqrt(t^2 + rho^2 S^2) - t))^power``."""
    a = rho_xy * S
    excess = a * a / (np.sqrt(t * t + a * a) + t) / S**2
    return max(1.0, excess) ** power


@dataclass(frozen=True)
class BoundParams:
    n: float
    d: float
    p: float
    S: float
    R1: float
    R2: float = math.inf
    Lam: float = 0.0
    C_D: float = 1.0
    C_free: float = 1.0

    @property
    def q(self) -> float:
        return 1.0 if math.isinf(self.p) else self.p / (self.p - 1.0)

    @property
    def alpha(self) -> float:
        return 1.0 + 2.0 / self.n

    @property
    def beta(self) -> float:
        # 1 + 1/(n ∨ 2q) keeps beta inside (1, 1 + 1/q) and below alpha
        return 1.0 + 1.0 / max(self.n, 2.0 * self.q)

    @property
    def constant(self) -> float:
        """``2^(3n+2d+2) e C_free C_D``."""
        return 2.0 ** (3 * self.n + 2 * self.d + 2) * math.e * self.C_free * self.C_D

    def radius_threshold(self) -> float:
        return 32.0 * self.S * (math.log(self.q) / math.log(self.alpha / self.beta) + 3.0) ** 2

    def violations(self) -> list[str]:
        out = []
        if not self.n > 2:
            out.append("n must exceed 2")
        if not self.d > 0:
            out.append("d must be positive")
        if not self.p > 1:
            out.append("p must exceed 1")
        if not self.alpha > self.beta:
            out.append("alpha must exceed beta")
        if out:
            return out
        if not self.R2 >= 4 * self.R1:
            out.append("R2 >= 4 R1 fails")
        if not 4 * self.R1 >= self.radius_threshold() * (1 - 1e-12):
            out.append("4 R1 >= 32 S (ln q / ln(alpha/beta) + 3)^2 fails")
        return out

    @property
    def valid(self) -> bool:
        return not self.violations()


@dataclass(frozen=True)
class AnchorGeometry:
    gamma_x: float
    gamma_y: float
    rho_ox: float
    rho_oy: float
    rho_xy: float
    ball_measure: float  # m(B_o(sqrt t ∧ R2))


@dataclass(frozen=True)
class BoundValue:
    value: float
    flags: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.flags


def anchor_radius(rho_o: float, t: float, R2: float) -> float:
    """``r(t, x) = rho(o, x) + (sqrt(t/2) ∧ R2/4)``."""
    return rho_o + min(math.sqrt(t / 2.0), R2 / 4.0)


def anchored_bound(params: BoundParams, geom: AnchorGeometry, t: float) -> BoundValue:
    """Anchored Gaussian upper bound with error functions and spectral bottom."""
    t = float(_positive_t(t))
    flags = list(params.violations())
    if t < 2 * params.R1**2:
        flags.append("t < 2 R1^2")
    if max(geom.rho_ox, geom.rho_oy) > params.R2 / 4:
        flags.append("x or y outside B(R2/4)")
    tw = min(t, params.R2**2)
    n = params.n
    val = (
        params.constant
        * geom.gamma_x
        * geom.gamma_y
        * (1.0 + (geom.rho_ox**2 + geom.rho_oy**2) / tw) ** (n / 2)
        * _middle(geom.rho_xy, t, params.S, n / 2)
        / geom.ball_measure
        * math.exp(-params.Lam * (t - tw) - zeta(geom.rho_xy, t, params.S))
    )
    return BoundValue(val, tuple(flags))


def antitree_bound_intrinsic(
    gamma: float, n: float, rho_ox: float, rho_oy: float, rho_xy: float, ball_measure: float, t: float,
    C_free: float = 1.0, exponent: float | None = None, pair_ok: bool = True,
) -> BoundValue:
    """Anchored anti-tree bound in the degree metric; ``exponent`` defaults to ``n/2``."""
    t = float(_positive_t(t))
    flags = []
    if t < ANTITREE_T_MIN:
        flags.append("t < 2*72^2")
    if n < 2 * dimension(gamma) - 1e-12:
        flags.append("n < 2d")
    if not pair_ok:
        flags.append("x != y on a common sphere")
    e = n / 2 if exponent is None else exponent
    val = (
        C_free
        * (1.0 + (rho_ox**2 + rho_oy**2) / t) ** e
        * _middle(rho_xy, t, 1.0, e)
        / ball_measure
        * math.exp(-zeta(rho_xy, t, 1.0))
    )
    return BoundValue(val, tuple(flags))


def antitree_bound_combinatorial(gamma: float, lx: int, ly: int, t: float, C_free: float = 1.0, C_exp: float | None = None) -> BoundValue:
    """Anti-tree bound in combinatorial levels; ``C_exp`` decouples the exponent constant."""
    t = float(_positive_t(t))
    d = dimension(gamma)
    gap = abs(lx - ly)
    flags = []
    if not t > 2 * max(gap ** (2 - gamma), gap ** ((2 - gamma) / 2)):
        flags.append("t <= 2 max(gap^(2-gamma), gap^((2-gamma)/2))")
    ce = C_free if C_exp is None else C_exp
    val = (
        C_free
        * (1.0 + (lx ** (2 * (gamma + 1)) + ly ** (2 * (gamma + 1))) / t**d)
        / t ** (d / 2)
        * math.exp(-(gap ** (2 - gamma)) / (ce * t))
    )
    return BoundValue(val, tuple(flags))


def antitree2_bound(
    gamma: float, n: float, rho_xy: float, ball_x: float, ball_y: float, t: float,
    C_free: float = 1.0, rho_ox: float = 0.0, rho_oy: float = 0.0, R0: float = ANTITREE_R0, pair_ok: bool = True,
) -> BoundValue:
    """Two-ball anti-tree bound, valid for ``t >= 8 max(rho(x,o), rho(y,o), R0)^2``."""
    t = float(_positive_t(t))
    flags = []
    if t < 8 * max(rho_ox, rho_oy, R0) ** 2:
        flags.append("t < 8 max(rho(x,o), rho(y,o), R0)^2")
    if n < 2 * dimension(gamma) - 1e-12:
        flags.append("n < 2d")
    if not pair_ok:
        flags.append("x != y on a common sphere")
    val = C_free * _middle(rho_xy, t, 1.0, n / 2) / math.sqrt(ball_x * ball_y) * math.exp(-zeta(rho_xy, t, 1.0))
    return BoundValue(val, tuple(flags))


# -- ratio reports ----------------------------------------------------------------------

@dataclass
class RatioReport:
    """Kernel over bound shape on a (t, x, y) grid.

    Kernel values are Dirichlet lower approximations, so the ratios are
    lower bounds for the true ones.  Rows with ``converged`` False or with
    precondition flags are excluded from the summary and counted.
    """

    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    kernel: np.ndarray
    shape: np.ndarray
    flags: list
    converged: np.ndarray

    def __post_init__(self):
        self.ratio = self.kernel / self.shape
        self.used = self.converged & np.array([not f for f in self.flags], dtype=bool)

    @property
    def excluded(self) -> int:
        return int((~self.used).sum())

    @property
    def sup(self) -> float:
        return float(self.ratio[self.used].max())

    @property
    def argmax(self) -> tuple[float, int, int]:
        idx = np.flatnonzero(self.used)[np.argmax(self.ratio[self.used])]
        return float(self.t[idx]), int(self.x[idx]), int(self.y[idx])

    def per_time(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct times and the sup ratio at each."""
        ts = np.unique(self.t[self.used])
        return ts, np.array([self.ratio[self.used & (self.t == s)].max() for s in ts])

    def per_decade(self) -> dict[int, float]:
        dec = np.floor(np.log10(self.t)).astype(int)
        return {int(k): float(self.ratio[self.used & (dec == k)].max()) for k in np.unique(dec[self.used])}

    @property
    def stability(self) -> float:
        """Max over min of the per-time sup ratio."""
        _, s = self.per_time()
        return float(s.max() / s.min())

    @property
    def growth(self) -> float:
        """Last-decade max over first-decade max; per time when one decade only."""
        dec = self.per_decade()
        if len(dec) > 1:
            keys = sorted(dec)
            return dec[keys[-1]] / dec[keys[0]]
        _, s = self.per_time()
        return float(s[-1] / s[0])

    def rows(self):
        for k in range(self.t.size):
            yield (float(self.t[k]), int(self.x[k]), int(self.y[k]), float(self.kernel[k]),
                   float(self.shape[k]), float(self.ratio[k]), ";".join(self.flags[k]))


def ratio_report(t, x, y, kernel, shapes: list, converged=None) -> RatioReport:
    """Assemble a report from kernel values and :class:`BoundValue` shapes."""
    kernel = np.asarray(kernel, dtype=float)
    conv = np.ones(kernel.size, dtype=bool) if converged is None else np.asarray(converged, dtype=bool)
    return RatioReport(
        np.asarray(t, dtype=float), np.asarray(x), np.asarray(y), kernel,
        np.array([s.value for s in shapes]), [tuple(s.flags) for s in shapes], conv,
    )
