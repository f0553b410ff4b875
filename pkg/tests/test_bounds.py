import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graphheat.bounds import (
    ANTITREE_T_MIN, AnchorGeometry, BoundParams, anchor_radius, anchored_bound, antitree2_bound,
    antitree_bound_combinatorial, antitree_bound_intrinsic, ratio_report, sigma, zeta,
)

# 20-digit reference values
ZETA_1_1 = 0.46716002464644797643        # zeta_1(1, 1)
SIGMA_R_EQ_T = 0.82842712474619009760    # sigma_1(t, t) = 2 (sqrt 2 - 1)
ZETA_ASYMPTOTIC = 0.99999997916666822917  # zeta_1(5, 1e4) * 2e4 / 25


def test_zeta_sigma_values():
    assert zeta(1.0, 1.0) == pytest.approx(ZETA_1_1, rel=1e-15)
    assert sigma(3.0, 3.0) == pytest.approx(SIGMA_R_EQ_T, rel=1e-15)
    assert zeta(5.0, 1e4) * 2e4 / 25 == pytest.approx(ZETA_ASYMPTOTIC, rel=1e-13)
    assert zeta(0.0, 1.0) == 0.0 and sigma(0.0, 1.0) == 0.0
    with pytest.raises(ValueError):
        zeta(1.0, 0.0)
    with pytest.raises(ValueError):
        sigma(1.0, 1.0, S=0.0)


def test_zeta_vectorized():
    r = np.array([0.0, 1.0, 2.0])
    out = zeta(r, 1.0)
    assert out.shape == (3,) and out[1] == pytest.approx(ZETA_1_1)


@given(st.floats(0.0, 1e3), st.floats(0.0, 1e3), st.floats(1e-2, 1e4), st.floats(0.1, 5.0))
def test_zeta_monotone_in_r(r1, r2, t, S):
    lo, hi = sorted((r1, r2))
    assert zeta(lo, t, S) <= zeta(hi, t, S) * (1 + 1e-12) + 1e-300


@given(st.floats(0.0, 1e3), st.floats(1e-2, 1e4), st.floats(1e-2, 1e4), st.floats(0.1, 5.0))
def test_zeta_nonincreasing_in_t(r, t1, t2, S):
    lo, hi = sorted((t1, t2))
    assert zeta(r, hi, S) <= zeta(r, lo, S) * (1 + 1e-12) + 1e-300


@given(st.floats(0.0, 1e3), st.floats(1e-2, 1e4), st.floats(0.1, 5.0), st.floats(0.1, 10.0))
def test_zeta_scaling(r, t, S, c):
    # zeta_S(c r, c t) = c zeta_S(r, t)
    assert zeta(c * r, c * t, S) == pytest.approx(c * zeta(r, t, S), rel=1e-10, abs=1e-300)


@given(st.floats(0.0, 1e3), st.floats(1e-2, 1e4), st.floats(0.1, 5.0))
def test_zeta_below_gaussian(r, t, S):
    # zeta <= r^2 / (2t)
    assert zeta(r, t, S) <= r * r / (2 * t) * (1 + 1e-12) + 1e-300


def test_params_threshold_at_infinity():
    ok = BoundParams(n=8.0, d=4.0, p=math.inf, S=1.0, R1=72.0)
    assert ok.q == 1.0 and ok.beta == pytest.approx(1.125)
    assert ok.radius_threshold() == pytest.approx(288.0)
    assert ok.valid
    assert not BoundParams(n=8.0, d=4.0, p=math.inf, S=1.0, R1=71.0).valid
    assert "R2 >= 4 R1 fails" in BoundParams(n=8.0, d=4.0, p=math.inf, S=1.0, R1=72.0, R2=100.0).violations()
    assert BoundParams(n=2.0, d=4.0, p=2.0, S=1.0, R1=72.0).violations() == ["n must exceed 2"]


@given(st.floats(2.01, 100.0), st.floats(1.01, 100.0))
def test_beta_between_one_and_alpha(n, p):
    bp = BoundParams(n=n, d=1.0, p=p, S=1.0, R1=1.0)
    assert 1.0 < bp.beta < bp.alpha
    assert bp.beta <= 1.0 + 1.0 / bp.q


def _geom(**kw):
    base = dict(gamma_x=1.0, gamma_y=1.0, rho_ox=0.0, rho_oy=0.0, rho_xy=0.0, ball_measure=10.0)
    base.update(kw)
    return AnchorGeometry(**base)


def test_anchored_collapses_at_anchor():
    bp = BoundParams(n=8.0, d=4.0, p=math.inf, S=1.0, R1=72.0)
    t = 2 * 72.0**2
    val = anchored_bound(bp, _geom(), t)
    assert val.ok
    assert val.value == pytest.approx(bp.constant / 10.0)
    assert anchored_bound(bp, _geom(), t - 1).flags == ("t < 2 R1^2",)


@given(st.floats(0.0, 50.0), st.floats(1e4, 1e6), st.floats(0.5, 4.0))
def test_anchored_linear_in_C_free(rxy, t, c):
    base = BoundParams(n=8.0, d=4.0, p=math.inf, S=1.0, R1=72.0)
    scaled = BoundParams(n=8.0, d=4.0, p=math.inf, S=1.0, R1=72.0, C_free=c)
    g = _geom(rho_xy=rxy)
    assert anchored_bound(scaled, g, t).value == pytest.approx(c * anchored_bound(base, g, t).value, rel=1e-12)


def test_antitree_thresholds():
    assert ANTITREE_T_MIN == 10368.0
    ok = antitree_bound_intrinsic(0.5, 6.0, 0, 0, 0, 1.0, ANTITREE_T_MIN)
    assert ok.ok
    assert antitree_bound_intrinsic(0.5, 6.0, 0, 0, 0, 1.0, ANTITREE_T_MIN - 1).flags == ("t < 2*72^2",)
    assert "n < 2d" in antitree_bound_intrinsic(0.5, 3.0, 0, 0, 0, 1.0, 1e5).flags
    assert antitree2_bound(0.5, 6.0, 0, 1, 1, 41472.0).ok
    assert not antitree2_bound(0.5, 6.0, 0, 1, 1, 41471.0).ok
    assert not antitree_bound_combinatorial(1.0, 0, 100, 1.0).ok


@given(st.integers(0, 50), st.integers(0, 50), st.floats(1.0, 1e5), st.floats(0.5, 4.0))
def test_combinatorial_bound_monotone_in_C_free(lx, ly, t, c):
    lo = antitree_bound_combinatorial(1.0, lx, ly, t, C_free=min(1.0, c)).value
    hi = antitree_bound_combinatorial(1.0, lx, ly, t, C_free=max(1.0, c)).value
    assert lo <= hi * (1 + 1e-12)


def test_anchor_radius():
    assert anchor_radius(1.0, 8.0, 100.0) == 3.0
    assert anchor_radius(1.0, 8.0, 4.0) == 2.0


def test_ratio_report_normalization():
    shapes = [antitree_bound_intrinsic(0.5, 6.0, 0, 0, 0, 1.0, t) for t in (1e4, 2e4, 4e4)]
    kernel = [0.5 * s.value for s in shapes]
    rep = ratio_report([1e4, 2e4, 4e4], [0, 0, 0], [0, 0, 0], kernel, shapes)
    assert rep.excluded == 1  # 1e4 is below the time threshold
    assert rep.sup == pytest.approx(0.5)
    assert rep.stability == pytest.approx(1.0)
    assert rep.argmax[0] in (2e4, 4e4)
    c = 3.0
    scaled = [antitree_bound_intrinsic(0.5, 6.0, 0, 0, 0, 1.0, t, C_free=c) for t in (1e4, 2e4, 4e4)]
    rep2 = ratio_report([1e4, 2e4, 4e4], [0, 0, 0], [0, 0, 0], kernel, scaled)
    assert rep2.sup == pytest.approx(rep.sup / c)
