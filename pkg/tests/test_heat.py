import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from graphheat.antitree import build_antitree, power_sphere_function, reduce
from graphheat.graph import WeightedGraph, laplacian_apply
from graphheat.heat import (
    HeatKernel, assemble_dirichlet, decompose, exhaustion_converge, geometric_grid, lambda_bottom,
)
from graphheat.metric import path_degree_metric
from graphheat.suites import sphere_diagonal_correction

from conftest import graphs

# two-vertex kernel (1 +- e^{-2t})/2, 20 digits
TWO_VERTEX = {
    0.1: (0.90936537653899092479, 0.090634623461009075210),
    1.0: (0.56766764161830634595, 0.43233235838169365405),
    10.0: (0.50000000103057681122, 0.49999999896942318878),
}


def kernel_on(g, A=None, cutoff=None):
    A = range(g.vertex_count) if A is None else A
    return HeatKernel(decompose(assemble_dirichlet(g, A), cutoff=cutoff))


def test_assembly_examples(two_vertex):
    gen = assemble_dirichlet(two_vertex, [0, 1])
    assert np.array_equal(gen.matrix.toarray(), [[1.0, -1.0], [-1.0, 1.0]])
    gen = assemble_dirichlet(two_vertex, [0])
    assert np.array_equal(gen.matrix.toarray(), [[1.0]])


def test_assembly_symmetrized_by_measure():
    g = WeightedGraph.from_edges(2, [(0, 1, 1.0)], measure=[4.0, 1.0])
    L = assemble_dirichlet(g, [0, 1]).matrix.toarray()
    assert np.allclose(L, [[0.25, -0.5], [-0.5, 1.0]])


def test_assembly_rejects_empty_and_oversized(two_vertex):
    with pytest.raises(ValueError):
        assemble_dirichlet(two_vertex, [])
    with pytest.raises(ValueError):
        assemble_dirichlet(two_vertex, [0, 1], max_size=1)


@pytest.mark.parametrize("t", sorted(TWO_VERTEX))
def test_two_vertex_closed_form(two_vertex, t):
    hk = kernel_on(two_vertex)
    diag, off = TWO_VERTEX[t]
    assert hk(t, 0, 0) == pytest.approx(diag, abs=1e-15)
    assert hk(t, 0, 1) == pytest.approx(off, abs=1e-15)


def test_time_zero_is_inverse_measure():
    g = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 2.0)], measure=[2.0, 1.0, 0.5])
    P = kernel_on(g).full(0.0)
    assert np.allclose(P, np.diag([0.5, 1.0, 2.0]))


def test_negative_time_rejected(two_vertex):
    with pytest.raises(ValueError):
        kernel_on(two_vertex)(-1.0, 0, 0)


def test_matches_matrix_exponential():
    g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (1, 2, 0.5), (2, 3, 2.0), (0, 2, 1.5)], measure=[1, 2, 0.5, 3])
    A = [0, 1, 2]
    gen = assemble_dirichlet(g, A)
    m = g.measure[A]
    # P_t = exp(-t Delta_A), kernel = P_t(x,y)/m(y)
    Delta = np.diag(1 / np.sqrt(m)) @ gen.matrix.toarray() @ np.diag(np.sqrt(m))
    P = expm(-1.3 * Delta) / m[None, :]
    assert np.allclose(kernel_on(g, A).full(1.3), P, atol=1e-14)


@settings(max_examples=40)
@given(graphs(max_vertices=10), st.floats(0.01, 5.0), st.floats(0.01, 5.0))
def test_semigroup_symmetry_positivity(g, s, t):
    hk = kernel_on(g)
    Ps, Pt, Pst = hk.full(s), hk.full(t), hk.full(s + t)
    assert np.allclose(Ps @ np.diag(g.measure) @ Pt, Pst, atol=1e-12)
    assert np.allclose(Pst, Pst.T, atol=1e-13)
    assert np.all(Pst >= 0)


@settings(max_examples=40)
@given(graphs(max_vertices=10), st.floats(0.0, 10.0))
def test_mass_is_one_on_finite_graph(g, t):
    assert np.allclose(kernel_on(g).mass(t), 1.0, atol=1e-12)


@settings(max_examples=40)
@given(graphs(min_vertices=3, max_vertices=10), st.floats(0.01, 5.0))
def test_dirichlet_domain_monotone(g, t):
    n = g.vertex_count
    small = list(range(n - 1))
    P_small = kernel_on(g, small).full(t)
    P_big = kernel_on(g).full(t)[np.ix_(small, small)]
    assert np.all(P_small <= P_big + 1e-13)
    assert np.all(kernel_on(g, small).mass(t) <= 1.0 + 1e-12)


@settings(max_examples=30)
@given(graphs(max_vertices=10), st.floats(0.05, 3.0))
def test_heat_equation_residual(g, t):
    hk = kernel_on(g)
    h = 1e-5
    dt = (hk.full(t + h) - hk.full(t - h)) / (2 * h)
    lap = np.column_stack([laplacian_apply(g, hk.full(t)[:, y]) for y in range(g.vertex_count)])
    assert np.allclose(dt, -lap, atol=1e-6)


def test_cutoff_kernel_within_tail_bound():
    g = reduce(power_sphere_function(1.0), 40).graph
    A = range(40)
    exact = kernel_on(g, A)
    dec = decompose(assemble_dirichlet(g, A), cutoff=0.5)
    cut = HeatKernel(dec)
    assert not dec.complete
    t = 20.0
    err = abs(exact(t, 0, 3) - cut(t, 0, 3))
    assert err <= dec.tail_bound(t) / np.sqrt(g.measure[0] * g.measure[3])


def test_exhaustion_two_vertex_whole_graph(two_vertex):
    rho = path_degree_metric(two_vertex)
    res = exhaustion_converge(two_vertex, rho, 0, 1.0, 1e-12)
    assert res.converged and len(res.trace) == 1
    assert res.trace[0].values[0, 0] == pytest.approx(TWO_VERTEX[1.0][0], abs=1e-15)


def test_exhaustion_on_line_monotone_and_converges(line1):
    g, rho = line1
    res = exhaustion_converge(g, rho, 0, 4.0, 1e-10, probes=[(0, 0), (0, 3)], times=[1.0, 4.0])
    assert res.converged and res.monotone
    assert len(res.trace) >= 2


def test_exhaustion_reports_cap(line1):
    g, rho = line1
    res = exhaustion_converge(g, rho, 0, 1e5, 1e-12, max_size=20)
    assert not res.converged


def test_lambda_bottom():
    g = WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])
    lam = lambda_bottom(g, [[0], [0, 1], [0, 1, 2]])
    assert lam[0] == pytest.approx(1.0)
    assert np.all(np.diff(lam) <= 1e-14)
    assert lam[-1] == pytest.approx(0.0, abs=1e-14)
    with pytest.raises(ValueError):
        lambda_bottom(g, [[0, 1], [1, 2]])


def test_geometric_grid():
    grid = geometric_grid(1.0, 10.0, 2.0)
    assert grid.tolist() == [1.0, 2.0, 4.0, 8.0, 10.0]
    assert geometric_grid(1.0, 4.0, 2.0).tolist() == [1.0, 2.0, 4.0]
    with pytest.raises(ValueError):
        geometric_grid(2.0, 1.0)


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("t", [0.1, 0.5, 2.0])
def test_sphere_diagonal_gap_formula(k, t):
    s = power_sphere_function(1.0)
    N = 6
    at = build_antitree(s, N + 1)
    line = reduce(s, N + 1)
    hk_at = kernel_on(at.graph, at.ball_levels(N))
    hk_line = kernel_on(line.graph, range(N + 1))
    x0, x1 = at.sphere_members(k)[:2]
    y = at.sphere_members(k + 1)[0]
    gap = hk_at(t, x0, x0) - hk_line(t, k, k)
    assert gap == pytest.approx(sphere_diagonal_correction(s, k, t), abs=1e-14)
    # off the diagonal the reduction is exact
    assert hk_at(t, x0, x1) == pytest.approx(hk_line(t, k, k) - (hk_at(t, x0, x0) - hk_line(t, k, k)) / (s(k) - 1), abs=1e-14)
    assert hk_at(t, x0, y) == pytest.approx(hk_line(t, k, k + 1), abs=1e-14)
