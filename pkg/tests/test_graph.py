import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from graphheat.antitree import build_antitree, power_sphere_function
from graphheat.graph import (
    GraphFormatError, WeightedGraph, area_sides, boundary, boundary_weight, coarea_sides, format_graph,
    green_sides, h_omega, interior, laplacian_apply, parse_graph, weighted_degree,
)

from conftest import graphs, vectors


def test_laplacian_examples(two_vertex, path3):
    assert np.allclose(laplacian_apply(two_vertex, [1.0, 0.0]), [1.0, -1.0])
    assert np.allclose(laplacian_apply(path3, [0.0, 1.0, 0.0]), [-1.0, 2.0, -1.0])


def test_weighted_degree_examples():
    g = WeightedGraph.from_edges(2, [(0, 1, 1.0)], measure=[2.0, 1.0])
    assert weighted_degree(g, 0) == 0.5
    at = build_antitree(power_sphere_function(1.0), 4)
    assert weighted_degree(at.graph, 0) == 2.0
    for x in at.sphere_members(1):
        assert weighted_degree(at.graph, x) == 4.0


def test_boundary_examples(two_vertex, path3):
    assert boundary_weight(path3, 1.0, [0, 1, 2]) == 0.0
    assert boundary_weight(two_vertex, 1.0, [0]) == 2.0
    assert boundary_weight(path3, 1.0, [1]) == 4.0
    pairs = {tuple(p) for p in boundary(path3, [1])}
    assert pairs == {(0, 1), (1, 0), (1, 2), (2, 1)}
    assert boundary(path3, []).shape == (0, 2)


def test_interior_examples(path3):
    assert list(interior(path3, [0, 1, 2])) == [0, 1, 2]
    assert list(interior(path3, [0, 1])) == [0]
    assert list(interior(path3, [])) == []


def test_coarea_and_area_examples(two_vertex):
    assert coarea_sides(two_vertex, None, [3.0, 3.0]) == (0.0, 0.0)
    lhs, rhs = coarea_sides(two_vertex, None, [1.0, 0.0])
    assert lhs == pytest.approx(2.0) and rhs == pytest.approx(2.0)
    lhs, rhs = area_sides(two_vertex, [1.0, 0.0], 0.5)
    assert lhs == pytest.approx(0.5) and rhs == pytest.approx(0.5)
    with pytest.raises(ValueError):
        area_sides(two_vertex, [1.0, 0.0], 1.5)
    with pytest.raises(ValueError):
        area_sides(two_vertex, [-1.0, 0.0], 0.5)


def test_h_omega_example(two_vertex):
    assert h_omega(two_vertex, [np.log(2.0), 0.0]) == pytest.approx(0.5)
    assert h_omega(two_vertex, [1.3, 1.3]) == 0.0


@given(graphs(), st.floats(-5, 5))
def test_laplacian_kills_constants(g, c):
    assert np.allclose(laplacian_apply(g, np.full(g.vertex_count, c)), 0.0, atol=1e-12)


@given(graphs(), st.data())
def test_green_identity(g, data):
    f = data.draw(vectors(g.vertex_count))
    h = data.draw(vectors(g.vertex_count))
    lhs, rhs = green_sides(g, f, h)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


@given(graphs(max_vertices=20), st.data())
def test_coarea_identity_with_pair_weights(g, data):
    n = g.vertex_count
    f = data.draw(vectors(n))
    w = np.zeros((n, n))
    vals = data.draw(st.lists(st.floats(0, 3), min_size=2 * g.edge_count, max_size=2 * g.edge_count))
    w[g.edges[:, 0], g.edges[:, 1]] = vals[: g.edge_count]
    w[g.edges[:, 1], g.edges[:, 0]] = vals[g.edge_count:]
    lhs, rhs = coarea_sides(g, w, f)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


@given(graphs(max_vertices=20), st.data(), st.floats(0.05, 1.0))
def test_area_identity(g, data, alpha):
    f = data.draw(vectors(g.vertex_count, 0.0, 3.0))
    lhs, rhs = area_sides(g, f, alpha)
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs))


@given(graphs(), st.data())
def test_area_identity_at_alpha_one_is_layer_cake(g, data):
    f = data.draw(vectors(g.vertex_count, 0.0, 3.0))
    lhs, rhs = area_sides(g, f, 1.0)
    assert lhs == pytest.approx(float(np.sum(g.measure * f)), abs=1e-12)
    assert rhs == pytest.approx(lhs, rel=1e-12, abs=1e-12)


@given(graphs(), st.data())
def test_boundary_symmetry(g, data):
    W = data.draw(st.sets(st.integers(0, g.vertex_count - 1)))
    pairs = {tuple(p) for p in boundary(g, W)}
    assert len(pairs) % 2 == 0
    assert all((y, x) in pairs for x, y in pairs)
    complement = set(range(g.vertex_count)) - W
    assert boundary_weight(g, 1.0, W) == pytest.approx(boundary_weight(g, 1.0, complement))


@given(graphs(), st.data())
def test_h_omega_even_and_nonnegative(g, data):
    w = data.draw(vectors(g.vertex_count))
    h = h_omega(g, w)
    assert h >= 0
    assert h == pytest.approx(h_omega(g, -w), rel=1e-12)


def test_h_omega_zero_iff_constant_on_components():
    g = WeightedGraph.from_edges(4, [(0, 1, 1.0), (2, 3, 2.0)])
    assert h_omega(g, [1.0, 1.0, -2.0, -2.0]) == 0.0
    assert h_omega(g, [1.0, 1.1, -2.0, -2.0]) > 0.0


def test_parse_and_format_round_trip():
    g = WeightedGraph.from_edges(3, [(0, 1, 0.25), (1, 2, 3.0)], measure=[1.0, 0.5, 2.0], truncated=[2])
    h = parse_graph(format_graph(g))
    assert np.array_equal(h.measure, g.measure)
    assert np.array_equal(h.edges, g.edges)
    assert np.array_equal(h.weights, g.weights)
    assert h.truncated == frozenset([2])


@pytest.mark.parametrize("text", [
    "m 0 1\nm 1 1\ne 0 1 1\ne 1 0 2\n",   # duplicate edge
    "m 0 1\ne 0 0 1\n",                   # loop
    "m 0 1\nm 1 1\ne 0 1 -1\n",           # nonpositive weight
    "m 0 0\n",                            # nonpositive measure
    "m 0 1\nm 2 1\n",                     # indices not dense
    "m 0 1\nm 1 1\ne 0 5 1\n",            # unknown vertex
    "m 0 1\nx 0 1\n",                     # unknown record
    "m 0 1\nm 0 2\n",                     # duplicate measure
    "# only a comment\n",
])
def test_parser_rejects(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_parser_skips_comments():
    g = parse_graph("# header\nm 0 1.5\nm 1 1\n\n# edge\ne 1 0 2\n")
    assert g.vertex_count == 2 and g.weight(0, 1) == 2.0 and g.measure[0] == 1.5


def test_graph_validation():
    with pytest.raises(GraphFormatError):
        WeightedGraph.from_edges(2, [(0, 1, 1.0)], measure=[1.0])
    g = WeightedGraph.from_edges(3, [(0, 1, 1.0)])
    assert not g.is_connected()
    with pytest.raises(ValueError):
        g.require_connected()
    with pytest.raises(ValueError):
        g.measure[0] = 3.0
