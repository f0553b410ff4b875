import numpy as np
import pytest
from hypothesis import strategies as st

from graphheat.antitree import power_sphere_function, reduce
from graphheat.graph import WeightedGraph
from graphheat.metric import path_degree_metric


@pytest.fixture
def two_vertex():
    return WeightedGraph.from_edges(2, [(0, 1, 1.0)])


@pytest.fixture
def path3():
    return WeightedGraph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)])


@pytest.fixture(scope="session")
def line1():
    """gamma = 1 reduced line on levels 0..200 with its degree metric."""
    line = reduce(power_sphere_function(1.0), 200)
    return line.graph, path_degree_metric(line.graph)


@st.composite
def graphs(draw, min_vertices=2, max_vertices=12):
    """Connected weighted graphs: random spanning tree plus extra edges."""
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = {(draw(st.integers(0, k - 1)), k) for k in range(1, n)}
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    pairs |= {(min(a, b), max(a, b)) for a, b in extra if a != b}
    pos = st.floats(0.1, 5.0, allow_nan=False)
    triples = [(i, j, draw(pos)) for i, j in sorted(pairs)]
    measure = draw(st.lists(pos, min_size=n, max_size=n))
    return WeightedGraph.from_edges(n, triples, measure)


def vectors(n, lo=-3.0, hi=3.0):
    return st.lists(st.floats(lo, hi, allow_nan=False), min_size=n, max_size=n).map(np.array)


_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion checked by the test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    detail = dict(item.user_properties).get("detail", "")
    _CRITERIA.append((str(marker.args[0]), call.excinfo is None, detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in sorted(_CRITERIA, key=lambda c: [int(p) if p.isdigit() else p for p in c[0].replace("/", ".").split(".")]):
        terminalreporter.write_line(f"criterion {label:<8} {'PASS' if ok else 'FAIL'}  {detail}")
