import random
import sys

import pytest
from hypothesis import strategies as st

from extremecut.graph import build_graph

B6_EDGES = [(0, 1, 1), (0, 2, 1), (1, 2, 1), (3, 4, 1), (3, 5, 1), (4, 5, 1), (2, 3, 1)]


@pytest.fixture
def b6():
    return build_graph(6, B6_EDGES)


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


@pytest.fixture
def k2():
    return build_graph(2, [(0, 1, 7)])


@st.composite
def graphs(draw, min_n=2, max_n=8, max_w=4, connected=False, max_extra=None):
    """Small weighted graphs; with ``connected`` a random spanning tree is included."""
    n = draw(st.integers(min_n, max_n))
    edges = []
    if connected:
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            edges.append((u, v, draw(st.integers(1, max_w))))
    extra = draw(st.integers(0, max_extra if max_extra is not None else 2 * n))
    for _ in range(extra):
        u = draw(st.integers(0, n - 1))
        v = draw(st.integers(0, n - 1))
        edges.append((u, v, draw(st.integers(1, max_w))))
    return build_graph(n, edges)


def random_small_graph(rng, n, wmax=3, connected=True, density=2.0):
    edges = []
    if connected:
        for v in range(1, n):
            edges.append((rng.randrange(v), v, rng.randint(1, wmax)))
    for _ in range(int(density * n)):
        u, v = rng.randrange(n), rng.randrange(n)
        edges.append((u, v, rng.randint(1, wmax)))
    return build_graph(n, edges)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
