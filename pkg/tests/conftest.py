import os
import random

import hypothesis
import hypothesis.strategies as st
import networkx as nx
import pytest

from epacker.graph import Graph
from epacker.minors import Tree

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES = []


def from_nx(g) -> Graph:
    index = {v: i for i, v in enumerate(g.nodes())}
    return Graph.from_edges(g.number_of_nodes(), [(index[u], index[v]) for u, v in g.edges()])


def all_trees(t: int) -> list:
    if t == 1:
        return [Tree.path(1)]
    return [Tree(from_nx(g)) for g in nx.nonisomorphic_trees(t)]


def atlas(connected_only=False) -> list:
    """Every graph on 1..7 vertices up to isomorphism."""
    out = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == 0:
            continue
        if connected_only and not nx.is_connected(g):
            continue
        out.append(from_nx(g))
    return out


def random_graph(rng: random.Random, n: int, prob: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < prob])


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def trees(draw, max_t=4):
    t = draw(st.integers(1, max_t))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, t)]
    return Tree.from_edges(t, [(p, v + 1) for v, p in enumerate(parents)])


@pytest.fixture(scope="session")
def connected_corpus():
    return atlas(connected_only=True)


@pytest.fixture(scope="session")
def full_corpus():
    return atlas()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
