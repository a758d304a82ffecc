import pytest
from hypothesis import given, strategies as st

from conftest import all_trees, graphs, trees
from epacker.decomposition import pathwidth_exact
from epacker.errors import CapacityError
from epacker.graph import Graph, disjoint_union, generate, induced_subgraph
from epacker.minors import (
    Forest,
    MinorModel,
    Tree,
    find_forest_minor,
    find_tree_minor,
    has_tree_minor,
    models_disjoint,
    validate_model,
)
from epacker.oracles import has_minor_bruteforce

P3 = Tree.path(3)
CLAW = Tree.star(3)


def test_validate_model_accepts_contracted_path():
    model = MinorModel({0: {0}, 1: {1, 2}, 2: {3}})
    assert validate_model(generate("path", 4), P3, model).ok


def test_validate_model_rejects_disconnected_branch():
    report = validate_model(generate("path", 4), P3, MinorModel({0: {1}, 1: {0, 2}, 2: {3}}))
    assert "branch set of 1 is not connected" in report.violations


def test_validate_model_rejects_overlap_and_missing_edge():
    G = generate("path", 4)
    report = validate_model(G, P3, MinorModel({0: {0, 1}, 1: {1}, 2: {3}}))
    text = str(report)
    assert "host vertex 1" in text
    assert "pattern edge 1-2" in text


def test_validate_model_rejects_missing_and_extra_keys():
    report = validate_model(generate("path", 4), P3, MinorModel({0: {0}, 1: {1}, 5: {2}}))
    assert "pattern vertex 2 has no branch set" in report.violations
    assert "5 is not a pattern vertex" in report.violations


def test_p4_in_k4():
    model = find_tree_minor(generate("complete", 4), Tree.path(4))
    assert model is not None
    assert all(len(s) == 1 for s in model.branch_sets.values())


def test_claw_not_in_cycle():
    assert find_tree_minor(generate("cycle", 4), CLAW) is None
    assert not has_tree_minor(generate("cycle", 8), CLAW)


def test_p3_not_in_matching():
    assert find_tree_minor(disjoint_union(generate("path", 2), generate("path", 2)), P3) is None


def test_star_needs_contraction_in_double_star():
    # two adjacent centres with two leaves each; max degree is 3
    G = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    model = find_tree_minor(G, Tree.star(4))
    assert model is not None
    assert validate_model(G, Tree.star(4), model).ok
    assert max(len(s) for s in model.branch_sets.values()) == 2
    assert find_tree_minor(G, Tree.star(5)) is None


def test_single_vertex_pattern():
    model = find_tree_minor(generate("path", 3), Tree.path(1))
    assert model == MinorModel({0: frozenset({0})})
    assert find_tree_minor(Graph.from_edges(0, []), Tree.path(1)) is None


def test_models_are_inclusion_minimal():
    # a long path contracts to P2 using only two adjacent vertices
    model = find_tree_minor(generate("path", 9), Tree.path(2))
    assert len(model.vertices) == 2


def test_forest_examples():
    G = disjoint_union(generate("complete", 3), generate("path", 2))
    F = Forest.of(Tree.path(2), P3)
    found = find_forest_minor(G, F)
    assert found is not None
    assert models_disjoint(found.values())
    for i, T in enumerate(F.components):
        assert validate_model(G, T, found[i]).ok
    assert find_forest_minor(generate("path", 4), F) is None
    assert find_forest_minor(generate("path", 5), F) is not None


def test_forest_from_graph_sorts_components():
    F = Forest.from_graph(disjoint_union(generate("path", 3), generate("path", 1)))
    assert [len(T) for T in F.components] == [1, 3]
    assert F.t == 4 and F.t_max == 3


def test_tree_rejects_non_trees():
    with pytest.raises(ValueError):
        Tree(generate("cycle", 3))
    with pytest.raises(ValueError):
        Tree(disjoint_union(generate("path", 2), generate("path", 2)))
    with pytest.raises(ValueError):
        Tree(Graph.from_edges(0, []))


def test_node_budget_exhaustion():
    G = generate("erdos_renyi", 12, 0.3, seed=2024)
    with pytest.raises(CapacityError):
        find_tree_minor(G, Tree.star(6), node_budget=1)


def test_node_budget_from_environment(monkeypatch):
    monkeypatch.setenv("EPACKER_NODE_BUDGET", "1")
    with pytest.raises(CapacityError):
        find_tree_minor(generate("erdos_renyi", 11, 0.35, seed=77), Tree.star(5))


def test_agrees_with_bruteforce_on_small_graphs(full_corpus):
    patterns = [T for t in range(1, 5) for T in all_trees(t)]
    for G in full_corpus:
        for T in patterns:
            model = find_tree_minor(G, T)
            assert (model is not None) == has_minor_bruteforce(G, T), (G, T)
            if model is not None:
                assert validate_model(G, T, model).ok


@given(graphs(max_n=8), trees(max_t=6))
def test_agrees_with_bruteforce_random(G, T):
    model = find_tree_minor(G, T)
    assert (model is not None) == has_minor_bruteforce(G, T)
    if model is not None:
        assert validate_model(G, T, model).ok


@given(graphs(max_n=8), trees(max_t=5), st.integers(0, 255))
def test_minor_monotone_under_subgraphs(G, T, pick):
    H = induced_subgraph(G, [v for v in G.vertices if pick >> v & 1])
    if has_tree_minor(H, T):
        assert has_tree_minor(G, T)


@given(graphs(max_n=8), trees(max_t=5))
def test_large_pathwidth_forces_tree_minor(G, T):
    if G.n and pathwidth_exact(G)[0] >= T.t - 1:
        assert has_tree_minor(G, T)
