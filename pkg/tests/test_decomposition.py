import pytest
from hypothesis import given, strategies as st

from conftest import all_trees, graphs
from epacker.decomposition import (
    BoundedRegion,
    PathDecomposition,
    bounded_regions,
    constrained_decomposition,
    extract_bounded_region,
    parse_pd,
    pathwidth_exact,
    prefix_graph,
    validate_pd,
)
from epacker.errors import CapacityError
from epacker.graph import Graph, generate, induced_subgraph
from epacker.minors import Tree, has_tree_minor
from epacker.oracles import pathwidth_reference

P3 = generate("path", 3)


def test_validate_pd_accepts_path_pairs():
    pd = PathDecomposition(({0, 1}, {1, 2}))
    assert validate_pd(P3, pd).ok
    assert pd.width == 1


def test_validate_pd_reports_uncovered_edge():
    report = validate_pd(P3, PathDecomposition(({0, 1}, {2})))
    assert not report
    assert report.violations == ["edge 1-2 is in no bag"]


def test_validate_pd_reports_gap():
    report = validate_pd(P3, PathDecomposition(({0}, {1}, {0}, {1, 2}, {0, 1})))
    assert any("vertex 0 is missing from bag 1" in v for v in report.violations)


def test_validate_pd_reports_uncovered_vertex_and_stranger():
    report = validate_pd(P3, PathDecomposition(({0, 1}, {1, 7})))
    text = str(report)
    assert "vertex 2 is in no bag" in text
    assert "contains 7" in text


@pytest.mark.parametrize("G,width", [
    (generate("complete", 4), 3),
    (generate("path", 5), 1),
    (generate("complete_ternary_tree", 2), 2),
    (generate("cycle", 5), 2),
    (Graph.from_edges(3, []), 0),
    (Graph.from_edges(0, []), -1),
])
def test_pathwidth_examples(G, width):
    pw, pd = pathwidth_exact(G)
    assert pw == width
    assert pd.width == width
    assert validate_pd(G, pd).ok


def test_pathwidth_p5_gives_pairwise_bags():
    assert pathwidth_exact(generate("path", 5))[1].bags == tuple(
        frozenset({i, i + 1}) for i in range(4)
    )


@pytest.mark.parametrize("n", range(1, 9))
def test_pathwidth_of_cliques(n):
    assert pathwidth_exact(generate("complete", n))[0] == n - 1


@pytest.mark.parametrize("t", range(3, 7))
def test_trees_have_small_pathwidth(t):
    for T in all_trees(t):
        assert pathwidth_exact(T.graph)[0] <= t - 2


def test_pathwidth_capacity():
    with pytest.raises(CapacityError):
        pathwidth_exact(generate("path", 17))
    assert pathwidth_exact(generate("path", 17), limit=17)[0] == 1


@given(graphs(max_n=7))
def test_pathwidth_matches_reference(G):
    assert pathwidth_exact(G)[0] == pathwidth_reference(G)


@given(graphs(max_n=7), st.integers(0, 127))
def test_pathwidth_monotone_under_induced_subgraphs(G, pick):
    S = [v for v in G.vertices if pick >> v & 1]
    assert pathwidth_exact(induced_subgraph(G, S))[0] <= pathwidth_exact(G)[0]


def test_pd_text_roundtrip():
    pd = pathwidth_exact(generate("cycle", 5))[1]
    assert parse_pd(pd.to_text()) == pd


def test_extract_small_pathwidth_takes_whole_graph():
    P4 = generate("path", 4)
    region = extract_bounded_region(P4, 3, [Tree.path(3)], [0])
    assert region.Y == frozenset(range(4))
    assert region.pd.width == 1


def test_extract_k4_p3():
    K4 = generate("complete", 4)
    region = extract_bounded_region(K4, 3, [Tree.path(3)], [0])
    assert region == BoundedRegion(frozenset({0, 1, 2}), PathDecomposition(({0, 1, 2},)), 3)
    assert region.validate(K4).ok


def test_extract_c6_p3():
    C6 = generate("cycle", 6)
    region = extract_bounded_region(C6, 3, [Tree.path(3)], [0])
    assert region.Y == {0, 1, 2}
    assert region.pd.bags == (frozenset({0, 1, 2}),)
    assert region.validate(C6).ok


def test_region_for_claw_in_net():
    # triangle with a pendant at each corner
    G = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)])
    claw = Tree.star(3)
    assert has_tree_minor(G, claw)
    region = extract_bounded_region(G, 4, [claw], [0])
    assert region.validate(G).ok
    assert has_tree_minor(induced_subgraph(G, region.Y), claw)


def test_bounded_region_validation_reports_boundary():
    K4 = generate("complete", 4)
    bad = BoundedRegion(frozenset({0, 1, 2}), PathDecomposition(({0, 1}, {1, 2})), 3)
    assert "boundary" in str(bad.validate(K4))


def test_constrained_decomposition_infeasible():
    # all four vertices of this K4 piece see the outside, cap 3 is too small
    G = generate("complete", 5)
    assert constrained_decomposition(G, {0, 1, 2, 3}, 3) is None


@given(graphs(max_n=7), st.sampled_from([t for s in (1, 2, 3, 4) for t in all_trees(s)]))
def test_regions_satisfy_contract(G, T):
    if not has_tree_minor(G, T):
        return
    for region in bounded_regions(G, T.t, [T], [0]):
        assert region.validate(G).ok
        assert has_tree_minor(induced_subgraph(G, region.Y), T)


def test_prefix_graph_examples():
    P5 = generate("path", 5)
    pd = pathwidth_exact(P5)[1]
    assert prefix_graph(P5, pd, pd.q) == P5
    assert prefix_graph(P5, pd, 1).labels == (0, 1)
    P3_prefix = prefix_graph(P5, pd, 2)
    assert P3_prefix.labels == (0, 1, 2) and P3_prefix.edges == [(0, 1), (1, 2)]
    with pytest.raises(ValueError):
        prefix_graph(P5, pd, 0)
    with pytest.raises(ValueError):
        prefix_graph(P5, pd, pd.q + 1)
