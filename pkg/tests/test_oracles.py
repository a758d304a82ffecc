import pytest
from hypothesis import given

from conftest import graphs, trees
from epacker.errors import CapacityError
from epacker.graph import Graph, disjoint_union, generate, remove_vertices
from epacker.minors import MinorModel, Tree, models_disjoint, validate_model
from epacker.oracles import (
    has_minor_bruteforce,
    max_packing_bruteforce,
    min_hitting_bruteforce,
    minimal_model_sets,
    pathwidth_reference,
)

P2, P3 = Tree.path(2), Tree.path(3)


def test_k5_p3():
    nu, models = max_packing_bruteforce(generate("complete", 5), P3)
    assert nu == 1 and len(models) == 1
    tau, X = min_hitting_bruteforce(generate("complete", 5), P3)
    assert tau == 3 and len(X) == 3


def test_three_triangles():
    G = disjoint_union(*[generate("complete", 3)] * 3)
    nu, models = max_packing_bruteforce(G, P3)
    assert nu == 3
    assert models_disjoint(models)
    assert all(validate_model(G, P3, m).ok for m in models)


def test_edgeless():
    G = Graph.from_edges(4, [])
    assert max_packing_bruteforce(G, P2) == (0, [])
    assert min_hitting_bruteforce(G, P2) == (0, frozenset())


def test_p3_hitting():
    tau, X = min_hitting_bruteforce(generate("path", 3), P3)
    assert tau == 1
    assert not has_minor_bruteforce(remove_vertices(generate("path", 3), X), P3)


@pytest.mark.parametrize("G,pw", [
    (generate("complete", 4), 3),
    (generate("cycle", 5), 2),
    (generate("path", 7), 1),
    (Graph.from_edges(1, []), 0),
])
def test_pathwidth_reference_examples(G, pw):
    assert pathwidth_reference(G) == pw


def test_minimal_sets_of_p3_in_c4():
    sets = minimal_model_sets(generate("cycle", 4), P3)
    assert sorted(sets) == sorted([0b0111, 0b1011, 0b1101, 0b1110])
    for model in sets.values():
        assert isinstance(model, MinorModel)


def test_limits():
    big = generate("path", 11)
    for call in (max_packing_bruteforce, min_hitting_bruteforce, has_minor_bruteforce):
        with pytest.raises(CapacityError):
            call(big, P2)
    with pytest.raises(CapacityError):
        pathwidth_reference(big)
    assert max_packing_bruteforce(big, P2, limit=11)[0] == 5


@given(graphs(max_n=7), trees(max_t=4))
def test_duality_sandwich(G, T):
    nu, models = max_packing_bruteforce(G, T)
    tau, X = min_hitting_bruteforce(G, T)
    assert nu <= tau <= T.t * nu
    assert models_disjoint(models)
    assert not has_minor_bruteforce(remove_vertices(G, X), T)
