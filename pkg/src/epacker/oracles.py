"""Exhaustive ground truth for packing, hitting and pathwidth.

Nothing here touches the solver or the minor search. Minor containment is
decided from scratch: a vertex set that is inclusion-minimal among those
hosting ``T`` splits into exactly ``t`` connected blocks whose quotient
contains ``T`` as a spanning subgraph, and every host of ``T`` contains
such a set.
"""

from __future__ import annotations

from itertools import combinations

from .errors import CapacityError
from .graph import Graph, bits
from .minors import MinorModel, Tree

DEFAULT_ORACLE_LIMIT = 10


def _check(G: Graph, limit: int):
    if G.n > limit:
        raise CapacityError(f"oracle limited to {limit} vertices, got {G.n}")


def _connected_subsets_with(G: Graph, v: int, region: int):
    """Connected subsets of ``region`` containing ``v``."""
    seen = {1 << v}
    stack = [1 << v]
    while stack:
        S = stack.pop()
        yield S
        grow = 0
        for u in bits(S):
            grow |= G.adj[u]
        for u in bits(grow & region & ~S):
            S2 = S | 1 << u
            if S2 not in seen:
                seen.add(S2)
                stack.append(S2)


def _connected_partitions(G: Graph, region: int, blocks: int):
    if blocks == 0:
        if region == 0:
            yield []
        return
    if region.bit_count() < blocks:
        return
    v = (region & -region).bit_length() - 1
    for C in _connected_subsets_with(G, v, region):
        if (region & ~C).bit_count() < blocks - 1:
            continue
        for rest in _connected_partitions(G, region & ~C, blocks - 1):
            yield [C] + rest


def _embed_spanning(T: Tree, quotient: list):
    """Bijection pattern vertex -> block with every tree edge a quotient edge."""
    t = T.t
    order = sorted(T.graph.vertices, key=lambda v: -T.graph.degree(v))
    assign: dict = {}
    used = [False] * t

    def go(k):
        if k == t:
            return dict(assign)
        p = order[k]
        for b in range(t):
            if used[b]:
                continue
            if all(quotient[b][assign[q]] for q in T.graph.neighbors(p) if q in assign):
                assign[p] = b
                used[b] = True
                found = go(k + 1)
                if found:
                    return found
                del assign[p]
                used[b] = False
        return None

    return go(0)


def _model_on(G: Graph, T: Tree, S: int):
    for blocks in _connected_partitions(G, S, T.t):
        quotient = [[False] * T.t for _ in range(T.t)]
        for a in range(T.t):
            nb = 0
            for u in bits(blocks[a]):
                nb |= G.adj[u]
            for b in range(T.t):
                quotient[a][b] = a != b and bool(nb & blocks[b])
        emb = _embed_spanning(T, quotient)
        if emb is not None:
            return MinorModel({p: frozenset(bits(blocks[b])) for p, b in emb.items()})
    return None


def minimal_model_sets(G: Graph, T: Tree, limit: int = DEFAULT_ORACLE_LIMIT) -> dict:
    """Every inclusion-minimal vertex set hosting ``T``, mask -> model."""
    _check(G, limit)
    n = G.n
    hosts = bytearray(1 << n)
    minimal = {}
    for S in sorted(range(1 << n), key=int.bit_count):
        if any(hosts[S & ~(1 << v)] for v in bits(S)):
            hosts[S] = 1
            continue
        if S.bit_count() >= T.t and G.is_connected_mask(S):
            model = _model_on(G, T, S)
            if model is not None:
                hosts[S] = 1
                minimal[S] = model
    return minimal


def max_packing_bruteforce(G: Graph, T: Tree, limit: int = DEFAULT_ORACLE_LIMIT):
    """``(nu, models)``: most pairwise disjoint ``T`` models in ``G``."""
    sets = minimal_model_sets(G, T, limit)
    masks = sorted(sets, key=lambda m: (m.bit_count(), m))
    best: list = []

    def go(start, used, chosen):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        free = (G.full_mask & ~used).bit_count()
        if len(chosen) + free // T.t <= len(best):
            return
        for k in range(start, len(masks)):
            if not masks[k] & used:
                chosen.append(masks[k])
                go(k + 1, used | masks[k], chosen)
                chosen.pop()

    go(0, 0, [])
    return len(best), [sets[m] for m in best]


def min_hitting_bruteforce(G: Graph, T: Tree, limit: int = DEFAULT_ORACLE_LIMIT):
    """``(tau, X)``: smallest vertex set meeting every ``T`` model."""
    sets = list(minimal_model_sets(G, T, limit))
    for size in range(G.n + 1):
        for X in combinations(range(G.n), size):
            mask = sum(1 << v for v in X)
            if all(S & mask for S in sets):
                return size, frozenset(X)
    raise AssertionError("removing every vertex always destroys all models")


def has_minor_bruteforce(G: Graph, T: Tree, limit: int = DEFAULT_ORACLE_LIMIT) -> bool:
    return bool(minimal_model_sets(G, T, limit))


def pathwidth_reference(G: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Vertex separation number minimised over all vertex orderings."""
    _check(G, limit)
    if G.n == 0:
        return -1
    best = G.n - 1

    def go(placed: int, worst: int):
        nonlocal best
        if placed == G.full_mask:
            best = min(best, worst)
            return
        for v in bits(G.full_mask & ~placed):
            S = placed | 1 << v
            sep = sum(1 for u in bits(S) if G.adj[u] & ~S)
            cost = max(worst, sep)
            if cost < best:
                go(S, cost)

    go(0, 0)
    return best
