"""Tree and forest minors with explicit branch-set models.

The search places pattern vertices parent-first. Any model can be reshaped
so that every pattern vertex of degree at most two has a single-vertex
branch set (walk a path through the set and hand the tail to the child),
so only vertices of degree three or more need connected sets enumerated.
Leaves are assigned last, all at once, by bipartite matching against the
still-free host vertices.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import CapacityError, Report
from .graph import Graph, bits, connected_components, induced_subgraph, to_mask

DEFAULT_NODE_BUDGET = 10**7


def default_node_budget() -> int:
    env = os.environ.get("EPACKER_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class Tree:
    graph: Graph

    def __post_init__(self):
        G = self.graph
        if G.n < 1:
            raise ValueError("a tree needs at least one vertex")
        if G.m != G.n - 1 or not G.is_connected_mask(G.full_mask):
            raise ValueError("pattern is not a tree")

    @property
    def t(self) -> int:
        return self.graph.n

    def __len__(self):
        return self.graph.n

    @property
    def key(self) -> tuple:
        return (self.graph.n, tuple(self.graph.edges))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Tree":
        return cls(Graph.from_edges(n, edges))

    @classmethod
    def path(cls, t: int) -> "Tree":
        return cls.from_edges(t, [(i, i + 1) for i in range(t - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Tree":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    def __repr__(self):
        return f"Tree(t={self.t}, edges={self.graph.edges})"


@dataclass(frozen=True)
class Forest:
    """Components sorted by ascending size (ties keep input order)."""

    components: tuple

    @classmethod
    def from_graph(cls, G: Graph) -> "Forest":
        comps = [Tree(induced_subgraph(G, c)) for c in connected_components(G)]
        if not comps:
            raise ValueError("a forest needs at least one vertex")
        return cls(tuple(sorted(comps, key=len)))

    @classmethod
    def of(cls, *trees: Tree) -> "Forest":
        return cls(tuple(sorted(trees, key=len)))

    @property
    def t(self) -> int:
        return sum(len(c) for c in self.components)

    @property
    def t_max(self) -> int:
        return len(self.components[-1])


@dataclass(frozen=True)
class MinorModel:
    """Pattern vertex -> branch set of host vertices."""

    branch_sets: dict

    def __hash__(self):
        return hash(tuple(sorted((k, tuple(sorted(v))) for k, v in self.branch_sets.items())))

    @property
    def vertices(self) -> frozenset:
        return frozenset().union(*self.branch_sets.values()) if self.branch_sets else frozenset()

    def lift(self, G: Graph) -> "MinorModel":
        return MinorModel({p: G.lift(s) for p, s in self.branch_sets.items()})

    def lower(self, G: Graph) -> "MinorModel":
        return MinorModel({p: G.ids(s) for p, s in self.branch_sets.items()})

    def to_text(self) -> str:
        return "".join(
            f"{p}: {{{', '.join(str(x) for x in sorted(s, key=lambda y: (isinstance(y, str), y)))}}}\n"
            for p, s in sorted(self.branch_sets.items())
        )


def validate_model(G: Graph, T: Tree, model: MinorModel) -> Report:
    report = Report()
    sets = model.branch_sets
    pattern = set(T.graph.vertices)
    for p in sorted(pattern - set(sets)):
        report.add(f"pattern vertex {p} has no branch set")
    for p in sorted(set(sets) - pattern, key=str):
        report.add(f"{p!r} is not a pattern vertex")
    owner = {}
    for p in sorted(set(sets) & pattern):
        branch = sets[p]
        if not branch:
            report.add(f"branch set of {p} is empty")
            continue
        bad = [v for v in branch if not (isinstance(v, int) and 0 <= v < G.n)]
        if bad:
            report.add(f"branch set of {p} contains non-vertex {bad[0]!r}")
            continue
        if not G.is_connected_mask(to_mask(branch)):
            report.add(f"branch set of {p} is not connected")
        for v in sorted(branch):
            if v in owner:
                report.add(f"host vertex {v} is in the branch sets of both {owner[v]} and {p}")
            else:
                owner[v] = p
    for a, b in T.graph.edges:
        if a in sets and b in sets and sets[a] and sets[b]:
            if not G.neighborhood(to_mask(sets[a])) & to_mask(sets[b]):
                report.add(f"no host edge between the branch sets of pattern edge {a}-{b}")
    return report


# ------------------------------------------------------------------ search


@dataclass(frozen=True)
class _Plan:
    """Placement order over a forest pattern.

    ``placed`` lists (pid, parent pid or -1, needs a connected set) in
    parent-first order; ``leaves`` lists (pid, parent pid or -1).
    ``nkids[pid]`` counts the children of pid.
    """

    size: int
    placed: tuple
    leaves: tuple
    nkids: tuple
    owner: tuple  # pid -> (component index, pattern vertex)


def _centroid(T: Graph) -> int:
    best, best_v = None, 0
    for v in T.vertices:
        # largest component left after deleting v
        worst = 0
        rest = T.full_mask & ~(1 << v)
        while rest:
            u = (rest & -rest).bit_length() - 1
            comp = T.component_mask(u, rest)
            worst = max(worst, comp.bit_count())
            rest &= ~comp
        if best is None or worst < best:
            best, best_v = worst, v
    return best_v


_plans: dict = {}


def _plan(trees: tuple) -> _Plan:
    key = tuple(T.key for T in trees)
    plan = _plans.get(key)
    if plan is not None:
        return plan
    placed, leaves, owner, nkids = [], [], [], []
    for ci, T in enumerate(trees):
        G = T.graph
        root = _centroid(G)
        base = len(owner)
        pid = {}
        order, parent = [root], {root: -1}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in G.neighbors(v):
                if u not in parent:
                    parent[u] = v
                    order.append(u)
                    queue.append(u)
        for i, v in enumerate(order):
            pid[v] = base + i
            owner.append((ci, v))
            nkids.append(G.degree(v) - (0 if v == root else 1))
        for v in order:
            par = -1 if parent[v] == -1 else pid[parent[v]]
            if G.n == 1 or (v != root and G.degree(v) == 1):
                leaves.append((pid[v], par))
            else:
                placed.append((pid[v], par, G.degree(v) >= 3))
    plan = _Plan(len(owner), tuple(placed), tuple(leaves), tuple(nkids), tuple(owner))
    _plans[key] = plan
    return plan


class _Search:
    def __init__(self, G: Graph, plan: _Plan, budget: int):
        self.G = G
        self.plan = plan
        self.budget = budget
        self.nodes = 0
        self.sets = [0] * plan.size
        self.nbhd = [0] * plan.size

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise CapacityError(f"minor search exceeded its node budget of {self.budget}")

    def run(self):
        if self.G.n < self.plan.size:
            return None
        return self._place(0, self.G.full_mask)

    def _feasible(self, j: int, free: int) -> bool:
        remaining = self.plan.size - j
        if free.bit_count() < remaining:
            return False
        # children of placed vertices need distinct free neighbours
        pending = {}
        for pid, par, _ in self.plan.placed[j:]:
            if par >= 0 and par < len(self.sets) and self.sets[par]:
                pending[par] = pending.get(par, 0) + 1
        for pid, par in self.plan.leaves:
            if par >= 0 and self.sets[par]:
                pending[par] = pending.get(par, 0) + 1
        for par, need in pending.items():
            if (self.nbhd[par] & free).bit_count() < need:
                return False
        return True

    def _candidates(self, par: int, connected: bool, free: int, max_size: int):
        touch = free if par < 0 else self.nbhd[par] & free
        if not connected:
            for v in bits(touch):
                yield 1 << v
            return
        adj = self.G.adj
        level = sorted({1 << v for v in bits(touch)})
        size = 1
        while level and size <= max_size:
            yield from level
            nxt = set()
            for S in level:
                grow = 0
                for v in bits(S):
                    grow |= adj[v]
                for u in bits(grow & free & ~S):
                    nxt.add(S | 1 << u)
            level = sorted(nxt, key=lambda m: (tuple(bits(m))))
            size += 1

    def _place(self, j: int, free: int):
        plan = self.plan
        if j == len(plan.placed):
            return self._match_leaves(free)
        pid, par, connected = plan.placed[j]
        after = plan.size - j - 1
        for S in self._candidates(par, connected, free, free.bit_count() - after):
            self.tick()
            self.sets[pid] = S
            self.nbhd[pid] = self.G.neighborhood(S)
            rest = free & ~S
            if self._feasible(j + 1, rest):
                found = self._place(j + 1, rest)
                if found is not None:
                    return found
        self.sets[pid] = 0
        self.nbhd[pid] = 0
        return None

    def _match_leaves(self, free: int):
        leaves = self.plan.leaves
        allowed = [free if par < 0 else self.nbhd[par] & free for _, par in leaves]
        match_of = {}  # host vertex -> leaf index

        def augment(i, seen):
            for v in bits(allowed[i] & ~seen[0]):
                seen[0] |= 1 << v
                if v not in match_of or augment(match_of[v], seen):
                    match_of[v] = i
                    return True
            return False

        for i in range(len(leaves)):
            self.tick()
            if not augment(i, [0]):
                return None
        sets = list(self.sets)
        for v, i in match_of.items():
            sets[leaves[i][0]] = 1 << v
        return sets


def _minimise(G: Graph, tree_edges: list, sets: dict) -> dict:
    """Drop host vertices from branch sets while the model stays valid."""
    sets = dict(sets)
    nbrs = {p: [] for p in sets}
    for a, b in tree_edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    for p in sorted(sets):
        for v in sorted(bits(sets[p])):
            trial = sets[p] & ~(1 << v)
            if trial and G.is_connected_mask(trial) and all(
                G.neighborhood(trial) & sets[q] for q in nbrs[p]
            ):
                sets[p] = trial
    return sets


_cache: dict = {}
_CACHE_LIMIT = 1 << 18


def _search_forest(G: Graph, trees: tuple, budget: int | None):
    """Models for every tree in ``trees`` (disjoint), or None."""
    key = (G.n, G.adj, tuple(T.key for T in trees))
    if key in _cache:
        return _cache[key]
    plan = _plan(trees)
    raw = _Search(G, plan, default_node_budget() if budget is None else budget).run()
    result = None
    if raw is not None:
        result = []
        for ci, T in enumerate(trees):
            sets = {v: raw[pid] for pid, (c, v) in enumerate(plan.owner) if c == ci}
            sets = _minimise(G, T.graph.edges, sets)
            result.append(MinorModel({v: frozenset(bits(m)) for v, m in sets.items()}))
        result = tuple(result)
    if len(_cache) >= _CACHE_LIMIT:
        _cache.clear()
    _cache[key] = result
    return result


def find_tree_minor(G: Graph, T: Tree, node_budget: int | None = None) -> MinorModel | None:
    """A model of ``T`` in ``G`` or None when ``T`` is not a minor of ``G``.

    Exceeding ``node_budget`` raises :class:`CapacityError`.
    """
    found = _search_forest(G, (T,), node_budget)
    return None if found is None else found[0]


def has_tree_minor(G: Graph, T: Tree, node_budget: int | None = None) -> bool:
    return find_tree_minor(G, T, node_budget) is not None


def find_forest_minor(G: Graph, F: Forest, node_budget: int | None = None) -> dict | None:
    """Disjoint models of all components, keyed by component index."""
    order = sorted(range(len(F.components)), key=lambda i: -len(F.components[i]))
    found = _search_forest(G, tuple(F.components[i] for i in order), node_budget)
    if found is None:
        return None
    return {i: found[pos] for pos, i in enumerate(order)}


def models_disjoint(models: Iterable[MinorModel]) -> bool:
    seen: set = set()
    for model in models:
        vs = model.vertices
        if vs & seen:
            return False
        seen |= vs
    return True
