"""Pack-or-cover for tree and forest minors.

Each step carves a prefix ``G_ell`` off a bounded region, keeps it as one
packed model and recurses on what is left. If the recursion runs out of
models, the last bag of every carved prefix goes into the cover. Every
level checks the running cover against the size bound.

All vertex sets in outcomes are in terms of the input graph's labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .decomposition import (
    DEFAULT_PW_LIMIT,
    PathDecomposition,
    bounded_regions,
    prefix_graph,
)
from .errors import InvariantViolation, Report
from .graph import Graph, bits, induced_subgraph, remove_vertices, to_mask
from .minors import Forest, MinorModel, Tree, find_forest_minor, find_tree_minor, validate_model


@dataclass
class SolverConfig:
    node_budget: int | None = None
    pw_limit: int = DEFAULT_PW_LIMIT
    # assert the prefix separation invariants at every level; costs extra minor searches
    debug: bool = False
    # when a step ends in a cover, retry with later bounded regions
    explore: bool = True
    explore_budget: int = 2000


@dataclass(frozen=True)
class Instance:
    G: Graph
    trees: tuple
    x: tuple

    def __post_init__(self):
        object.__setattr__(self, "trees", tuple(self.trees))
        object.__setattr__(self, "x", tuple(self.x))
        if len(self.trees) != len(self.x) or not self.trees:
            raise ValueError("need one multiplicity per tree and at least one tree")
        if any(len(a) > len(b) for a, b in zip(self.trees, self.trees[1:])):
            raise ValueError("trees must be sorted by ascending size")
        if any(xi < 0 for xi in self.x) or not any(self.x):
            raise ValueError("multiplicities must be nonnegative with at least one positive")

    @classmethod
    def build(cls, G: Graph, trees: Sequence[Tree], x: Sequence[int]) -> "Instance":
        pairs = sorted(zip(trees, x), key=lambda p: len(p[0]))
        return cls(G, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @property
    def c(self) -> int:
        return len(self.trees)

    @property
    def I(self) -> list:
        return active(self.x)

    @property
    def m(self) -> int:
        return self.I[0]

    @property
    def bound(self) -> int:
        return cover_bound(self.trees, self.x)


def active(x: Sequence[int]) -> list:
    return [i for i, xi in enumerate(x) if xi >= 1]


def cover_bound(trees: Sequence[Tree], x: Sequence[int]) -> int:
    """sum of x_i t_i over needed trees, minus the size of the largest one."""
    I = active(x)
    return sum(x[i] * len(trees[i]) for i in I) - len(trees[I[-1]])


@dataclass(frozen=True)
class TraceStep:
    level: int
    ell: int
    i_prime: int
    B: frozenset
    Y: frozenset
    bags: tuple


@dataclass
class Packing:
    """``models[(i, j)]`` is copy ``j`` (from 0) of tree ``i``, inside ``hosts[(i, j)]``."""

    models: dict
    hosts: dict
    trace: list = field(default_factory=list)
    kind = "packing"


@dataclass
class Cover:
    """``G - X`` has no minor of ``trees[witness]``; a ``None`` witness means
    no minor of the disjoint union of all needed trees."""

    X: frozenset
    witness: int | None
    trace: list = field(default_factory=list)
    kind = "cover"


def _to_parent(H: Graph, members: list, model: MinorModel) -> MinorModel:
    return MinorModel({p: frozenset(members[v] for v in s) for p, s in model.branch_sets.items()})


def find_smallest_prefix(G: Graph, pd: PathDecomposition, trees: Sequence[Tree],
                         I: Sequence[int], node_budget=None):
    """Shortest prefix of ``pd`` whose induced graph hosts a needed tree.

    Returns ``(ell, i_prime, model)`` with ``i_prime`` the smallest index
    hosted at that length and ``model`` in ``G``'s ids.
    """
    union = frozenset()
    for ell in range(1, pd.q + 1):
        union = union | pd.bags[ell - 1]
        members = sorted(union)
        H = induced_subgraph(G, members)
        for i in I:
            model = find_tree_minor(H, trees[i], node_budget)
            if model is not None:
                return ell, i, _to_parent(H, members, model)
    raise InvariantViolation("no prefix of the decomposition hosts a needed tree")


class _Solver:
    def __init__(self, inst: Instance, config: SolverConfig):
        self.trees = inst.trees
        self.config = config
        self.failed: dict = {}
        self.explored = 0

    def has(self, H: Graph, T: Tree) -> bool:
        return find_tree_minor(H, T, self.config.node_budget) is not None

    def run(self, H: Graph, x: tuple, level: int):
        trees, cfg = self.trees, self.config
        I = active(x)
        bound = cover_bound(trees, x)
        if not any(self.has(H, trees[i]) for i in I):
            return Cover(frozenset(), I[0], [])
        t = len(trees[I[0]])
        first_cover = None
        for region in bounded_regions(H, t, trees, I, self.has, cfg.pw_limit):
            if first_cover is not None:
                self.explored += 1
                if self.explored > cfg.explore_budget:
                    break
            ell, i_prime, model = find_smallest_prefix(H, region.pd, trees, I, cfg.node_budget)
            P = frozenset().union(*region.pd.bags[:ell])
            B = region.pd.bags[ell - 1]
            if cfg.debug:
                self._check_step(H, P, B, I)
            step = TraceStep(level, ell, i_prime, H.lift(B), H.lift(region.Y),
                             tuple(H.lift(b) for b in region.pd.bags))
            x2 = list(x)
            x2[i_prime] -= 1
            x2 = tuple(x2)
            rest = remove_vertices(H, P)
            key = (frozenset(rest.labels), x2)
            if key in self.failed:
                out = self.failed[key]
            elif any(x2):
                out = self.run(rest, x2, level + 1)
            else:
                out = Packing({}, {}, [])
            if isinstance(out, Packing):
                out.models[(i_prime, x[i_prime] - 1)] = model.lift(H)
                out.hosts[(i_prime, x[i_prime] - 1)] = H.lift(P)
                out.trace.insert(0, step)
                return out
            self.failed[key] = out
            if first_cover is None:
                X = out.X | H.lift(B)
                if len(X) > bound:
                    raise InvariantViolation(f"cover of size {len(X)} exceeds the bound {bound}")
                first_cover = Cover(X, out.witness, [step] + out.trace)
            if not cfg.explore:
                break
        if first_cover is None:
            raise InvariantViolation(f"no bounded region with bag cap {t} exists")
        return first_cover

    def _check_step(self, H: Graph, P: frozenset, B: frozenset, I: list):
        inner = induced_subgraph(H, P - B)
        for i in I:
            if self.has(inner, self.trees[i]):
                raise InvariantViolation(f"prefix minus its last bag still hosts tree {i}")
        inner_mask, outside = to_mask(P - B), H.full_mask & ~to_mask(P)
        for v in bits(inner_mask):
            if H.adj[v] & outside:
                raise InvariantViolation(f"vertex {H.labels[v]} of the prefix interior has an outside neighbour")


def solve(inst: Instance, config: SolverConfig | None = None):
    """Packing of ``x_i`` disjoint models of each ``T_i``, or a cover.

    A cover ``X`` satisfies ``|X| <= inst.bound`` and ``G - X`` has no minor
    of ``trees[witness]``.
    """
    config = config or SolverConfig()
    return _Solver(inst, config).run(inst.G, inst.x, 0)


def pack_or_cover_tree(G: Graph, T: Tree, k: int, config: SolverConfig | None = None):
    """``k`` disjoint ``T`` models, or ``X`` with ``|X| <= t(k-1)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return solve(Instance(G, (T,), (k,)), config)


def forest_instance(G: Graph, F: Forest, k: int) -> Instance:
    return Instance(G, F.components, (k,) * len(F.components))


def pack_or_cover_forest(G: Graph, F: Forest, k: int, config: SolverConfig | None = None):
    """``k`` disjoint ``F`` models, or ``X`` with ``|X| <= tk - t_max``.

    A packing holds copy ``j`` of component ``i`` at ``models[(i, j)]``;
    copy ``j`` of ``F`` is the union over components.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    config = config or SolverConfig()
    if find_forest_minor(G, F, config.node_budget) is None:
        return Cover(frozenset(), None)
    return solve(forest_instance(G, F, k), config)


def verify_outcome(inst: Instance, out) -> Report:
    """Independent check of a solver outcome against the instance alone."""
    G = inst.G
    report = Report()
    labels = set(G.labels)
    if isinstance(out, Cover):
        unknown = [v for v in out.X if v not in labels]
        if unknown:
            report.add(f"cover contains unknown vertex {unknown[0]!r}")
            return report
        if out.witness is not None and out.witness not in inst.I:
            report.add(f"witness {out.witness} is not a needed tree index")
            return report
        if len(out.X) > inst.bound:
            report.add(f"cover has {len(out.X)} vertices, bound is {inst.bound}")
        rest = remove_vertices(G, G.ids(out.X))
        if out.witness is None:
            if find_forest_minor(rest, Forest(tuple(inst.trees[i] for i in inst.I))) is not None:
                report.add("G - X still has a minor of the union of the needed trees")
        elif find_tree_minor(rest, inst.trees[out.witness]) is not None:
            report.add(f"G - X still has a minor of tree {out.witness}")
        return report
    if not isinstance(out, Packing):
        report.add(f"unknown outcome type {type(out).__name__}")
        return report
    expected = {(i, j) for i in range(inst.c) for j in range(inst.x[i])}
    if set(out.models) != expected:
        report.add(f"packing has models {sorted(out.models)}, expected {sorted(expected)}")
    if set(out.hosts) != set(out.models):
        report.add("every packed model needs a host subgraph")
    used: dict = {}
    for key in sorted(out.models):
        model = out.models[key]
        i = key[0]
        if not 0 <= i < inst.c:
            continue
        flat = model.vertices
        if any(v not in labels for v in flat):
            report.add(f"model {key} uses unknown vertices")
            continue
        report.extend(validate_model(G, inst.trees[i], model.lower(G)), f"model {key}: ")
        host = out.hosts.get(key, frozenset())
        if not flat <= host:
            report.add(f"model {key} leaves its host subgraph")
        for v in host | flat:
            if v in used and used[v] != key:
                report.add(f"vertex {v!r} shared by {used[v]} and {key}")
            used.setdefault(v, key)
    return report
