"""Pack-or-cover for subgraphs of large pathwidth.

Phase one runs the tree solver on the complete ternary tree of height
``p``. If that ends in a cover ``X1``, phase two sweeps an optimal path
decomposition of ``G - X1`` and either collects ``k`` disjoint connected
members of pathwidth at least ``p`` or stabs all of them with at most
``k - 1`` bags.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .decomposition import DEFAULT_PW_LIMIT, PathDecomposition, connected_sets, pathwidth_exact
from .errors import InvariantViolation, Report
from .graph import Graph, bits, generate, induced_mask, induced_subgraph, remove_vertices
from .minors import Tree
from .solver import Packing, SolverConfig, pack_or_cover_tree

# Queried with an induced subgraph; answers with a vertex set of it or None.
MemberOracle = Callable[[Graph], "frozenset | None"]


@dataclass
class HellyOutcome:
    members: list | None = None
    bags: list | None = None

    @property
    def packed(self) -> bool:
        return self.members is not None


def helly_pack_or_stab(G: Graph, pd: PathDecomposition, oracle: MemberOracle, d: int) -> HellyOutcome:
    """``d`` disjoint members, or at most ``d - 1`` bag indices (from 0)
    whose union meets every member.

    Each round takes the shortest run of bags after the previous pick that,
    minus all picked bags, still contains a member; the run's last bag is
    picked. A connected member occupies a contiguous run of bags, so the
    picked bag meets every member reaching that position.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    members, picked = [], []
    removed = frozenset()
    start = 0
    while len(members) < d:
        region = frozenset()
        for r in range(start, pd.q):
            region |= pd.bags[r]
            live = sorted(region - removed)
            found = oracle(induced_subgraph(G, live)) if live else None
            if found is not None:
                members.append(frozenset(live[v] for v in found))
                picked.append(r)
                removed |= pd.bags[r]
                start = r + 1
                break
        else:
            return HellyOutcome(bags=picked)
    return HellyOutcome(members=members)


def edge_oracle(H: Graph):
    """Members are single edges."""
    for u, v in H.edges:
        return frozenset((u, v))
    return None


def pw_member_oracle(p: int, limit: int = DEFAULT_PW_LIMIT) -> MemberOracle:
    """Smallest connected vertex set inducing pathwidth at least ``p``.

    Being smallest, it is inclusion-minimal among all vertex sets of
    pathwidth ``>= p``.
    """
    if p < 1:
        raise ValueError("p must be at least 1")

    def query(H: Graph):
        if pathwidth_exact(H, limit)[0] < p:
            return None
        for S in connected_sets(H, min_size=p + 1):
            if pathwidth_exact(induced_mask(H, S), limit)[0] >= p:
                return frozenset(bits(S))
        raise InvariantViolation("graph of large pathwidth has no connected witness")

    return query


@dataclass
class PwPacking:
    """``members`` are disjoint label sets, each inducing pathwidth >= p."""

    members: list
    phase: int
    kind = "pw-packing"


@dataclass
class PwCover:
    X: frozenset
    X1: frozenset
    X2: frozenset
    bags_selected: list = field(default_factory=list)
    kind = "pw-cover"


def ternary_size(p: int) -> int:
    return (3 ** (p + 1) - 1) // 2


def pathwidth_pack_or_cover(G: Graph, p: int, k: int, config: SolverConfig | None = None):
    """``k`` disjoint subgraphs of pathwidth ``>= p``, or ``X`` with
    ``|X| <= 2 * 3**(p+1) * k`` and ``pw(G - X) < p``."""
    if p < 1 or k < 1:
        raise ValueError("p and k must be at least 1")
    config = config or SolverConfig()
    Tp = Tree(generate("complete_ternary_tree", p))
    first = pack_or_cover_tree(G, Tp, k, config)
    if isinstance(first, Packing):
        return PwPacking([first.hosts[key] for key in sorted(first.hosts)], phase=1)
    X1 = first.X
    if len(X1) > ternary_size(p) * (k - 1):
        raise InvariantViolation(f"phase-one cover has {len(X1)} vertices")
    rest = remove_vertices(G, G.ids(X1))
    width, pd = pathwidth_exact(rest, config.pw_limit)
    if width >= ternary_size(p) - 1:
        raise InvariantViolation(f"graph without the ternary tree minor has pathwidth {width}")
    second = helly_pack_or_stab(rest, pd, pw_member_oracle(p, config.pw_limit), k)
    if second.packed:
        return PwPacking([rest.lift(m) for m in second.members], phase=2)
    X2 = frozenset().union(*(rest.lift(pd.bags[r]) for r in second.bags))
    X = X1 | X2
    if pathwidth_exact(remove_vertices(G, G.ids(X)), config.pw_limit)[0] >= p:
        raise InvariantViolation("stabbing bags left a subgraph of large pathwidth")
    return PwCover(X, X1, X2, list(second.bags))


def verify_pw_outcome(G: Graph, p: int, k: int, out, limit: int = DEFAULT_PW_LIMIT) -> Report:
    report = Report()
    if isinstance(out, PwPacking):
        if len(out.members) != k:
            report.add(f"expected {k} members, got {len(out.members)}")
        seen: set = set()
        for idx, member in enumerate(out.members):
            if not set(member) <= set(G.labels):
                report.add(f"member {idx} uses unknown vertices")
                continue
            if set(member) & seen:
                report.add(f"member {idx} overlaps an earlier member")
            seen |= set(member)
            width = pathwidth_exact(induced_subgraph(G, G.ids(member)), limit)[0]
            if width < p:
                report.add(f"member {idx} has pathwidth {width} < {p}")
        return report
    if not isinstance(out, PwCover):
        report.add(f"unknown outcome type {type(out).__name__}")
        return report
    if not set(out.X) <= set(G.labels):
        report.add("cover uses unknown vertices")
        return report
    if set(out.X) != set(out.X1) | set(out.X2):
        report.add("X is not the union of X1 and X2")
    cap = 3 ** (p + 1)
    if len(out.X) > 2 * cap * k:
        report.add(f"|X| = {len(out.X)} exceeds 2*3^(p+1)*k = {2 * cap * k}")
    for name, part in (("X1", out.X1), ("X2", out.X2)):
        if len(part) > cap * (k - 1):
            report.add(f"|{name}| = {len(part)} exceeds 3^(p+1)*(k-1) = {cap * (k - 1)}")
    width = pathwidth_exact(remove_vertices(G, G.ids(out.X)), limit)[0]
    if width >= p:
        report.add(f"G - X has pathwidth {width} >= {p}")
    return report
