"""Path decompositions: validation, exact pathwidth, bounded regions.

Both the exact pathwidth computation and the boundary-constrained search
used for bounded regions run on one introduce/forget engine. A vertex may
be forgotten once all of its neighbours have been introduced, and it is
always safe to forget as early as possible, so the current bag is a
function of the introduced set alone and the state space collapses from
(forgotten, bag) pairs to the 2^n introduced sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import CapacityError, InvariantViolation, Report
from .graph import Graph, bits, boundary, induced_mask, induced_subgraph, to_mask
from .minors import has_tree_minor

DEFAULT_PW_LIMIT = 16
_INF = float("inf")


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @property
    def q(self) -> int:
        return len(self.bags)

    def lift(self, G: Graph) -> "PathDecomposition":
        return PathDecomposition(tuple(G.lift(b) for b in self.bags))

    def to_text(self, G: Graph | None = None) -> str:
        """One bag per line as sorted labels in braces."""
        lines = []
        for bag in self.bags:
            names = sorted(bag) if G is None else sorted((G.labels[v] for v in bag), key=_label_key)
            lines.append("{" + ", ".join(str(x) for x in names) + "}")
        return "\n".join(lines) + ("\n" if lines else "")


def _label_key(label):
    return (isinstance(label, str), label)


def parse_pd(text: str) -> PathDecomposition:
    bags = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if not (line.startswith("{") and line.endswith("}")):
            raise ValueError(f"bag line must be wrapped in braces: {line!r}")
        inner = line[1:-1].strip()
        bags.append(frozenset(int(x) for x in inner.split(",")) if inner else frozenset())
    return PathDecomposition(tuple(bags))


@dataclass(frozen=True)
class BoundedRegion:
    """A vertex set ``Y`` with a decomposition of ``G[Y]`` in ``G``'s ids."""

    Y: frozenset
    pd: PathDecomposition
    cap: int

    def validate(self, G: Graph) -> Report:
        report = validate_pd(G, self.pd, within=self.Y)
        for k, bag in enumerate(self.pd.bags):
            if len(bag) > self.cap:
                report.add(f"bag {k} has {len(bag)} vertices, cap is {self.cap}")
        last = self.pd.bags[-1] if self.pd.bags else frozenset()
        missing = boundary(G, self.Y) - last
        if missing:
            report.add(f"boundary vertices {sorted(missing)} are not in the last bag")
        return report


def validate_pd(G: Graph, pd: PathDecomposition, within=None) -> Report:
    """Check ``pd`` is a path decomposition of ``G`` (or of ``G[within]``)."""
    report = Report()
    region = set(G.vertices) if within is None else set(within)
    seen_in: dict = {v: [] for v in region}
    for k, bag in enumerate(pd.bags):
        for v in bag:
            if v not in region:
                report.add(f"bag {k} contains {v!r}, which is not a vertex of the graph")
            else:
                seen_in[v].append(k)
    for v in sorted(region):
        where = seen_in[v]
        if not where:
            report.add(f"vertex {v} is in no bag")
        elif where[-1] - where[0] + 1 != len(where):
            gap = next(k for k in range(where[0], where[-1]) if k not in where)
            report.add(f"vertex {v} is missing from bag {gap} between its occurrences")
    for u, v in G.edges:
        if u in region and v in region:
            if not any(u in bag and v in bag for bag in pd.bags):
                report.add(f"edge {u}-{v} is in no bag")
    return report


class _OrderSearch:
    """Minimum over introduce orders of the largest bag, memoised on masks.

    ``pinned`` vertices are never forgotten; ``cap`` bounds every bag.
    """

    def __init__(self, G: Graph, region: int, pinned: int = 0, cap: float = _INF):
        self.adj = [nb & region for nb in G.adj]
        self.region = region
        self.pinned = pinned & region
        self.cap = cap
        self.memo: dict = {}

    def bag(self, S: int) -> int:
        out = S & self.pinned
        for u in bits(S & ~out):
            if self.adj[u] & ~S:
                out |= 1 << u
        return out

    def rem(self, S: int) -> float:
        if S == self.region:
            return 0
        got = self.memo.get(S)
        if got is not None:
            return got
        here = self.bag(S).bit_count() + 1
        best = _INF
        if here <= self.cap:
            for v in bits(self.region & ~S):
                r = self.rem(S | 1 << v)
                if r < best:
                    best = r
                    if best <= here:
                        break
            best = max(best, here)
        self.memo[S] = best
        return best

    def run(self):
        """Lexicographically smallest optimal order and its bags, or None."""
        target = self.rem(0)
        if target == _INF:
            return None
        S, bags = 0, []
        while S != self.region:
            here = self.bag(S)
            for v in bits(self.region & ~S):
                if max(here.bit_count() + 1, self.rem(S | 1 << v)) <= target:
                    bags.append(frozenset(bits(here | 1 << v)))
                    S |= 1 << v
                    break
            else:
                raise InvariantViolation("order reconstruction lost feasibility")
        # a bag inside its successor is redundant
        bags = [b for k, b in enumerate(bags) if k + 1 == len(bags) or not b <= bags[k + 1]]
        return target, PathDecomposition(tuple(bags))


def pathwidth_exact(G: Graph, limit: int = DEFAULT_PW_LIMIT):
    """``(pw(G), optimal decomposition)``; the empty graph has width -1."""
    if G.n > limit:
        raise CapacityError(f"pathwidth search limited to {limit} vertices, got {G.n}")
    if G.n == 0:
        return -1, PathDecomposition(())
    found = _OrderSearch(G, G.full_mask).run()
    target, pd = found
    return target - 1, pd


def constrained_decomposition(G: Graph, Y, cap: int, limit: int = DEFAULT_PW_LIMIT):
    """Decomposition of ``G[Y]`` with bags of size ``<= cap`` and every
    vertex of the boundary of ``Y`` in the last bag, or None."""
    mask = to_mask(Y)
    if mask.bit_count() > limit:
        raise CapacityError(f"decomposition search limited to {limit} vertices")
    if not mask:
        return PathDecomposition(())
    pinned = to_mask(boundary(G, Y))
    found = _OrderSearch(G, mask, pinned, cap).run()
    return None if found is None else found[1]


def prefix_graph(G: Graph, pd: PathDecomposition, ell: int) -> Graph:
    """``G[B_1 | ... | B_ell]`` for ``1 <= ell <= q``."""
    if not 1 <= ell <= pd.q:
        raise ValueError(f"prefix length {ell} outside 1..{pd.q}")
    return induced_subgraph(G, frozenset().union(*pd.bags[:ell]))


def connected_sets(G: Graph, min_size: int = 1, region: int | None = None) -> Iterator[int]:
    """Connected vertex masks by increasing size, ascending within a size."""
    region = G.full_mask if region is None else region
    level = {1 << v for v in bits(region)}
    size = 1
    while level:
        if size >= min_size:
            yield from sorted(level, key=lambda m: tuple(bits(m)))
        nxt = set()
        for S in level:
            for u in bits(G.neighborhood(S) & region):
                nxt.add(S | 1 << u)
        level = nxt
        size += 1


def bounded_regions(G: Graph, t: int, trees: Sequence, I: Sequence[int],
                    has_minor=has_tree_minor, limit: int = DEFAULT_PW_LIMIT) -> Iterator[BoundedRegion]:
    """Every region usable by one solver step, preferred one first.

    ``has_minor(H, tree)`` decides minor containment. When pw(G) < t-1
    the whole graph comes first; otherwise connected sets hosting the
    smallest needed tree are tried by increasing size, and only those
    admitting a decomposition with bags of size <= t and the boundary in
    the last bag are kept.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    pw, pd = pathwidth_exact(G, limit)
    whole = G.full_mask
    if pw < t - 1:
        yield BoundedRegion(frozenset(G.vertices), pd, t)
    smallest = trees[min(I)]
    for Y in connected_sets(G, min_size=len(smallest)):
        if pw < t - 1 and Y == whole:
            continue
        H = induced_mask(G, Y)
        if pw >= t - 1:
            if not has_minor(H, smallest):
                continue
        elif not any(has_minor(H, trees[i]) for i in I):
            continue
        Yset = frozenset(bits(Y))
        pd_Y = constrained_decomposition(G, Yset, t, limit)
        if pd_Y is not None:
            yield BoundedRegion(Yset, pd_Y, t)


def extract_bounded_region(G: Graph, t: int, trees: Sequence, I: Sequence[int],
                           has_minor=has_tree_minor, limit: int = DEFAULT_PW_LIMIT) -> BoundedRegion:
    """The first region of :func:`bounded_regions`.

    Such a region always exists when ``G`` has a minor of some ``trees[i]``
    for ``i`` in ``I`` and ``t`` is the size of ``trees[min(I)]``; failure
    raises :class:`InvariantViolation`.
    """
    for region in bounded_regions(G, t, trees, I, has_minor, limit):
        H = induced_subgraph(G, region.Y)
        if not any(has_minor(H, trees[i]) for i in I):
            raise InvariantViolation("bounded region hosts none of the needed trees")
        return region
    raise InvariantViolation(f"no bounded region with bag cap {t} exists")
