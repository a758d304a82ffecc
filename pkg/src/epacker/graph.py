"""Finite simple undirected graphs on dense integer vertices.

Vertices are ``0..n-1``; each carries a label (its name in the original
input) that survives induced-subgraph extraction, so anything found on a
subgraph can be reported in terms of the graph the user supplied.
Neighbourhoods are stored as int bitmasks.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import ParseError

VertexSet = frozenset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple
    labels: tuple = field(default=None, compare=True)

    def __post_init__(self):
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(self.n)))
        if len(self.adj) != self.n or len(self.labels) != self.n:
            raise ValueError("adjacency and labels must have length n")
        if len(set(self.labels)) != self.n:
            raise ValueError("vertex labels must be distinct")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside the graph")
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None) -> "Graph":
        """Build from id pairs; self-loops and repeated edges are rejected."""
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise ValueError(f"parallel edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), None if labels is None else tuple(labels))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def edges(self) -> list:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def neighbors(self, v: int) -> list:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def index_of(self, label) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise ValueError(f"unknown vertex label {label!r}") from None

    @property
    def _label_index(self) -> dict:
        cache = self.__dict__.get("_label_cache")
        if cache is None:
            cache = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_label_cache", cache)
        return cache

    def lift(self, vertices: Iterable[int]) -> frozenset:
        """Map vertex ids to their labels."""
        return frozenset(self.labels[v] for v in vertices)

    def ids(self, labels: Iterable) -> frozenset:
        return frozenset(self.index_of(lab) for lab in labels)

    def neighborhood(self, mask: int) -> int:
        """Open neighbourhood of a vertex mask."""
        out = 0
        for v in bits(mask):
            out |= self.adj[v]
        return out & ~mask

    def is_connected_mask(self, mask: int) -> bool:
        if not mask:
            return False
        seen = mask & -mask
        frontier = seen
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= self.adj[v]
            frontier = grow & mask & ~seen
            seen |= frontier
        return seen == mask

    def component_mask(self, v: int, within: int | None = None) -> int:
        within = self.full_mask if within is None else within
        seen = 1 << v
        frontier = seen
        while frontier:
            grow = 0
            for u in bits(frontier):
                grow |= self.adj[u]
            frontier = grow & within & ~seen
            seen |= frontier
        return seen

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges})"


def _check_subset(G: Graph, S) -> list:
    members = sorted(set(S))
    for v in members:
        if not isinstance(v, int) or not 0 <= v < G.n:
            raise ValueError(f"vertex {v!r} is not a vertex of the graph")
    return members


def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    """``G[S]``; new ids follow ascending old ids, labels carried over."""
    members = _check_subset(G, S)
    pos = {v: i for i, v in enumerate(members)}
    adj = []
    for v in members:
        adj.append(to_mask(pos[u] for u in bits(G.adj[v]) if u in pos))
    return Graph(len(members), tuple(adj), tuple(G.labels[v] for v in members))


def induced_mask(G: Graph, mask: int) -> Graph:
    return induced_subgraph(G, bits(mask & G.full_mask))


def remove_vertices(G: Graph, X: Iterable[int]) -> Graph:
    """``G - X``."""
    drop = set(_check_subset(G, X))
    return induced_subgraph(G, (v for v in G.vertices if v not in drop))


def boundary(G: Graph, S: Iterable[int]) -> frozenset:
    """Vertices of ``S`` with a neighbour outside ``S``."""
    mask = to_mask(_check_subset(G, S))
    return frozenset(v for v in bits(mask) if G.adj[v] & ~mask)


def connected_components(G: Graph) -> list:
    """Components as vertex sets, ordered by smallest member."""
    comps = []
    left = G.full_mask
    while left:
        v = (left & -left).bit_length() - 1
        comp = G.component_mask(v)
        comps.append(frozenset(bits(comp)))
        left &= ~comp
    return comps


def disjoint_union(*graphs: Graph) -> Graph:
    edges, n = [], 0
    for H in graphs:
        edges.extend((u + n, v + n) for u, v in H.edges)
        n += H.n
    return Graph.from_edges(n, edges)


def generate(family: str, *args, seed=None) -> Graph:
    """Standard graph families.

    ``complete(n)``, ``path(n)``, ``cycle(n)`` take a vertex count,
    ``star(leaves)`` is K_{1,leaves}, ``complete_ternary_tree(p)`` has height
    ``p`` counted in edges, ``disjoint_union(*graphs)``, and
    ``erdos_renyi(n, prob)`` needs ``seed``.
    """
    if family == "disjoint_union":
        return disjoint_union(*args)
    if family == "erdos_renyi":
        n, prob = args
        if seed is None:
            raise ValueError("erdos_renyi requires a seed")
        if n < 0 or not 0.0 <= prob <= 1.0:
            raise ValueError("erdos_renyi needs n >= 0 and 0 <= prob <= 1")
        rng = random.Random(seed)
        return Graph.from_edges(
            n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < prob]
        )
    if len(args) != 1 or not isinstance(args[0], int) or args[0] < 0:
        raise ValueError(f"{family} takes one nonnegative integer parameter")
    (size,) = args
    if family == "complete":
        return Graph.from_edges(size, [(u, v) for u in range(size) for v in range(u + 1, size)])
    if family == "path":
        return Graph.from_edges(size, [(i, i + 1) for i in range(size - 1)])
    if family == "cycle":
        if 0 < size < 3:
            raise ValueError("a simple cycle needs at least 3 vertices")
        return Graph.from_edges(size, [(i, (i + 1) % size) for i in range(size)] if size else [])
    if family == "star":
        return Graph.from_edges(size + 1, [(0, i) for i in range(1, size + 1)])
    if family == "complete_ternary_tree":
        edges, level, nxt = [], [0], 1
        for _ in range(size):
            new = []
            for parent in level:
                for _ in range(3):
                    edges.append((parent, nxt))
                    new.append(nxt)
                    nxt += 1
            level = new
        return Graph.from_edges(nxt, edges)
    raise ValueError(f"unknown graph family {family!r}")


# ---------------------------------------------------------------- formats

_INT = re.compile(r"[+-]?\d+\Z")


def parse_graph(text: str, format: str = "edge-list", n: int | None = None) -> Graph:
    if format == "edge-list":
        return _parse_edge_list(text, n)
    if format == "graph6":
        G = parse_graph6(text)
        if n is not None and n != G.n:
            raise ParseError(f"graph6 encodes {G.n} vertices, expected {n}")
        return G
    raise ValueError(f"unknown format {format!r}")


def serialize_graph(G: Graph, format: str = "edge-list") -> str:
    if format == "edge-list":
        return _write_edge_list(G)
    if format == "graph6":
        return to_graph6(G) + "\n"
    raise ValueError(f"unknown format {format!r}")


def _parse_edge_list(text: str, n: int | None) -> Graph:
    declared = n
    order: list = []
    seen: dict = {}
    pairs = []

    def note(tok):
        if tok not in seen:
            seen[tok] = len(order)
            order.append(tok)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2:
            if not _INT.match(parts[1]) or int(parts[1]) < 0:
                raise ParseError("vertex count must be a nonnegative integer", f"line {lineno}")
            if declared is not None and declared != int(parts[1]):
                raise ParseError("conflicting vertex count", f"line {lineno}")
            declared = int(parts[1])
        elif len(parts) == 1:
            note(parts[0])
        elif len(parts) == 2:
            if parts[0] == parts[1]:
                raise ParseError(f"self-loop on {parts[0]}", f"line {lineno}")
            note(parts[0])
            note(parts[1])
            pairs.append((parts[0], parts[1], lineno))
        else:
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", f"line {lineno}")

    if all(_INT.match(tok) for tok in order):
        ints = {tok: int(tok) for tok in order}
        if len(set(ints.values())) != len(ints):
            raise ParseError("the same integer vertex is written in two ways")
        if declared is not None:
            bad = [tok for tok, v in ints.items() if not 0 <= v < declared]
            if bad:
                raise ParseError(f"vertex {bad[0]} outside 0..{declared - 1}")
            labels = list(range(declared))
        else:
            labels = sorted(ints.values())
        key = ints
    else:
        if declared is not None and declared != len(order):
            raise ParseError(f"header declares {declared} vertices but {len(order)} are named")
        labels = list(order)
        key = {tok: tok for tok in order}

    index = {lab: i for i, lab in enumerate(labels)}
    adj = [0] * len(labels)
    for a, b, lineno in pairs:
        u, v = index[key[a]], index[key[b]]
        if adj[u] >> v & 1:
            raise ParseError(f"parallel edge {a} {b}", f"line {lineno}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(len(labels), tuple(adj), tuple(labels))


def _write_edge_list(G: Graph) -> str:
    lines = []
    if G.labels == tuple(range(G.n)):
        lines.append(f"n {G.n}")
    else:
        lines.extend(str(lab) for lab in G.labels)
    lines.extend(f"{G.labels[u]} {G.labels[v]}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def _graph6_size(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(G: Graph) -> str:
    bitstr = [
        G.adj[i] >> j & 1 for j in range(1, G.n) for i in range(j)
    ]
    bitstr += [0] * (-len(bitstr) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bitstr[k:k + 6])), 2)) for k in range(0, len(bitstr), 6)
    )
    return _graph6_size(G.n) + body


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if data.startswith(":") or data.startswith(";"):
        raise ParseError("sparse6 input is not supported", "byte 1")
    if data.startswith("&"):
        raise ParseError("digraph6 input is not supported", "byte 1")
    codes = []
    for pos, ch in enumerate(data, 1):
        c = ord(ch) - 63
        if not 0 <= c <= 63:
            raise ParseError(f"invalid graph6 character {ch!r}", f"byte {pos}")
        codes.append(c)
    if not codes:
        raise ParseError("empty graph6 string", "byte 1")
    if codes[0] != 63:
        n, start = codes[0], 1
    elif len(codes) >= 2 and codes[1] == 63:
        if len(codes) < 8:
            raise ParseError("truncated graph6 size header", f"byte {len(codes) + 1}")
        n = 0
        for c in codes[2:8]:
            n = n << 6 | c
        start = 8
    else:
        if len(codes) < 4:
            raise ParseError("truncated graph6 size header", f"byte {len(codes) + 1}")
        n = codes[1] << 12 | codes[2] << 6 | codes[3]
        start = 4
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = codes[start:]
    if len(body) != need:
        raise ParseError(
            f"graph6 body has {len(body)} bytes, expected {need} for n={n}",
            f"byte {start + min(len(body), need) + 1}",
        )
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    if need and body[-1] & ((1 << (need * 6 - nbits)) - 1):
        raise ParseError("nonzero padding bits", f"byte {start + need}")
    return Graph(n, tuple(adj))


def to_dot(G: Graph, highlight: dict | None = None, name: str = "G") -> str:
    """DOT text; ``highlight`` maps a colour to a set of vertex ids."""
    colour = {}
    for col, members in (highlight or {}).items():
        for v in members:
            colour[v] = col
    lines = [f"graph {name} {{"]
    for v in G.vertices:
        attrs = f' [style=filled, fillcolor="{colour[v]}"]' if v in colour else ""
        lines.append(f'  "{G.labels[v]}"{attrs};')
    for u, v in G.edges:
        lines.append(f'  "{G.labels[u]}" -- "{G.labels[v]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"

