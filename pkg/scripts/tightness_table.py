"""Print solver cover size against the exact hitting number on K_{tk-1}.

    python3 scripts/tightness_table.py --max-t 4 --max-k 3
"""

import argparse
import time
from dataclasses import dataclass

import networkx as nx

from epacker.graph import Graph, generate
from epacker.minors import Tree
from epacker.oracles import min_hitting_bruteforce
from epacker.solver import Cover, pack_or_cover_tree


@dataclass
class TableConfig:
    max_t: int = 4
    max_k: int = 3
    oracle_limit: int = 11


def trees_on(t: int) -> list:
    if t == 1:
        return [Tree.path(1)]
    out = []
    for g in nx.nonisomorphic_trees(t):
        index = {v: i for i, v in enumerate(g.nodes())}
        out.append(Tree(Graph.from_edges(t, [(index[u], index[v]) for u, v in g.edges()])))
    return out


def main(cfg: TableConfig):
    print(f"{'t':>2} {'k':>2} {'tree edges':<28} {'n':>3} {'|X|':>4} {'tau':>4} {'t(k-1)':>6} {'sec':>6}")
    for t in range(2, cfg.max_t + 1):
        for T in trees_on(t):
            for k in range(2, cfg.max_k + 1):
                G = generate("complete", t * k - 1)
                start = time.perf_counter()
                out = pack_or_cover_tree(G, T, k)
                took = time.perf_counter() - start
                size = len(out.X) if isinstance(out, Cover) else "pack"
                tau = min_hitting_bruteforce(G, T, cfg.oracle_limit)[0] if G.n <= cfg.oracle_limit else "-"
                edges = str(T.graph.edges)
                print(f"{t:>2} {k:>2} {edges:<28} {G.n:>3} {size:>4} {tau:>4} {t * (k - 1):>6} {took:>6.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-t", type=int, default=4)
    ap.add_argument("--max-k", type=int, default=3)
    ap.add_argument("--oracle-limit", type=int, default=11)
    a = ap.parse_args()
    main(TableConfig(a.max_t, a.max_k, a.oracle_limit))
