"""Sweep every connected graph up to n vertices against every small tree.

Counts how often the solver's outcome disagrees with the exhaustive packing
number, with and without backtracking over bounded regions, and reports
the worst cover size relative to the guaranteed bound.

    python3 scripts/duality_sweep.py --max-n 6 --max-t 4
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

import networkx as nx

from epacker.graph import Graph
from epacker.oracles import max_packing_bruteforce, min_hitting_bruteforce
from epacker.solver import Cover, Instance, SolverConfig, solve, verify_outcome

from tightness_table import trees_on


@dataclass
class SweepConfig:
    max_n: int = 6
    max_t: int = 4
    ks: tuple = (1, 2)


def connected_graphs(max_n: int):
    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= max_n and nx.is_connected(g):
            yield Graph.from_edges(g.number_of_nodes(), list(g.edges()))


def main(cfg: SweepConfig):
    trees = [T for t in range(1, cfg.max_t + 1) for T in trees_on(t)]
    stats = Counter()
    slack = Counter()
    start = time.perf_counter()
    for G in connected_graphs(cfg.max_n):
        for T in trees:
            nu = max_packing_bruteforce(G, T)[0]
            tau = min_hitting_bruteforce(G, T)[0]
            stats["pairs"] += 1
            stats["sandwich violations"] += not nu <= tau <= T.t * nu
            for k in cfg.ks:
                inst = Instance(G, (T,), (k,))
                for explore in (True, False):
                    out = solve(inst, SolverConfig(explore=explore))
                    tag = "explore" if explore else "first-region"
                    stats[f"{tag} runs"] += 1
                    stats[f"{tag} invalid"] += not verify_outcome(inst, out)
                    if isinstance(out, Cover):
                        stats[f"{tag} covers"] += 1
                        stats[f"{tag} cover while nu >= k"] += nu >= k
                        slack[(tag, inst.bound - len(out.X))] += 1
    for key in sorted(stats):
        print(f"{key:<36} {stats[key]}")
    print("bound minus |X| histogram:")
    for (tag, gap), count in sorted(slack.items()):
        print(f"  {tag:<13} {gap:>3}: {count}")
    print(f"{time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--max-t", type=int, default=4)
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2])
    a = ap.parse_args()
    main(SweepConfig(a.max_n, a.max_t, tuple(a.k)))
