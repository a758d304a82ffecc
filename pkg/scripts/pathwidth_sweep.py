"""Run the pathwidth pack-or-cover procedure on random graphs and summarise.

    python3 scripts/pathwidth_sweep.py --count 100 --max-n 8 --p 1 --k 2 3
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass, field

from epacker.graph import generate
from epacker.pathwidth_ep import PwCover, pathwidth_pack_or_cover, verify_pw_outcome


@dataclass
class PathwidthSweepConfig:
    count: int = 100
    max_n: int = 8
    p: int = 1
    ks: list = field(default_factory=lambda: [2, 3])
    seed: int = 0


def main(cfg: PathwidthSweepConfig):
    rng = random.Random(cfg.seed)
    tally = Counter()
    largest = {}
    for idx in range(cfg.count):
        G = generate("erdos_renyi", rng.randint(1, cfg.max_n), rng.choice([0.2, 0.4, 0.6]), seed=rng.random())
        for k in cfg.ks:
            out = pathwidth_pack_or_cover(G, cfg.p, k)
            ok = bool(verify_pw_outcome(G, cfg.p, k, out))
            tally[(k, out.kind, ok)] += 1
            if isinstance(out, PwCover):
                largest[k] = max(largest.get(k, 0), len(out.X))
    for (k, kind, ok), count in sorted(tally.items()):
        print(f"k={k} {kind:<11} {'valid' if ok else 'INVALID'} {count}")
    for k, size in sorted(largest.items()):
        print(f"k={k} largest cover {size}, bound {2 * 3 ** (cfg.p + 1) * k}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--p", type=int, default=1)
    ap.add_argument("--k", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    main(PathwidthSweepConfig(a.count, a.max_n, a.p, a.k, a.seed))
