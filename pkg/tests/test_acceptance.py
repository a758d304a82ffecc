"""Acceptance criteria, one test each; every test records a PASS/FAIL line
that is printed in the terminal summary."""

import random
import time
from itertools import combinations

import pytest

from conftest import ACCEPTANCE_LINES, all_trees, random_graph
from epacker.decomposition import extract_bounded_region, pathwidth_exact
from epacker.graph import Graph, generate, induced_subgraph, remove_vertices
from epacker.minors import Forest, Tree, find_forest_minor, has_tree_minor
from epacker.oracles import max_packing_bruteforce, min_hitting_bruteforce, pathwidth_reference
from epacker.pathwidth_ep import (
    PwCover,
    edge_oracle,
    helly_pack_or_stab,
    pathwidth_pack_or_cover,
    verify_pw_outcome,
)
from epacker.solver import Cover, Instance, Packing, forest_instance, pack_or_cover_forest, solve, verify_outcome

pytestmark = pytest.mark.acceptance

SMALL_TREES = [T for t in range(1, 5) for T in all_trees(t)]


def record(number, title, failures, started, limit_s, detail=""):
    elapsed = time.perf_counter() - started
    slow = elapsed > limit_s
    ok = not failures and not slow
    parts = [f"{'PASS' if ok else 'FAIL'} [{number}] {title}: {len(failures)} failures, {elapsed:.1f}s"]
    if slow:
        parts.append(f"over the {limit_s}s budget")
    if detail:
        parts.append(detail)
    if failures:
        parts.append(f"first: {failures[0]}")
    line = "; ".join(parts)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def sample_graphs(count, seed, max_n=8):
    rng = random.Random(seed)
    return [random_graph(rng, rng.randint(1, max_n), rng.choice([0.15, 0.3, 0.45, 0.6]))
            for _ in range(count)]


def random_tree(rng, t):
    return Tree.from_edges(t, [(rng.randrange(v), v) for v in range(1, t)])


def random_forest(rng):
    t = rng.randint(2, 5)
    sizes, left = [], t
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    if len(sizes) == 1:
        sizes = [t - 1, 1]
    return Forest.of(*[random_tree(rng, s) for s in sizes])


@pytest.fixture(scope="module")
def duality_table(connected_corpus):
    """(G, T) -> (nu, tau) over connected graphs on at most 7 vertices."""
    return {(G, T): (max_packing_bruteforce(G, T)[0], min_hitting_bruteforce(G, T)[0])
            for G in connected_corpus for T in SMALL_TREES}


def test_criterion_1_tightness():
    started = time.perf_counter()
    failures = []
    cases = 0
    for t in (2, 3, 4):
        for T in all_trees(t):
            for k in (2, 3):
                cases += 1
                G = generate("complete", t * k - 1)
                out = solve(Instance(G, (T,), (k,)))
                tau = min_hitting_bruteforce(G, T, limit=G.n)[0]
                if not isinstance(out, Cover):
                    failures.append(f"t={t} k={k} {T}: packing returned")
                elif len(out.X) != t * (k - 1) or tau != t * (k - 1):
                    failures.append(f"t={t} k={k} {T}: |X|={len(out.X)} tau={tau}")
    record(1, "tightness on K_{tk-1}", failures, started, 120, f"{cases} cases")


def test_criterion_2_soundness(connected_corpus, duality_table):
    started = time.perf_counter()
    failures = []
    runs = 0
    for G in connected_corpus:
        for T in SMALL_TREES:
            nu = duality_table[(G, T)][0]
            for k in (1, 2):
                runs += 1
                inst = Instance(G, (T,), (k,))
                out = solve(inst)
                report = verify_outcome(inst, out)
                if not report:
                    failures.append(f"{G} {T} k={k}: {report}")
                if isinstance(out, Cover) and nu >= k:
                    failures.append(f"{G} {T} k={k}: cover but nu={nu}")
                if isinstance(out, Packing) and nu < k:
                    failures.append(f"{G} {T} k={k}: packing but nu={nu}")
    record(2, "soundness sweep", failures, started, 900,
           f"{runs} runs on {len(connected_corpus)} connected graphs")


def test_criterion_3_forests():
    started = time.perf_counter()
    rng = random.Random(20240531)
    failures = []
    covers = runs = 0
    for _ in range(20):
        F = random_forest(rng)
        for _ in range(5):
            G = random_graph(rng, rng.randint(1, 9), rng.choice([0.2, 0.35, 0.5, 0.7]))
            for k in (1, 2):
                runs += 1
                out = pack_or_cover_forest(G, F, k)
                inst = forest_instance(G, F, k)
                if not verify_outcome(inst, out):
                    failures.append(f"{G} {F} k={k}: {verify_outcome(inst, out)}")
                if isinstance(out, Cover):
                    covers += 1
                    if len(out.X) > F.t * k - F.t_max:
                        failures.append(f"{G} {F} k={k}: |X|={len(out.X)}")
                    if find_forest_minor(remove_vertices(G, G.ids(out.X)), F) is not None:
                        failures.append(f"{G} {F} k={k}: forest survives")
    record(3, "forest cover bound", failures, started, 600, f"{runs} runs, {covers} covers")


def test_criterion_4_pathwidth_forces_minors(full_corpus):
    started = time.perf_counter()
    failures = []
    regions = 0
    for G in full_corpus:
        pw = pathwidth_exact(G)[0]
        for T in SMALL_TREES:
            has = has_tree_minor(G, T)
            if pw >= T.t - 1 and not has:
                failures.append(f"{G}: pw={pw} but no {T}")
            if not has:
                continue
            region = extract_bounded_region(G, T.t, [T], [0])
            regions += 1
            report = region.validate(G)
            if not report:
                failures.append(f"{G} {T}: {report}")
            if not has_tree_minor(induced_subgraph(G, region.Y), T):
                failures.append(f"{G} {T}: region has no model")
    record(4, "large pathwidth forces tree minors; bounded regions", failures, started, 600,
           f"{len(full_corpus)} graphs, {regions} regions")


def test_criterion_5_pathwidth_pack_or_cover():
    started = time.perf_counter()
    failures = []
    covers = 0
    for G in sample_graphs(200, 31337):
        for k in (2, 3):
            out = pathwidth_pack_or_cover(G, 1, k)
            report = verify_pw_outcome(G, 1, k, out)
            if not report:
                failures.append(f"{G} k={k}: {report}")
            if isinstance(out, PwCover):
                covers += 1
                if pathwidth_exact(remove_vertices(G, G.ids(out.X)))[0] > 0:
                    failures.append(f"{G} k={k}: G - X keeps an edge")
    K13 = generate("complete", 13)
    for k in (1, 2):
        out = pathwidth_pack_or_cover(K13, 2, k)
        if not verify_pw_outcome(K13, 2, k, out):
            failures.append(f"K13 p=2 k={k}: {verify_pw_outcome(K13, 2, k, out)}")
    record(5, "pathwidth pack-or-cover (p=1 sample, p=2 on K13)", failures, started, 600,
           f"400 p=1 runs, {covers} covers")


def _max_disjoint_edges(G: Graph) -> int:
    best = 0
    for size in range(1, G.n // 2 + 1):
        if not any(len({v for e in es for v in e}) == 2 * size for es in combinations(G.edges, size)):
            break
        best = size
    return best


def test_criterion_6_helly_greedy():
    started = time.perf_counter()
    failures = []
    unsound = 0
    for G in sample_graphs(100, 271828):
        pd = pathwidth_exact(G)[1]
        nu = _max_disjoint_edges(G)
        for d in (2, 3, 4):
            out = helly_pack_or_stab(G, pd, edge_oracle, d)
            if out.packed != (nu >= d):
                unsound += out.packed
                failures.append(f"{G} d={d}: packed={out.packed}, max disjoint edges={nu}")
            if not out.packed:
                stab = frozenset().union(*(pd.bags[r] for r in out.bags))
                if len(out.bags) > d - 1 or any(u not in stab and v not in stab for u, v in G.edges):
                    failures.append(f"{G} d={d}: bad stab {out.bags}")
    detail = (f"300 runs; {unsound} packings without d disjoint edges, "
              f"{len(failures) - unsound} valid stabs although d disjoint edges exist")
    record(6, "bag-stabbing greedy against exhaustive matching", failures, started, 300, detail)


def test_criterion_7_duality(duality_table):
    started = time.perf_counter()
    failures = [f"{G} {T}: nu={nu} tau={tau}" for (G, T), (nu, tau) in duality_table.items()
                if not nu <= tau <= T.t * nu]
    record(7, "nu <= tau <= t*nu", failures, started, 60, f"{len(duality_table)} pairs")


def test_criterion_8_pathwidth_engines(full_corpus):
    started = time.perf_counter()
    graphs = list(full_corpus) + sample_graphs(200, 31337) + sample_graphs(100, 271828)
    failures = [f"{G}: {pathwidth_exact(G)[0]} vs {pathwidth_reference(G)}"
                for G in graphs if pathwidth_exact(G)[0] != pathwidth_reference(G)]
    record(8, "pathwidth engines agree", failures, started, 600, f"{len(graphs)} graphs")
