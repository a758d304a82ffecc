"""Command-line front end.

Certificates go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 certificate rejected, 2 usage or parse error, 3 capacity exceeded,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .certificate import oracle_document, outcome_document, pw_document, verify_document
from .decomposition import pathwidth_exact
from .errors import CapacityError, InvariantViolation, ParseError
from .graph import Graph, connected_components, generate, parse_graph, serialize_graph
from .minors import Forest, Tree
from .oracles import max_packing_bruteforce, min_hitting_bruteforce, pathwidth_reference
from .pathwidth_ep import pathwidth_pack_or_cover, verify_pw_outcome
from .solver import Instance, SolverConfig, forest_instance, pack_or_cover_forest, solve, verify_outcome

EXIT_OK, EXIT_REJECTED, EXIT_USAGE, EXIT_CAPACITY, EXIT_INVARIANT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _format_for(path: str, override: str | None) -> str:
    if override:
        return override
    return "graph6" if Path(path).suffix in (".g6", ".graph6") else "edge-list"


def read_graph(path: str, fmt: str | None = None) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return parse_graph(text, _format_for(path, fmt))


def _emit(doc: dict):
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _config(args) -> SolverConfig:
    return SolverConfig(node_budget=args.node_budget, debug=args.debug_assert,
                        explore=not args.no_explore)


def cmd_solve(args) -> int:
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    G = read_graph(args.graph, args.format)
    pattern = read_graph(args.pattern, args.pattern_format)
    start = time.perf_counter()
    if len(connected_components(pattern)) == 1:
        inst = Instance(G, (Tree(pattern),), (args.k,))
        out = solve(inst, _config(args))
    else:
        F = Forest.from_graph(pattern)
        inst = forest_instance(G, F, args.k)
        out = pack_or_cover_forest(G, F, args.k, _config(args))
    doc = outcome_document(inst, out, {"solve_seconds": round(time.perf_counter() - start, 6)})
    if args.check:
        report = verify_outcome(inst, out)
        if not report:
            print(f"self-check failed:\n{report}", file=sys.stderr)
            return EXIT_INVARIANT
    _emit(doc)
    return EXIT_OK


def cmd_verify(args) -> int:
    G = read_graph(args.graph, args.format)
    try:
        doc = json.loads(Path(args.certificate).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.certificate}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate is not JSON: {exc.msg}", f"line {exc.lineno}") from exc
    report = verify_document(G, doc)
    if report:
        print("ok")
        return EXIT_OK
    print(str(report), file=sys.stderr)
    print("rejected")
    return EXIT_REJECTED


def cmd_pathwidth(args) -> int:
    G = read_graph(args.graph, args.format)
    if args.p is None and args.k is None:
        print(pathwidth_exact(G)[0])
        return EXIT_OK
    if args.p is None or args.k is None:
        raise UsageError("--p and --k go together")
    if args.p < 1 or args.k < 1:
        raise UsageError("--p and --k must be at least 1")
    start = time.perf_counter()
    out = pathwidth_pack_or_cover(G, args.p, args.k, _config(args))
    if args.check and not verify_pw_outcome(G, args.p, args.k, out):
        print("self-check failed", file=sys.stderr)
        return EXIT_INVARIANT
    _emit(pw_document(G, args.p, args.k, out, {"solve_seconds": round(time.perf_counter() - start, 6)}))
    return EXIT_OK


def cmd_oracle(args) -> int:
    G = read_graph(args.graph, args.format)
    T = Tree(read_graph(args.pattern, args.pattern_format))
    limit = args.limit
    nu, models = max_packing_bruteforce(G, T, limit)
    tau, X = min_hitting_bruteforce(G, T, limit)
    _emit(oracle_document(G, T, nu, models, tau, X, pathwidth_reference(G, limit)))
    return EXIT_OK


_FAMILIES = {"complete": "complete", "path": "path", "cycle": "cycle", "star": "star",
             "ternary": "complete_ternary_tree", "complete_ternary_tree": "complete_ternary_tree"}


def cmd_generate(args) -> int:
    fam, params = args.family, args.params
    try:
        if fam == "tight":
            if args.t is None or args.k is None:
                raise UsageError("tight needs --t and --k")
            G = generate("complete", args.t * args.k - 1)
        elif fam in ("erdos_renyi", "gnp"):
            if len(params) != 2 or args.seed is None:
                raise UsageError("erdos_renyi needs N PROB and --seed")
            G = generate("erdos_renyi", int(params[0]), float(params[1]), seed=args.seed)
        elif fam in _FAMILIES:
            if len(params) != 1:
                raise UsageError(f"{fam} takes one integer parameter")
            G = generate(_FAMILIES[fam], int(params[0]))
        else:
            raise UsageError(f"unknown family {fam!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(serialize_graph(G, args.format or "edge-list"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epacker", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pattern=False):
        p.add_argument("graph")
        if pattern:
            p.add_argument("pattern")
            p.add_argument("--pattern-format", choices=["edge-list", "graph6"])
        p.add_argument("--format", choices=["edge-list", "graph6"])
        p.add_argument("--node-budget", type=int)

    def solver_flags(p):
        p.add_argument("--check", action="store_true", help="re-verify before printing")
        p.add_argument("--debug-assert", action="store_true", help="assert the per-step separation invariants")
        p.add_argument("--no-explore", action="store_true", help="stop at the first bounded region")

    p = sub.add_parser("solve", help="pack k disjoint models or certify a small cover")
    common(p, pattern=True)
    p.add_argument("--k", type=int, required=True)
    solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("graph")
    p.add_argument("certificate")
    p.add_argument("--format", choices=["edge-list", "graph6"])
    p.add_argument("--node-budget", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pathwidth", help="exact pathwidth, or pack-or-cover for pathwidth >= p")
    common(p)
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    solver_flags(p)
    p.set_defaults(func=cmd_pathwidth)

    p = sub.add_parser("oracle", help="exhaustive packing number, hitting number and pathwidth")
    common(p, pattern=True)
    p.add_argument("--limit", type=int, default=10)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="print a graph from a standard family")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("--t", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=["edge-list", "graph6"])
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get("EPACKER_NODE_BUDGET")
    if getattr(args, "node_budget", None) is not None:
        os.environ["EPACKER_NODE_BUDGET"] = str(args.node_budget)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    finally:
        if saved is None:
            os.environ.pop("EPACKER_NODE_BUDGET", None)
        else:
            os.environ["EPACKER_NODE_BUDGET"] = saved


if __name__ == "__main__":
    sys.exit(main())
