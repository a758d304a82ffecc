"""JSON certificate documents and their verification."""

from __future__ import annotations

from .errors import ParseError, Report
from .graph import Graph, remove_vertices
from .minors import MinorModel, Tree, validate_model
from .oracles import (
    DEFAULT_ORACLE_LIMIT,
    has_minor_bruteforce,
    max_packing_bruteforce,
    min_hitting_bruteforce,
    pathwidth_reference,
)
from .pathwidth_ep import PwCover, PwPacking, verify_pw_outcome
from .solver import Cover, Instance, Packing, cover_bound, verify_outcome

SCHEMA_VERSION = "1"


def _sorted(labels):
    return sorted(labels, key=lambda v: (isinstance(v, str), v))


def graph_to_json(G: Graph) -> dict:
    return {
        "n": G.n,
        "labels": list(G.labels),
        "edges": [[G.labels[u], G.labels[v]] for u, v in G.edges],
    }


def graph_from_json(doc: dict) -> Graph:
    try:
        labels = doc.get("labels") or list(range(doc["n"]))
        index = {lab: i for i, lab in enumerate(labels)}
        return Graph.from_edges(len(labels), [(index[u], index[v]) for u, v in doc["edges"]], labels)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph in certificate: {exc}") from exc


def same_graph(G: Graph, H: Graph) -> bool:
    if set(G.labels) != set(H.labels):
        return False
    edges = lambda K: {frozenset((K.labels[u], K.labels[v])) for u, v in K.edges}
    return edges(G) == edges(H)


def _model_json(model: MinorModel) -> dict:
    return {str(p): _sorted(s) for p, s in sorted(model.branch_sets.items())}


def _model_from_json(doc: dict) -> MinorModel:
    return MinorModel({int(p): frozenset(s) for p, s in doc.items()})


def _step_json(step) -> dict:
    return {
        "level": step.level,
        "Y": _sorted(step.Y),
        "bags": [_sorted(b) for b in step.bags],
        "ell": step.ell,
        "i_prime": step.i_prime,
        "B": _sorted(step.B),
    }


def outcome_document(inst: Instance, out, timings: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "instance": {
            "graph": graph_to_json(inst.G),
            "trees": [graph_to_json(T.graph) for T in inst.trees],
            "x": list(inst.x),
        },
        "outcome": out.kind,
        "models": [],
        "cover": None,
        "trace": [_step_json(s) for s in out.trace],
        "bound": inst.bound,
        "timings": timings or {},
    }
    if isinstance(out, Packing):
        doc["models"] = [
            {"tree": i, "copy": j, "branch_sets": _model_json(out.models[(i, j)]),
             "host": _sorted(out.hosts[(i, j)])}
            for i, j in sorted(out.models)
        ]
    else:
        doc["cover"] = {"X": _sorted(out.X), "witness": out.witness}
    return doc


def instance_from_document(doc: dict) -> Instance:
    try:
        body = doc["instance"]
        trees = [Tree(graph_from_json(t)) for t in body["trees"]]
        return Instance(graph_from_json(body["graph"]), trees, body["x"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed instance in certificate: {exc}") from exc


def outcome_from_document(doc: dict):
    try:
        if doc["outcome"] == "packing":
            models, hosts = {}, {}
            for entry in doc["models"]:
                key = (entry["tree"], entry["copy"])
                models[key] = _model_from_json(entry["branch_sets"])
                hosts[key] = frozenset(entry["host"])
            return Packing(models, hosts)
        if doc["outcome"] == "cover":
            return Cover(frozenset(doc["cover"]["X"]), doc["cover"]["witness"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed outcome in certificate: {exc}") from exc
    raise ParseError(f"unknown outcome {doc.get('outcome')!r}")


def pw_document(G: Graph, p: int, k: int, out, timings: dict | None = None) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "instance": {"graph": graph_to_json(G)},
        "outcome": out.kind,
        "p": p,
        "k": k,
        "bound": 2 * 3 ** (p + 1) * k,
        "timings": timings or {},
    }
    if isinstance(out, PwPacking):
        doc.update(members=[_sorted(m) for m in out.members], phase=out.phase)
    else:
        doc.update(X=_sorted(out.X), X1=_sorted(out.X1), X2=_sorted(out.X2),
                   bags_selected=list(out.bags_selected))
    return doc


def oracle_document(G: Graph, T: Tree, nu: int, packing: list, tau: int, hitting,
                    pathwidth: int) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "instance": {"graph": graph_to_json(G), "trees": [graph_to_json(T.graph)]},
        "outcome": "oracle",
        "nu": nu,
        "packing_witness": [_model_json(m.lift(G)) for m in packing],
        "tau": tau,
        "hitting_witness": _sorted(G.lift(hitting)),
        "pathwidth": pathwidth,
    }


def verify_document(G: Graph, doc: dict) -> Report:
    """Check a certificate against the graph it claims to be about."""
    report = Report()
    if doc.get("schema_version") != SCHEMA_VERSION:
        report.add(f"unsupported schema_version {doc.get('schema_version')!r}")
        return report
    try:
        H = graph_from_json(doc["instance"]["graph"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"certificate has no instance graph: {exc}") from exc
    if not same_graph(G, H):
        report.add("certificate is for a different graph")
        return report
    kind = doc.get("outcome")
    if kind in ("packing", "cover"):
        inst = instance_from_document(doc)
        inst = Instance(G, inst.trees, inst.x)
        expected = cover_bound(inst.trees, inst.x)
        if doc.get("bound") != expected:
            report.add(f"bound field {doc.get('bound')!r} differs from recomputed {expected}")
        report.extend(verify_outcome(inst, outcome_from_document(doc)))
    elif kind in ("pw-packing", "pw-cover"):
        p, k = doc["p"], doc["k"]
        if doc.get("bound") != 2 * 3 ** (p + 1) * k:
            report.add(f"bound field {doc.get('bound')!r} differs from 2*3^(p+1)*k")
        if kind == "pw-packing":
            out = PwPacking([frozenset(m) for m in doc["members"]], doc.get("phase", 0))
        else:
            out = PwCover(frozenset(doc["X"]), frozenset(doc["X1"]), frozenset(doc["X2"]),
                          doc.get("bags_selected", []))
        report.extend(verify_pw_outcome(G, p, k, out))
    elif kind == "oracle":
        report.extend(_verify_oracle(G, doc))
    else:
        report.add(f"unknown outcome kind {kind!r}")
    return report


def _verify_oracle(G: Graph, doc: dict) -> Report:
    report = Report()
    T = Tree(graph_from_json(doc["instance"]["trees"][0]))
    models = [_model_from_json(m).lower(G) for m in doc["packing_witness"]]
    if len(models) != doc["nu"]:
        report.add("packing witness size differs from nu")
    seen: set = set()
    for model in models:
        report.extend(validate_model(G, T, model))
        if model.vertices & seen:
            report.add("packing witness models overlap")
        seen |= model.vertices
    if len(doc["hitting_witness"]) != doc["tau"]:
        report.add("hitting witness size differs from tau")
    limit = max(G.n, DEFAULT_ORACLE_LIMIT)
    if has_minor_bruteforce(remove_vertices(G, G.ids(doc["hitting_witness"])), T, limit):
        report.add("hitting witness leaves a model")
    if max_packing_bruteforce(G, T, limit)[0] != doc["nu"]:
        report.add("nu is not the maximum packing size")
    if min_hitting_bruteforce(G, T, limit)[0] != doc["tau"]:
        report.add("tau is not the minimum hitting set size")
    if pathwidth_reference(G, limit) != doc["pathwidth"]:
        report.add("pathwidth value is wrong")
    return report
