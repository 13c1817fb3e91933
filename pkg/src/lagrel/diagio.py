"""JSON persistence for diagrams, relations, and Gaussian records.

Printing is deterministic (sorted node ids, stable edge order, fixed key
order) so canonical files round-trip byte-identically.
"""

from __future__ import annotations

import json
from .errors import IllFormedDiagram
from .diagrams import BOXES, Diagram, Node, SPIDERS, SQUEEZE, VACUUM
from .gauss import ExtendedGaussian, GaussMap, PhaseMatrix
from .lagrangian import LagrangianRelation
from .linalg import Matrix, from_text, to_text
from .relations import AffineRelation
from .scalars import EXACT, parse_scalar


def _endpoint_to_str(ep) -> str:
    if ep[0] == "in":
        return f"in:{ep[1]}"
    if ep[0] == "out":
        return f"out:{ep[1]}"
    if len(ep) == 2:
        return f"n{ep[1]}"
    return f"n{ep[1]}:{ep[2]}"


def _endpoint_from_str(s: str):
    if s.startswith("in:"):
        return ("in", int(s[3:]))
    if s.startswith("out:"):
        return ("out", int(s[4:]))
    if not s.startswith("n"):
        raise IllFormedDiagram(f"bad endpoint {s!r}")
    body = s[1:]
    if ":" in body:
        nid, port = body.split(":")
        return ("node", int(nid), int(port))
    return ("node", int(body))


def diagram_to_json(d: Diagram) -> str:
    f = EXACT
    nodes = []
    for nid in sorted(d.nodes):
        node = d.nodes[nid]
        rec = {"id": nid, "kind": node.kind}
        if node.kind in SPIDERS:
            rec["phase"] = [f.to_str(f.coerce(node.phase[0])),
                            f.to_str(f.coerce(node.phase[1]))]
        if node.kind == SQUEEZE:
            rec["param"] = f.to_str(f.coerce(node.param))
        nodes.append(rec)
    doc = {
        "wires": {"in": d.n_in, "out": d.n_out},
        "nodes": nodes,
        "edges": [[_endpoint_to_str(p), _endpoint_to_str(q)] for p, q in d.edges],
        "inputs": [f"in:{i}" for i in range(d.n_in)],
        "outputs": [f"out:{j}" for j in range(d.n_out)],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def diagram_from_json(text: str) -> Diagram:
    doc = json.loads(text)
    wires = doc["wires"]
    d = Diagram(int(wires["in"]), int(wires["out"]))
    for rec in doc.get("nodes", []):
        nid = int(rec["id"])
        kind = rec["kind"]
        if nid in d.nodes:
            raise IllFormedDiagram(f"duplicate node id {nid}")
        if kind in SPIDERS:
            phase = rec.get("phase", ["0", "0"])
            d.nodes[nid] = Node(kind, phase=(parse_scalar(phase[0]),
                                             parse_scalar(phase[1])))
        elif kind == SQUEEZE:
            d.nodes[nid] = Node(kind, param=parse_scalar(rec["param"]))
        elif kind in BOXES or kind == VACUUM:
            d.nodes[nid] = Node(kind)
        else:
            raise IllFormedDiagram(f"unknown node kind {kind!r}")
    for e in doc.get("edges", []):
        d.add_edge(_endpoint_from_str(e[0]), _endpoint_from_str(e[1]))
    d.validate()
    return d


def relation_to_json(r: LagrangianRelation) -> str:
    doc = {
        "kind": "relation",
        "modes": {"in": r.n_in, "out": r.n_out},
        "empty": r.is_empty,
    }
    if not r.is_empty:
        doc["constraints"] = to_text(r.rel.mat)
        doc["rhs"] = to_text(r.rel.rhs.transpose())
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def relation_from_json(text: str, field=EXACT) -> LagrangianRelation:
    doc = json.loads(text)
    n_in = int(doc["modes"]["in"])
    n_out = int(doc["modes"]["out"])
    if doc.get("empty"):
        return LagrangianRelation.empty(field, n_in, n_out)
    mat = from_text(field, doc["constraints"]) if doc.get("constraints") else None
    if mat is None or mat.rows == 0:
        rel = AffineRelation.total(field, 2 * n_in, 2 * n_out)
        return LagrangianRelation(rel, n_in, n_out)
    rhs = from_text(field, doc["rhs"]).transpose()
    return LagrangianRelation.from_constraints(
        field, n_in, n_out, mat.to_lists(), rhs.to_list())


def gauss_map_to_json(g: GaussMap) -> str:
    doc = {
        "kind": "gauss_map",
        "a": to_text(g.a),
        "dom": g.dom,
        "cod": g.cod,
        "sigma": to_text(g.sigma),
        "mu": to_text(g.mu.transpose()),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def gauss_map_from_json(text: str, field=EXACT) -> GaussMap:
    doc = json.loads(text)
    cod, dom = int(doc["cod"]), int(doc["dom"])
    a = from_text(field, doc["a"]) if doc["a"] else Matrix.zeros(field, cod, dom)
    sigma = from_text(field, doc["sigma"]) if doc["sigma"] else Matrix.zeros(field, 0, 0)
    mu = from_text(field, doc["mu"]).transpose() if doc["mu"] else Matrix.zeros(field, 0, 1)
    return GaussMap(a, sigma, mu)


def extended_gaussian_to_json(eg: ExtendedGaussian) -> str:
    doc = {
        "kind": "extended_gaussian",
        "n": eg.n,
        "fibre": to_text(eg.fibre),
        "sigma": to_text(eg.sigma),
        "mu": to_text(eg.mu.transpose()),
        "coords": list(eg.coords),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def phase_matrix_to_json(pm: PhaseMatrix) -> str:
    doc = {
        "kind": "phase_matrix",
        "phi": to_text(pm.phi),
        "displacement": to_text(pm.displacement.transpose()),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def phase_matrix_from_json(text: str, field=EXACT) -> PhaseMatrix:
    doc = json.loads(text)
    phi = from_text(field, doc["phi"])
    disp = from_text(field, doc["displacement"]).transpose()
    return PhaseMatrix(phi, disp)
