"""Command-line front end.

Exit codes: 0 on success, 1 when a decision verb answers "no"
(eq -> DISTINCT, check -> FALSE, axioms -> any failure), 2 on errors.
The LAGREL_BACKEND environment variable (exact | float) sets the
default backend; decision verbs always require the exact one.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .errors import LagrelError
from .linalg import from_text, to_text
from .lagrangian import (
    LagrangianRelation, ap_fingerprint, is_lagrangian, is_positive, is_quasi_real,
)
from .scalars import EXACT, FLOAT, CirclePoint, circle_from_tan_half
from . import axioms as ax
from . import diagio
from . import diagrams as dg
from . import lov as lovmod
from . import render


def _backend(args):
    name = getattr(args, "backend", None) or os.environ.get("LAGREL_BACKEND", "exact")
    return EXACT if name == "exact" else FLOAT


def _load_any(path: str, field):
    with open(path) as handle:
        text = handle.read()
    doc = json.loads(text)
    if isinstance(doc, dict) and doc.get("kind") == "relation":
        return diagio.relation_from_json(text, field)
    return diagio.diagram_from_json(text)


def _as_relation(obj, calculus: str, field) -> LagrangianRelation:
    if isinstance(obj, LagrangianRelation):
        return obj
    return dg.interpret(obj, calculus, field)


def cmd_interpret(args) -> int:
    field = _backend(args)
    with open(args.diagram) as handle:
        d = diagio.diagram_from_json(handle.read())
    rel = dg.interpret(d, args.calculus, field)
    text = diagio.relation_to_json(rel)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    sys.stdout.write(text)
    return 0


def cmd_canon(args) -> int:
    field = _backend(args)
    obj = _load_any(args.file, field)
    rel = _as_relation(obj, args.calculus, field)
    sys.stdout.write(diagio.relation_to_json(rel))
    print(ap_fingerprint(rel))
    return 0


def cmd_eq(args) -> int:
    field = _backend(args)
    r1 = _as_relation(_load_any(args.first, field), args.calculus, field)
    r2 = _as_relation(_load_any(args.second, field), args.calculus, field)
    f1, f2 = ap_fingerprint(r1), ap_fingerprint(r2)
    print(f"lhs {f1}")
    print(f"rhs {f2}")
    if r1 == r2:
        print("EQUAL")
        return 0
    print("DISTINCT")
    return 1


def cmd_check(args) -> int:
    field = _backend(args)
    rel = _as_relation(_load_any(args.file, field), args.calculus, field)
    pred = {
        "lagrangian": is_lagrangian,
        "positive": is_positive,
        "quasi-real": is_quasi_real,
    }[args.predicate]
    verdict = pred(rel)
    print("TRUE" if verdict else "FALSE")
    return 0 if verdict else 1


def cmd_axioms(args) -> int:
    results = ax.run_soundness_suite(args.calculus, samples=args.samples,
                                     seed=args.seed)
    width = max(len(f"{c}:{n}") for c, n, _ in results)
    for calc, name, ok in results:
        print(f"{calc + ':' + name:<{width}}  {'pass' if ok else 'FAIL'}")
    n_fail = sum(1 for _, _, ok in results if not ok)
    print(f"{len(results) - n_fail}/{len(results)} axioms hold "
          f"({args.samples} samples each)")
    if args.report:
        render.write_tsv([(c, n, "pass" if ok else "fail") for c, n, ok in results],
                         args.report, header=("calculus", "axiom", "status"))
    if args.figure:
        render.axiom_figure(results, args.figure)
    return 0 if n_fail == 0 else 1


def cmd_import_graph(args) -> int:
    field = _backend(args)
    u = from_text(field, args.u)
    v = from_text(field, args.v)
    d = dg.import_graph_state(u, v)
    text = diagio.diagram_to_json(d)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    sys.stdout.write(text)
    return 0


def _parse_angle(raw, field):
    if isinstance(raw, dict):
        if "tan_half" in raw:
            return circle_from_tan_half(Fraction(raw["tan_half"]))
        return CirclePoint(Fraction(raw["cos"]), Fraction(raw["sin"]))
    return float(raw)


def _parse_lov(path: str, field) -> lovmod.LOvCircuit:
    with open(path) as handle:
        doc = json.load(handle)
    gates = []
    for rec in doc.get("gates", []):
        angle = _parse_angle(rec["angle"], field) if "angle" in rec else None
        param = Fraction(rec["param"]) if "param" in rec else None
        gates.append(lovmod.Gate(rec["kind"], tuple(rec.get("wires", ())),
                                 angle=angle, param=param))
    return lovmod.LOvCircuit(int(doc["wires"]), gates)


def cmd_lov(args) -> int:
    field = _backend(args)
    circuit = _parse_lov(args.circuit, field)
    d = lovmod.lov_to_diagram(circuit, field)
    text = diagio.diagram_to_json(d)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    sys.stdout.write(text)
    if args.check:
        m = lovmod.circuit_mode_matrix(circuit, field)
        from .lagrangian import omega, symplectomorphism_check
        from .linalg import Matrix
        if field.exact:
            ok_symp = symplectomorphism_check(m)
            ok_orth = (m.transpose() @ m) == Matrix.identity(field, m.rows)
        else:
            om = omega(field, m.rows // 2)
            res1 = max(abs(x) for x in (m.transpose() @ om @ m - om).data)
            res2 = max(abs(x) for x in
                       (m.transpose() @ m - Matrix.identity(field, m.rows)).data)
            ok_symp, ok_orth = res1 < 1e-9, res2 < 1e-9
        print(f"symplectic: {'pass' if ok_symp else 'FAIL'}  "
              f"orthogonal: {'pass' if ok_orth else 'FAIL'}")
        return 0 if (ok_symp and ok_orth) else 1
    return 0


def cmd_demo_teleport(args) -> int:
    eps = Fraction(args.epsilon)
    outcome = (0, 0)
    if args.outcome:
        a, b = args.outcome.split(",")
        outcome = (Fraction(a), Fraction(b))
    channel = dg.demo_teleportation(eps, outcome)
    oracle = dg.teleportation_oracle(eps, outcome)
    agree = channel == oracle
    print(f"epsilon = {eps}, outcome = {outcome[0]},{outcome[1]}")
    print("channel constraints:")
    print(to_text(channel.rel.mat))
    print("rhs:", to_text(channel.rel.rhs.transpose()))
    print(ap_fingerprint(channel))
    ident = LagrangianRelation.identity(EXACT, 1)
    print("two-path agreement:", "pass" if agree else "FAIL")
    if eps == 0:
        print("perfect channel:", "pass" if channel == ident else "FAIL")
    if args.report or args.figure:
        sweep = [Fraction(k, 4) for k in range(0, 9)]
        rows = []
        noise = []
        delta0 = None
        from .lagrangian import z_spider_rel
        from .gauss import extract_extended_gaussian
        for e in sweep:
            ch = dg.teleportation_oracle(e, (0, 0))
            out_state = z_spider_rel(EXACT, 0, 1, 0, 0).compose(ch)
            eg = extract_extended_gaussian(out_state)
            var = eg.sigma[0, 0].re if eg.sigma.rows else Fraction(0)
            rows.append((str(e), str(var)))
            noise.append(var)
        if args.report:
            render.write_tsv(rows, args.report, header=("epsilon", "added_noise"))
        if args.figure:
            render.teleport_figure(sweep, noise, args.figure)
    return 0 if agree else 1


def cmd_export(args) -> int:
    with open(args.diagram) as handle:
        d = diagio.diagram_from_json(handle.read())
    wrote = False
    if args.dot:
        with open(args.dot, "w") as handle:
            handle.write(render.to_dot(d))
        wrote = True
    if args.tikz:
        with open(args.tikz, "w") as handle:
            handle.write(render.to_tikz(d))
        wrote = True
    if args.png:
        render.to_png(d, args.png)
        wrote = True
    if not wrote:
        sys.stdout.write(render.to_dot(d))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagrel",
        description="exact affine Lagrangian relations and graphical "
                    "symplectic algebra")
    parser.add_argument("--backend", choices=("exact", "float"), default=None,
                        help="scalar backend (default: LAGREL_BACKEND or exact)")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("interpret", help="interpret a diagram into a relation")
    p.add_argument("diagram")
    p.add_argument("--calculus", choices=("gsa", "gga", "gqga"), default="gsa")
    p.add_argument("--out")
    p.set_defaults(func=cmd_interpret)

    p = sub.add_parser("canon", help="canonical form and AP fingerprint")
    p.add_argument("file")
    p.add_argument("--calculus", choices=("gsa", "gga", "gqga"), default="gsa")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("eq", help="decide semantic equality of two artifacts")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--calculus", choices=("gsa", "gga", "gqga"), default="gsa")
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("check", help="run a decision procedure on a relation")
    p.add_argument("file")
    p.add_argument("--predicate", choices=("lagrangian", "positive", "quasi-real"),
                   default="lagrangian")
    p.add_argument("--calculus", choices=("gsa", "gga", "gqga"), default="gsa")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("axioms", help="run the soundness suite")
    p.add_argument("--calculus", choices=("gsa", "gaa", "gga", "gqga", "all"),
                   default="all")
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--report", help="write a TSV report")
    p.add_argument("--figure", help="write a matplotlib PNG")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("import-graph", help="import a weighted graph state")
    p.add_argument("--u", required=True, help="real adjacency (matrix text)")
    p.add_argument("--v", required=True, help="positive-definite part (matrix text)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_import_graph)

    p = sub.add_parser("lov", help="compile an optics circuit to a diagram")
    p.add_argument("circuit")
    p.add_argument("--out")
    p.add_argument("--check", action="store_true",
                   help="verify the circuit matrix is an orthogonal symplectomorphism")
    p.set_defaults(func=cmd_lov)

    p = sub.add_parser("demo-teleport", help="run the teleportation derivation")
    p.add_argument("--epsilon", default="0")
    p.add_argument("--outcome", help="measurement outcome a,b")
    p.add_argument("--report", help="write an epsilon sweep TSV")
    p.add_argument("--figure", help="write the noise curve PNG")
    p.set_defaults(func=cmd_demo_teleport)

    p = sub.add_parser("export", help="render a diagram")
    p.add_argument("diagram")
    p.add_argument("--dot")
    p.add_argument("--tikz")
    p.add_argument("--png")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LagrelError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
