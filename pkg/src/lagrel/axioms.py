"""Equational theories as executable data.

Each axiom is a pair of diagram builders (or relation builders for the
plain affine layer) over sampled exact parameters. Soundness checking
interprets both sides and compares canonical forms, so a transcription
mistake in this table shows up as a failing axiom rather than silent
drift: the suite polices itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from .errors import SideConditionViolated
from .linalg import Matrix
from .relations import AffineRelation, grey as ar_grey, white as ar_white, \
    scalar_mult, cup as ar_cup, cap as ar_cap, symmetry as ar_symmetry
from .scalars import EXACT, CirclePoint, circle_from_tan_half, qi
from . import diagrams as dg
from .diagrams import (
    Diagram, FOURIER, FOURIER_INV, SQUEEZE, VACUUM, X, Z,
    box_diagram, compose_diagrams, spider_diagram, tensor_diagrams,
    vacuum_diagram, wire_diagram,
)


def rand_q(rng: random.Random, span: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_q_nonzero(rng: random.Random) -> Fraction:
    while True:
        v = rand_q(rng)
        if v != 0:
            return v


def rand_qi(rng: random.Random):
    return qi(rand_q(rng), rand_q(rng))


def rand_qi_nonzero(rng: random.Random):
    while True:
        v = rand_qi(rng)
        if not v.is_zero():
            return v


def rand_circle(rng: random.Random) -> CirclePoint:
    return circle_from_tan_half(rand_q(rng))


@dataclass
class AxiomInstance:
    name: str
    calculus: str
    sample: Callable[[random.Random], Tuple]
    build: Callable[[Tuple], Tuple]
    side_condition: Callable[[Tuple], bool] = dfield(default=lambda params: True)

    def check(self, params, field=EXACT) -> bool:
        if not self.side_condition(params):
            raise SideConditionViolated(f"{self.name}: bad parameters {params!r}")
        lhs, rhs = self.build(params)
        if isinstance(lhs, Diagram):
            return dg.interpret(lhs, self.calculus, field) == \
                dg.interpret(rhs, self.calculus, field)
        return lhs == rhs

    def check_random(self, rng: random.Random, samples: int = 5, field=EXACT) -> bool:
        for _ in range(samples):
            while True:
                params = self.sample(rng)
                if self.side_condition(params):
                    break
            if not self.check(params, field):
                return False
        return True


def check_axiom(ax: AxiomInstance, params, field=EXACT) -> bool:
    return ax.check(params, field)


# -- diagram fragments ---------------------------------------------------------


def _two_spiders_fused(kind, p1, p2, edges: int = 1, antipode: bool = False) -> Diagram:
    d = Diagram(2, 2)
    n1 = d.add_node(kind, phase=p1)
    n2 = d.add_node(kind, phase=p2)
    d.add_edge(("in", 0), ("node", n1))
    d.add_edge(("in", 1), ("node", n1))
    mid: List = [("node", n1)] * edges
    if antipode:
        anti = d.add_node(X, phase=(0, 0))
        d.add_edge(("node", n1), ("node", anti))
        d.add_edge(("node", anti), ("node", n2))
    else:
        for _ in range(edges):
            d.add_edge(("node", n1), ("node", n2))
    d.add_edge(("node", n2), ("out", 0))
    d.add_edge(("node", n2), ("out", 1))
    return d


def _dressed_spider(kind, phase, legs_in: int, legs_out: int, box_kind,
                    param=None) -> Diagram:
    """A spider with one box on every leg (boxes oriented away from the
    spider, port 0 at the spider)."""
    d = Diagram(legs_in, legs_out)
    nid = d.add_node(kind, phase=phase)
    for i in range(legs_in):
        b = d.add_node(box_kind, param=param)
        d.add_edge(("node", nid), ("node", b, 0))
        d.add_edge(("node", b, 1), ("in", i))
    for j in range(legs_out):
        b = d.add_node(box_kind, param=param)
        d.add_edge(("node", nid), ("node", b, 0))
        d.add_edge(("node", b, 1), ("out", j))
    return d


def _bent_wire() -> Diagram:
    d = Diagram(0, 2)
    d.add_edge(("out", 0), ("out", 1))
    return d


def _vacuum_into_spider_effect(kind, phase) -> Diagram:
    d = Diagram(0, 0)
    v = d.add_node(VACUUM)
    s = d.add_node(kind, phase=phase)
    d.add_edge(("node", v), ("node", s))
    return d


def _vacuum_pair() -> Diagram:
    return tensor_diagrams(vacuum_diagram(), vacuum_diagram())


def _rotation_matrix_diagram(cp: CirclePoint) -> Diagram:
    f = EXACT
    r = Matrix.from_rows(f, [[cp.c, -Fraction(cp.s)], [cp.s, cp.c]])
    return dg.matrix_diagram(r)


# -- the GSA table --------------------------------------------------------------


def _gsa_axioms() -> List[AxiomInstance]:
    axioms: List[AxiomInstance] = []

    def add(name, sample, build, side=lambda p: True):
        axioms.append(AxiomInstance(name, "gsa", sample, build, side))

    add("z-fusion",
        lambda rng: (rand_qi(rng), rand_qi(rng), rand_qi(rng), rand_qi(rng)),
        lambda p: (_two_spiders_fused(Z, (p[0], p[1]), (p[2], p[3])),
                   spider_diagram(Z, 2, 2, (p[0] + p[2], p[1] + p[3]))))
    add("z-fusion-parallel-edges",
        lambda rng: (rand_qi(rng), rand_qi(rng), rand_qi(rng), rand_qi(rng)),
        lambda p: (_two_spiders_fused(Z, (p[0], p[1]), (p[2], p[3]), edges=2),
                   spider_diagram(Z, 2, 2, (p[0] + p[2], p[1] + p[3]))))
    add("x-fusion-through-antipode",
        lambda rng: (rand_qi(rng), rand_qi(rng), rand_qi(rng), rand_qi(rng)),
        lambda p: (_two_spiders_fused(X, (p[0], p[1]), (p[2], p[3]), antipode=True),
                   spider_diagram(X, 2, 2, (p[0] + p[2], p[1] + p[3]))))

    def z_selfloop(p):
        d = spider_diagram(Z, 1, 1, (p[0], p[1]))
        nid = next(iter(d.nodes))
        d.add_edge(("node", nid), ("node", nid))
        return d, spider_diagram(Z, 1, 1, (p[0], p[1]))

    add("z-self-loop", lambda rng: (rand_qi(rng), rand_qi(rng)), z_selfloop)
    add("z-identity", lambda rng: (),
        lambda p: (spider_diagram(Z, 1, 1, (0, 0)), wire_diagram(1)))
    add("bent-wire-is-z-cup", lambda rng: (),
        lambda p: (_bent_wire(), spider_diagram(Z, 0, 2, (0, 0))))
    add("antipode-involution", lambda rng: (),
        lambda p: (compose_diagrams(spider_diagram(X, 1, 1, (0, 0)),
                                    spider_diagram(X, 1, 1, (0, 0))),
                   wire_diagram(1)))
    add("fourier-times-inverse", lambda rng: (),
        lambda p: (compose_diagrams(box_diagram(FOURIER), box_diagram(FOURIER_INV)),
                   wire_diagram(1)))
    add("fourier-squared-is-antipode", lambda rng: (),
        lambda p: (compose_diagrams(box_diagram(FOURIER), box_diagram(FOURIER)),
                   spider_diagram(X, 1, 1, (0, 0))))
    add("fourier-fourth-power", lambda rng: (),
        lambda p: (compose_diagrams(
            compose_diagrams(box_diagram(FOURIER), box_diagram(FOURIER)),
            compose_diagrams(box_diagram(FOURIER), box_diagram(FOURIER))),
            wire_diagram(1)))
    add("colour-change",
        lambda rng: (rand_qi(rng), rand_qi(rng)),
        lambda p: (_dressed_spider(Z, (p[0], p[1]), 1, 2, FOURIER),
                   spider_diagram(X, 1, 2, (-p[0], -p[1]))))
    add("squeeze-through-z",
        lambda rng: (rand_qi(rng), rand_qi(rng), rand_qi_nonzero(rng)),
        lambda p: (_dressed_spider(Z, (p[0], p[1]), 1, 2, SQUEEZE, param=p[2]),
                   spider_diagram(Z, 1, 2, (p[2] * p[0], p[2] * p[2] * p[1]))),
        side=lambda p: not p[2].is_zero())
    add("squeeze-multiplicative",
        lambda rng: (rand_qi_nonzero(rng), rand_qi_nonzero(rng)),
        lambda p: (compose_diagrams(box_diagram(SQUEEZE, param=p[0]),
                                    box_diagram(SQUEEZE, param=p[1])),
                   box_diagram(SQUEEZE, param=p[0] * p[1])),
        side=lambda p: not (p[0].is_zero() or p[1].is_zero()))
    add("squeeze-inverse",
        lambda rng: (rand_qi_nonzero(rng),),
        lambda p: (compose_diagrams(box_diagram(SQUEEZE, param=p[0]),
                                    box_diagram(SQUEEZE, param=p[0].inv())),
                   wire_diagram(1)),
        side=lambda p: not p[0].is_zero())
    add("squeeze-past-fourier",
        lambda rng: (rand_qi_nonzero(rng),),
        lambda p: (compose_diagrams(box_diagram(SQUEEZE, param=p[0]),
                                    box_diagram(FOURIER)),
                   compose_diagrams(box_diagram(FOURIER),
                                    box_diagram(SQUEEZE, param=p[0].inv()))),
        side=lambda p: not p[0].is_zero())

    def bialgebra(p):
        lhs = compose_diagrams(spider_diagram(X, 2, 1, (0, 0)),
                               spider_diagram(Z, 1, 2, (0, 0)))
        copies = tensor_diagrams(spider_diagram(Z, 1, 2, (0, 0)),
                                 spider_diagram(Z, 1, 2, (0, 0)))
        mid = Diagram(4, 4)
        mid.add_edge(("in", 0), ("out", 0))
        mid.add_edge(("in", 1), ("out", 2))
        mid.add_edge(("in", 2), ("out", 1))
        mid.add_edge(("in", 3), ("out", 3))
        adds = tensor_diagrams(spider_diagram(X, 2, 1, (0, 0)),
                               spider_diagram(X, 2, 1, (0, 0)))
        rhs = compose_diagrams(copies, compose_diagrams(mid, adds))
        return lhs, rhs

    add("zx-bialgebra", lambda rng: (), bialgebra)
    return axioms


# -- the GAA table (plain affine layer) ---------------------------------------------


def _gaa_axioms() -> List[AxiomInstance]:
    f = EXACT
    axioms: List[AxiomInstance] = []

    def add(name, sample, build, side=lambda p: True):
        axioms.append(AxiomInstance(name, "gaa", sample, build, side))

    def idr():
        return AffineRelation.identity(f, 1)

    add("grey-fusion",
        lambda rng: (rand_q(rng), rand_q(rng)),
        lambda p: (ar_grey(f, 1, 1, p[0]).compose(ar_grey(f, 1, 1, p[1])),
                   ar_grey(f, 1, 1, p[0] + p[1])))
    add("white-fusion-through-antipode",
        lambda rng: (rand_q(rng), rand_q(rng)),
        lambda p: (ar_white(f, 1, 1, p[0]).compose(scalar_mult(f, -1))
                   .compose(ar_white(f, 1, 1, p[1])),
                   ar_white(f, 1, 1, p[0] + p[1])))
    add("grey-copy-coassoc", lambda rng: (),
        lambda p: (ar_grey(f, 1, 2, 0).compose(ar_grey(f, 1, 2, 0).tensor(idr())),
                   ar_grey(f, 1, 2, 0).compose(idr().tensor(ar_grey(f, 1, 2, 0)))))
    add("grey-copy-cocomm", lambda rng: (),
        lambda p: (ar_grey(f, 1, 2, 0).compose(ar_symmetry(f, 1, 1)),
                   ar_grey(f, 1, 2, 0)))
    add("grey-special", lambda rng: (),
        lambda p: (ar_grey(f, 1, 2, 0).compose(ar_grey(f, 2, 1, 0)), idr()))

    def plus():
        # honest adder: the white spider's output carries an antipode
        return ar_white(f, 2, 1, 0).compose(scalar_mult(f, -1))

    add("white-add-assoc", lambda rng: (),
        lambda p: (plus().tensor(idr()).compose(plus()),
                   idr().tensor(plus()).compose(plus())))
    add("white-unit", lambda rng: (),
        lambda p: (ar_white(f, 0, 1, 0).tensor(idr()).compose(plus()),
                   idr()))
    add("translation-copies",
        lambda rng: (rand_q(rng),),
        lambda p: (ar_grey(f, 1, 1, p[0]).compose(ar_grey(f, 1, 2, 0)),
                   ar_grey(f, 1, 2, 0).compose(
                       ar_grey(f, 1, 1, p[0]).tensor(ar_grey(f, 1, 1, p[0])))))
    add("bialgebra", lambda rng: (),
        lambda p: (ar_white(f, 2, 1, 0).compose(ar_grey(f, 1, 2, 0)),
                   ar_grey(f, 1, 2, 0).tensor(ar_grey(f, 1, 2, 0)).compose(
                       idr().tensor(ar_symmetry(f, 1, 1)).tensor(idr())).compose(
                       ar_white(f, 2, 1, 0).tensor(ar_white(f, 2, 1, 0)))))
    add("scalar-functorial",
        lambda rng: (rand_q(rng), rand_q(rng)),
        lambda p: (scalar_mult(f, p[0]).compose(scalar_mult(f, p[1])),
                   scalar_mult(f, p[0] * p[1])))
    add("scalar-one", lambda rng: (),
        lambda p: (scalar_mult(f, 1), idr()))
    add("scalar-inverse",
        lambda rng: (rand_q_nonzero(rng),),
        lambda p: (scalar_mult(f, p[0]).compose(scalar_mult(f, 1 / p[0])), idr()),
        side=lambda p: p[0] != 0)
    add("scalar-linear-over-add",
        lambda rng: (rand_q(rng),),
        lambda p: (scalar_mult(f, p[0]).tensor(scalar_mult(f, p[0]))
                   .compose(ar_white(f, 2, 1, 0)),
                   ar_white(f, 2, 1, 0).compose(scalar_mult(f, p[0]))))
    add("scalar-through-copy",
        lambda rng: (rand_q(rng),),
        lambda p: (scalar_mult(f, p[0]).compose(ar_grey(f, 1, 2, 0)),
                   ar_grey(f, 1, 2, 0).compose(
                       scalar_mult(f, p[0]).tensor(scalar_mult(f, p[0])))))
    add("scalar-on-point",
        lambda rng: (rand_q(rng), rand_q(rng)),
        lambda p: (ar_white(f, 0, 1, p[0]).compose(scalar_mult(f, p[1])),
                   ar_white(f, 0, 1, p[0] * p[1])))
    add("antipode-is-white-loop", lambda rng: (),
        lambda p: (ar_white(f, 1, 1, 0), scalar_mult(f, -1)))
    add("zero-scalar-discards", lambda rng: (),
        lambda p: (scalar_mult(f, 0),
                   ar_grey(f, 1, 0, 0).compose(ar_white(f, 0, 1, 0))))
    add("snake", lambda rng: (),
        lambda p: (idr().tensor(ar_cup(f, 1)).compose(ar_cap(f, 1).tensor(idr())),
                   idr()))
    return axioms


# -- vacuum tables ------------------------------------------------------------------


def _gga_axioms() -> List[AxiomInstance]:
    axioms: List[AxiomInstance] = []

    def add(name, sample, build, side=lambda p: True):
        axioms.append(AxiomInstance(name, "gga", sample, build, side))

    add("vacuum-rotation-invariant",
        lambda rng: (rand_circle(rng),),
        lambda p: (compose_diagrams(_vacuum_pair(), _rotation_matrix_diagram(p[0])),
                   _vacuum_pair()))
    add("vacuum-codiscards-z-effects",
        lambda rng: (rand_q(rng),),
        lambda p: (_vacuum_into_spider_effect(Z, (p[0], 0)), Diagram(0, 0)))
    add("vacuum-codiscards-x-effects",
        lambda rng: (rand_q(rng),),
        lambda p: (_vacuum_into_spider_effect(X, (p[0], 0)), Diagram(0, 0)))
    return axioms


def _gqga_axioms() -> List[AxiomInstance]:
    axioms: List[AxiomInstance] = []

    def add(name, sample, build, side=lambda p: True):
        axioms.append(AxiomInstance(name, "gqga", sample, build, side))

    def vac_rot(p):
        lhs = compose_diagrams(vacuum_diagram(), dg.rotation_diagram(p[0]))
        return lhs, vacuum_diagram()

    add("vacuum-phase-rotation",
        lambda rng: (rand_circle(rng),), vac_rot,
        side=lambda p: p[0].c != 0)
    add("vacuum-fourier", lambda rng: (),
        lambda p: (compose_diagrams(vacuum_diagram(), box_diagram(FOURIER)),
                   vacuum_diagram()))
    add("vacuum-fourier-inverse", lambda rng: (),
        lambda p: (compose_diagrams(vacuum_diagram(), box_diagram(FOURIER_INV)),
                   vacuum_diagram()))
    add("vacuum-two-mode-rotation",
        lambda rng: (rand_circle(rng),),
        lambda p: (compose_diagrams(_vacuum_pair(), _rotation_matrix_diagram(p[0])),
                   _vacuum_pair()))
    add("vacuum-codiscards-z-effects",
        lambda rng: (rand_q(rng), rand_q(rng)),
        lambda p: (_vacuum_into_spider_effect(Z, (p[0], p[1])), Diagram(0, 0)))
    add("vacuum-codiscards-x-effects",
        lambda rng: (rand_q(rng), rand_q(rng)),
        lambda p: (_vacuum_into_spider_effect(X, (p[0], p[1])), Diagram(0, 0)))
    return axioms


_TABLES: Optional[dict] = None


def axiom_table(calculus: str) -> List[AxiomInstance]:
    global _TABLES
    if _TABLES is None:
        _TABLES = {
            "gsa": _gsa_axioms(),
            "gaa": _gaa_axioms(),
            "gga": _gga_axioms(),
            "gqga": _gqga_axioms(),
        }
    if calculus == "all":
        return [ax for key in ("gsa", "gaa", "gga", "gqga") for ax in _TABLES[key]]
    if calculus not in _TABLES:
        raise KeyError(f"no axiom table for {calculus!r}")
    return _TABLES[calculus]


def run_soundness_suite(calculus: str = "all", samples: int = 5,
                        seed: int = 2024) -> List[Tuple[str, str, bool]]:
    """Check every axiom at `samples` random parameter assignments.
    Returns (calculus, name, passed) rows."""
    rng = random.Random(seed)
    results = []
    for ax in axiom_table(calculus):
        ok = ax.check_random(rng, samples=samples)
        results.append((ax.calculus, ax.name, ok))
    return results
