import math
import random
from fractions import Fraction

import pytest

from lagrel.errors import UnknownGenerator
from lagrel.linalg import Matrix
import lagrel.diagrams as dg
import lagrel.lagrangian as lg
import lagrel.lov as lov
from lagrel.scalars import CIRCLE_ONE, EXACT as F, FLOAT, circle_from_tan_half


CPS = [circle_from_tan_half(t) for t in
       (Fraction(1, 2), Fraction(-1, 3), Fraction(0), Fraction(2), Fraction(5, 4))]


def unitary_gates():
    gates = []
    for cp in CPS:
        gates += [lov.Gate("ps", (0,), angle=cp),
                  lov.Gate("wp", (1,), angle=cp),
                  lov.Gate("bs", (0, 1), angle=cp)]
    gates += [lov.Gate("pbs", (0, 1)),
              lov.Gate("squeeze", (0,), param=Fraction(2)),
              lov.Gate("shear", (1,), param=Fraction(-3, 2))]
    return gates


def test_generators_are_symplectic_and_match_their_graphs():
    for gate in unitary_gates():
        s = lov.gate_mode_matrix(gate, 2, F)
        assert lg.symplectomorphism_check(s), gate.kind
        layer = lov.gate_layer(gate, 2, F)
        assert dg.interpret(layer, "gqga") == lg.graph_relation(s, check=False)


def test_passive_generators_are_orthogonal():
    eye = Matrix.identity(F, 8)
    for gate in unitary_gates():
        if gate.kind in ("squeeze", "shear"):
            continue
        s = lov.gate_mode_matrix(gate, 2, F)
        assert s.transpose() @ s == eye, gate.kind


def test_beamsplitter_at_zero_is_identity():
    layer = lov.gate_layer(lov.Gate("bs", (0, 1), angle=CIRCLE_ONE), 2, F)
    assert dg.interpret(layer, "gqga") == lg.LagrangianRelation.identity(F, 4)


def test_phase_shifter_inverse_pair():
    cp = circle_from_tan_half(Fraction(2, 5))
    circ = lov.LOvCircuit(1, [lov.Gate("ps", (0,), angle=cp),
                              lov.Gate("ps", (0,), angle=cp.inv())])
    assert dg.interpret(lov.lov_to_diagram(circ), "gqga") \
        == lg.LagrangianRelation.identity(F, 2)


def test_pbs_composes_with_its_converse_to_identity():
    rel = dg.interpret(lov.gate_layer(lov.Gate("pbs", (0, 1)), 2, F), "gqga")
    assert rel.compose(rel.converse()) == lg.LagrangianRelation.identity(F, 4)


def test_float_angles_within_tolerance(rng):
    omega = lg.omega(FLOAT, 4)
    eye = Matrix.identity(FLOAT, 8)
    worst = 0.0
    for _ in range(100):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        kind = rng.choice(["ps", "wp", "bs"])
        gate = lov.Gate(kind, (0,) if kind != "bs" else (0, 1), angle=theta)
        s = lov.gate_mode_matrix(gate, 2, FLOAT)
        worst = max(worst,
                    max(abs(x) for x in (s.transpose() @ omega @ s - omega).data),
                    max(abs(x) for x in (s.transpose() @ s - eye).data))
    assert worst < 1e-9


def test_circuit_diagram_matches_matrix(rng):
    cps = [circle_from_tan_half(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
           for _ in range(3)]
    circ = lov.LOvCircuit(2, [
        lov.Gate("bs", (0, 1), angle=cps[0]),
        lov.Gate("ps", (1,), angle=cps[1]),
        lov.Gate("pbs", (0, 1)),
        lov.Gate("wp", (0,), angle=cps[2]),
    ])
    m = lov.circuit_mode_matrix(circ, F)
    assert lg.symplectomorphism_check(m)
    assert dg.interpret(lov.lov_to_diagram(circ), "gqga") \
        == lg.graph_relation(m, check=False)


def test_vacuum_source_and_detector_layers():
    circ = lov.LOvCircuit(1, [lov.Gate("vac_state", ())])
    rel = dg.interpret(lov.lov_to_diagram(circ), "gqga")
    vac = lg.vacuum_rel(F)
    assert rel == lg.LagrangianRelation.identity(F, 2).tensor(vac.tensor(vac))
    circ = lov.LOvCircuit(2, [lov.Gate("vac_effect", (1,))])
    rel = dg.interpret(lov.lov_to_diagram(circ), "gqga")
    eff = vac.tensor(vac).dagger()
    assert rel == lg.LagrangianRelation.identity(F, 2).tensor(eff)
    # a sourced-and-detected wire contributes the total scalar
    circ = lov.LOvCircuit(1, [lov.Gate("vac_state", ()),
                              lov.Gate("vac_effect", (1,))])
    rel = dg.interpret(lov.lov_to_diagram(circ), "gqga")
    assert rel == lg.LagrangianRelation.identity(F, 2)


def test_unknown_generator_rejected():
    with pytest.raises(UnknownGenerator):
        lov.gate_mode_matrix(lov.Gate("prism", (0,)), 1, F)
