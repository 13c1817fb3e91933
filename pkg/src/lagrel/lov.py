"""Passive linear optics circuits and their embedding on doubled wires.

Every optical wire carries two polarisation modes (horizontal then
vertical), so a circuit on n wires lands on 2n modes. The unitary
generators interpret to graphs of symplectic rotations; vacuum sources
and detectors bracket the circuit. Squeeze and shear gates extend the
passive language with the active operations the doubled calculus
already supports.

Angles are exact circle points on the exact backend and radians on the
float backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .errors import DimensionMismatch, UnknownGenerator, ZeroSqueeze
from .linalg import Matrix
from .scalars import EXACT, FLOAT, CirclePoint
from . import diagrams as dg


Angle = Union[CirclePoint, float]


@dataclass
class Gate:
    kind: str
    wires: Tuple[int, ...]
    angle: Optional[Angle] = None
    param: Optional[object] = None


@dataclass
class LOvCircuit:
    wires: int
    gates: List[Gate]


UNITARY_KINDS = ("ps", "wp", "bs", "pbs", "squeeze", "shear")
ALL_KINDS = UNITARY_KINDS + ("vac_state", "vac_effect")


def _cos_sin(angle: Angle, field):
    if isinstance(angle, CirclePoint):
        if field is FLOAT:
            c, s = angle.as_floats()
            return field.coerce(c), field.coerce(s)
        return field.coerce(angle.c), field.coerce(angle.s)
    if field.exact:
        raise DimensionMismatch(
            "float angles need the float backend; use CirclePoint for exact work")
    return field.coerce(math.cos(angle)), field.coerce(math.sin(angle))


def _embed(field, n_modes: int, modes: Sequence[int], small: Matrix) -> Matrix:
    """Embed a 2k x 2k mode matrix acting on the listed modes into the
    identity on n_modes."""
    k = len(modes)
    if small.rows != 2 * k:
        raise DimensionMismatch("mode matrix size mismatch")
    big = Matrix.identity(field, 2 * n_modes)
    data = list(big.data)
    width = 2 * n_modes

    def coord(local: int) -> int:
        # local 0..k-1 are z's, k..2k-1 are x's
        return modes[local] if local < k else n_modes + modes[local - k]

    for a in range(2 * k):
        for b in range(2 * k):
            data[coord(a) * width + coord(b)] = small[a, b]
    return Matrix(field, 2 * n_modes, width, data)


def _rot1(field, c, s) -> Matrix:
    return Matrix.from_rows(field, [[c, field.neg(s)], [s, c]])


def _mix2(field, c, s) -> Matrix:
    """Mode-mixing rotation on two modes: z and x blocks rotate alike."""
    z = field.zero
    return Matrix.from_rows(field, [
        [c, field.neg(s), z, z],
        [s, c, z, z],
        [z, z, c, field.neg(s)],
        [z, z, s, c],
    ])


def gate_mode_matrix(gate: Gate, n_wires: int, field=EXACT) -> Matrix:
    """The symplectomorphism on 2*n_wires modes realized by a unitary
    optics gate."""
    n_modes = 2 * n_wires
    if gate.kind == "ps":
        c, s = _cos_sin(gate.angle, field)
        w = gate.wires[0]
        r = _rot1(field, c, s)
        return _embed(field, n_modes, [2 * w], r) @ _embed(field, n_modes, [2 * w + 1], r)
    if gate.kind == "wp":
        c, s = _cos_sin(gate.angle, field)
        w = gate.wires[0]
        return _embed(field, n_modes, [2 * w, 2 * w + 1], _mix2(field, c, s))
    if gate.kind == "bs":
        c, s = _cos_sin(gate.angle, field)
        v, w = gate.wires
        horiz = _embed(field, n_modes, [2 * v, 2 * w], _mix2(field, c, s))
        vert = _embed(field, n_modes, [2 * v + 1, 2 * w + 1], _mix2(field, c, s))
        return horiz @ vert
    if gate.kind == "pbs":
        v, w = gate.wires
        z = field.zero
        o = field.one
        swap = Matrix.from_rows(field, [
            [z, o, z, z], [o, z, z, z], [z, z, z, o], [z, z, o, z]])
        return _embed(field, n_modes, [2 * v + 1, 2 * w + 1], swap)
    if gate.kind == "squeeze":
        a = field.coerce(gate.param)
        if field.is_zero(a):
            raise ZeroSqueeze("squeeze parameter must be nonzero")
        w = gate.wires[0]
        sq = Matrix.from_rows(field, [[a, field.zero],
                                     [field.zero, field.inv(a)]])
        return _embed(field, n_modes, [2 * w + 1], sq)
    if gate.kind == "shear":
        a = field.coerce(gate.param)
        w = gate.wires[0]
        sh = Matrix.from_rows(field, [[field.one, a], [field.zero, field.one]])
        return _embed(field, n_modes, [2 * w + 1], sh)
    raise UnknownGenerator(f"not a unitary optics gate: {gate.kind!r}")


def circuit_mode_matrix(circuit: LOvCircuit, field=EXACT) -> Matrix:
    """Product of the gate symplectomorphisms (unitary gates only)."""
    m = Matrix.identity(field, 4 * circuit.wires)
    for gate in circuit.gates:
        if gate.kind not in UNITARY_KINDS:
            raise UnknownGenerator("matrix path covers unitary gates only")
        m = gate_mode_matrix(gate, circuit.wires, field) @ m
    return m


def _place(n_modes: int, sub: dg.Diagram, modes: Sequence[int]) -> dg.Diagram:
    """Splice a k -> k sub-diagram onto the listed modes of an identity
    layer on n_modes."""
    out = dg.Diagram(n_modes, n_modes)
    remap = {}
    for nid, node in sub.nodes.items():
        remap[nid] = out.add_node(node.kind, phase=node.phase, param=node.param)

    def fix(ep):
        if ep[0] == "in":
            return ("in", modes[ep[1]])
        if ep[0] == "out":
            return ("out", modes[ep[1]])
        return ("node", remap[ep[1]]) if len(ep) == 2 else \
            ("node", remap[ep[1]], ep[2])

    for p, q in sub.edges:
        out.add_edge(fix(p), fix(q))
    touched = set(modes)
    for i in range(n_modes):
        if i not in touched:
            out.add_edge(("in", i), ("out", i))
    return out


def _rotation_subdiagram(c, s, field) -> dg.Diagram:
    """One-mode rotation as shears/boxes, valid for both backends."""
    if field.is_zero(s):
        if field.eq(c, field.one):
            return dg.wire_diagram(1)
        return dg.squeeze_diagram(field.coerce(-1))
    if field.is_zero(c):
        want_inv = field.eq(s, field.one)
        return dg.box_diagram(dg.FOURIER_INV if want_inv else dg.FOURIER)
    if field.eq(c, field.coerce(-1)):
        d = dg.squeeze_diagram(field.coerce(-1))
        return dg.compose_diagrams(d, _rotation_subdiagram(field.neg(c), field.neg(s), field))
    t = field.div(s, field.add(field.one, c))
    d = dg.shear_diagram(field.neg(t), kind="x")
    d = dg.compose_diagrams(d, dg.shear_diagram(s, kind="z"))
    d = dg.compose_diagrams(d, dg.shear_diagram(field.neg(t), kind="x"))
    return d


def gate_layer(gate: Gate, n_wires: int, field=EXACT) -> dg.Diagram:
    """The diagram layer of one gate on the full 2*n_wires modes."""
    n_modes = 2 * n_wires
    if gate.kind == "ps":
        c, s = _cos_sin(gate.angle, field)
        w = gate.wires[0]
        rot = _rotation_subdiagram(c, s, field)
        layer = _place(n_modes, rot, [2 * w])
        return dg.compose_diagrams(layer, _place(n_modes, rot, [2 * w + 1]))
    if gate.kind == "wp":
        c, s = _cos_sin(gate.angle, field)
        w = gate.wires[0]
        rot = Matrix.from_rows(field, [[c, field.neg(s)], [s, c]])
        return _place(n_modes, dg.matrix_diagram(rot), [2 * w, 2 * w + 1])
    if gate.kind == "bs":
        c, s = _cos_sin(gate.angle, field)
        v, w = gate.wires
        rot = Matrix.from_rows(field, [[c, field.neg(s)], [s, c]])
        layer = _place(n_modes, dg.matrix_diagram(rot), [2 * v, 2 * w])
        return dg.compose_diagrams(
            layer, _place(n_modes, dg.matrix_diagram(rot), [2 * v + 1, 2 * w + 1]))
    if gate.kind == "pbs":
        v, w = gate.wires
        layer = dg.Diagram(n_modes, n_modes)
        perm = list(range(n_modes))
        perm[2 * v + 1], perm[2 * w + 1] = perm[2 * w + 1], perm[2 * v + 1]
        for i in range(n_modes):
            layer.add_edge(("in", i), ("out", perm[i]))
        return layer
    if gate.kind == "squeeze":
        w = gate.wires[0]
        return _place(n_modes, dg.squeeze_diagram(gate.param), [2 * w + 1])
    if gate.kind == "shear":
        w = gate.wires[0]
        return _place(n_modes, dg.shear_diagram(gate.param, kind="x"), [2 * w + 1])
    raise UnknownGenerator(f"unknown optics gate {gate.kind!r}")


def lov_to_diagram(circuit: LOvCircuit, field=EXACT) -> dg.Diagram:
    """Compile an optics circuit to a diagram on doubled wires. Vacuum
    sources append wires on the right; detectors consume the rightmost
    wire they name."""
    n = circuit.wires
    d = dg.wire_diagram(2 * n)
    for gate in circuit.gates:
        if gate.kind == "vac_state":
            layer = dg.tensor_diagrams(
                dg.wire_diagram(2 * n),
                dg.tensor_diagrams(dg.vacuum_diagram(), dg.vacuum_diagram()))
            n += 1
        elif gate.kind == "vac_effect":
            w = gate.wires[0]
            if w != n - 1:
                raise UnknownGenerator("detectors consume the last wire")
            vac_eff = dg.relabel_outputs_as_inputs(
                dg.tensor_diagrams(dg.vacuum_diagram(), dg.vacuum_diagram()), 0)
            eff = dg.Diagram(2, 0)
            v1 = eff.add_node(dg.VACUUM)
            v2 = eff.add_node(dg.VACUUM)
            eff.add_edge(("in", 0), ("node", v1))
            eff.add_edge(("in", 1), ("node", v2))
            layer = dg.tensor_diagrams(dg.wire_diagram(2 * (n - 1)), eff)
            n -= 1
        else:
            layer = gate_layer(gate, n, field)
        d = dg.compose_diagrams(d, layer)
    return d
