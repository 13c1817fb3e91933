"""Undirected diagram IR and its interpretation into Lagrangian relations.

Diagrams are open graphs: spider nodes of unbounded degree (grey "Z"
spiders share their x-value across all legs and constrain a z-sum; white
"X" spiders dually), two-legged Fourier / squeeze boxes, and one-legged
vacuum generators. Edges may also connect boundary ports directly.

Interpretation compiles the whole graph into one exact linear system
(two variables per edge, one shared variable per spider) and projects
onto the boundary, so the result is independent of any contraction
order by construction; an order-sensitive variant exists for testing
exactly that.

The sign conventions are the ones fixed in lagrangian.py. In particular
an edge between two legs carries the twist (z, x) -> (-z, x), which is
what makes spiders flexsymmetric and grey fusion hold on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    IllFormedDiagram,
    NegativeEpsilon,
    NotInFragment,
    NotPositiveDefinite,
    ZeroSqueeze,
)
from .linalg import Matrix, is_positive_definite
from .relations import AffineRelation, project_affine
from .lagrangian import (
    APForm,
    LagrangianRelation,
    ap_form,
    from_ap,
    is_positive,
    is_quasi_real,
    name_state,
)
from .scalars import CirclePoint, EXACT, qi

Z = "ZSpider"
X = "XSpider"
FOURIER = "Fourier"
FOURIER_INV = "FourierInv"
SQUEEZE = "Squeeze"
VACUUM = "Vacuum"

SPIDERS = (Z, X)
BOXES = (FOURIER, FOURIER_INV, SQUEEZE)


@dataclass
class Node:
    kind: str
    phase: Optional[Tuple[object, object]] = None  # (affine, symplectic)
    param: Optional[object] = None                 # squeeze parameter


# endpoint encodings: ("in", i) | ("out", j) | ("node", nid) | ("node", nid, port)
Endpoint = Tuple


def _node_ep(nid: int, port: Optional[int] = None) -> Endpoint:
    return ("node", nid) if port is None else ("node", nid, port)


@dataclass
class Diagram:
    n_in: int
    n_out: int
    nodes: Dict[int, Node] = dfield(default_factory=dict)
    edges: List[Tuple[Endpoint, Endpoint]] = dfield(default_factory=list)

    # -- construction helpers ------------------------------------------------

    def add_node(self, kind: str, phase=None, param=None) -> int:
        nid = (max(self.nodes) + 1) if self.nodes else 0
        if kind in SPIDERS:
            phase = phase if phase is not None else (0, 0)
            self.nodes[nid] = Node(kind, phase=(phase[0], phase[1]))
        elif kind == SQUEEZE:
            self.nodes[nid] = Node(kind, param=param)
        elif kind in (FOURIER, FOURIER_INV, VACUUM):
            self.nodes[nid] = Node(kind)
        else:
            raise IllFormedDiagram(f"unknown node kind {kind!r}")
        return nid

    def add_edge(self, p: Endpoint, q: Endpoint):
        self.edges.append((p, q))

    def copy(self) -> "Diagram":
        d = Diagram(self.n_in, self.n_out)
        d.nodes = {k: Node(v.kind, v.phase, v.param) for k, v in self.nodes.items()}
        d.edges = list(self.edges)
        return d

    # -- validation ------------------------------------------------------------

    def _endpoints(self) -> List[Endpoint]:
        out = []
        for p, q in self.edges:
            out.append(p)
            out.append(q)
        return out

    def validate(self):
        seen_boundary: Dict[Tuple, int] = {}
        box_ports: Dict[Tuple, int] = {}
        vac_degree: Dict[int, int] = {}
        for ep in self._endpoints():
            if ep[0] in ("in", "out"):
                side, idx = ep
                limit = self.n_in if side == "in" else self.n_out
                if not (0 <= idx < limit):
                    raise IllFormedDiagram(f"boundary port {ep} out of range")
                seen_boundary[ep] = seen_boundary.get(ep, 0) + 1
            elif ep[0] == "node":
                nid = ep[1]
                if nid not in self.nodes:
                    raise IllFormedDiagram(f"edge endpoint {ep} references no node")
                node = self.nodes[nid]
                if node.kind in BOXES:
                    if len(ep) != 3 or ep[2] not in (0, 1):
                        raise IllFormedDiagram(f"box endpoint {ep} needs port 0 or 1")
                    box_ports[(nid, ep[2])] = box_ports.get((nid, ep[2]), 0) + 1
                elif node.kind == VACUUM:
                    vac_degree[nid] = vac_degree.get(nid, 0) + 1
            else:
                raise IllFormedDiagram(f"bad endpoint {ep}")
        for side, limit in (("in", self.n_in), ("out", self.n_out)):
            for i in range(limit):
                if seen_boundary.get((side, i), 0) != 1:
                    raise IllFormedDiagram(f"boundary port {(side, i)} used "
                                           f"{seen_boundary.get((side, i), 0)} times")
        for nid, node in self.nodes.items():
            if node.kind in BOXES:
                for port in (0, 1):
                    if box_ports.get((nid, port), 0) != 1:
                        raise IllFormedDiagram(f"box {nid} port {port} unused or reused")
            elif node.kind == VACUUM:
                if vac_degree.get(nid, 0) != 1:
                    raise IllFormedDiagram(f"vacuum {nid} must have exactly one leg")


def wire_diagram(n: int) -> Diagram:
    d = Diagram(n, n)
    for i in range(n):
        d.add_edge(("in", i), ("out", i))
    return d


def spider_diagram(kind: str, m: int, n: int, phase) -> Diagram:
    d = Diagram(m, n)
    nid = d.add_node(kind, phase=phase)
    for i in range(m):
        d.add_edge(("in", i), _node_ep(nid))
    for j in range(n):
        d.add_edge(_node_ep(nid), ("out", j))
    return d


def box_diagram(kind: str, param=None) -> Diagram:
    d = Diagram(1, 1)
    nid = d.add_node(kind, param=param)
    d.add_edge(("in", 0), _node_ep(nid, 0))
    d.add_edge(_node_ep(nid, 1), ("out", 0))
    return d


def vacuum_diagram() -> Diagram:
    d = Diagram(0, 1)
    nid = d.add_node(VACUUM)
    d.add_edge(_node_ep(nid), ("out", 0))
    return d


def compose_diagrams(d1: Diagram, d2: Diagram) -> Diagram:
    """d1 then d2; glue via identity junction spiders."""
    if d1.n_out != d2.n_in:
        raise DimensionMismatch("diagram composition arity mismatch")
    out = Diagram(d1.n_in, d2.n_out)
    out.nodes = {k: Node(v.kind, v.phase, v.param) for k, v in d1.nodes.items()}
    off = (max(out.nodes) + 1) if out.nodes else 0
    remap2 = {k: off + i for i, k in enumerate(sorted(d2.nodes))}
    for k, v in d2.nodes.items():
        out.nodes[remap2[k]] = Node(v.kind, v.phase, v.param)
    junctions = {}
    for j in range(d1.n_out):
        nid = out.add_node(Z, phase=(0, 0))
        junctions[j] = nid

    def fix1(ep):
        if ep[0] == "out":
            return _node_ep(junctions[ep[1]])
        return ep

    def fix2(ep):
        if ep[0] == "in":
            return _node_ep(junctions[ep[1]])
        if ep[0] == "node":
            return ("node", remap2[ep[1]]) if len(ep) == 2 else \
                ("node", remap2[ep[1]], ep[2])
        return ep

    for p, q in d1.edges:
        out.add_edge(fix1(p), fix1(q))
    for p, q in d2.edges:
        out.add_edge(fix2(p), fix2(q))
    return out


def tensor_diagrams(d1: Diagram, d2: Diagram) -> Diagram:
    out = Diagram(d1.n_in + d2.n_in, d1.n_out + d2.n_out)
    out.nodes = {k: Node(v.kind, v.phase, v.param) for k, v in d1.nodes.items()}
    off = (max(out.nodes) + 1) if out.nodes else 0
    remap2 = {k: off + i for i, k in enumerate(sorted(d2.nodes))}
    for k, v in d2.nodes.items():
        out.nodes[remap2[k]] = Node(v.kind, v.phase, v.param)

    def fix2(ep):
        if ep[0] == "in":
            return ("in", ep[1] + d1.n_in)
        if ep[0] == "out":
            return ("out", ep[1] + d1.n_out)
        return ("node", remap2[ep[1]]) if len(ep) == 2 else \
            ("node", remap2[ep[1]], ep[2])

    out.edges = list(d1.edges) + [(fix2(p), fix2(q)) for p, q in d2.edges]
    return out


def relabel_outputs_as_inputs(d: Diagram, k: int) -> Diagram:
    """Turn the first k outputs of a state-like diagram into inputs
    (the diagram-level unbending)."""
    out = Diagram(d.n_in + k, d.n_out - k)
    out.nodes = {i: Node(v.kind, v.phase, v.param) for i, v in d.nodes.items()}

    def fix(ep):
        if ep[0] == "out":
            j = ep[1]
            if j < k:
                return ("in", d.n_in + j)
            return ("out", j - k)
        return ep

    out.edges = [(fix(p), fix(q)) for p, q in d.edges]
    return out


# -- calculus fragments -----------------------------------------------------------


def _check_fragment(d: Diagram, calculus: str, f):
    if calculus not in ("gsa", "gga", "gqga"):
        raise NotInFragment(f"unknown calculus {calculus!r}")
    for nid, node in d.nodes.items():
        if node.kind == VACUUM and calculus == "gsa":
            raise NotInFragment("vacuum generator is not part of the plain calculus")
        if calculus in ("gga", "gqga") and node.kind in SPIDERS:
            a, b = (f.coerce(node.phase[0]), f.coerce(node.phase[1]))
            if f.exact:
                if not (f.is_real(a) and f.is_real(b)):
                    raise NotInFragment("spider phases must be real here")
                if calculus == "gga" and not f.is_zero(b):
                    raise NotInFragment("symplectic phases are not affine generators")
        if calculus == "gga" and node.kind in (FOURIER, FOURIER_INV):
            raise NotInFragment("Fourier boxes are not affine generators")
        if node.kind == SQUEEZE:
            c = f.coerce(node.param)
            if f.is_zero(c):
                raise ZeroSqueeze("squeeze parameter must be nonzero")
            if calculus in ("gga", "gqga") and f.exact and not f.is_real(c):
                raise NotInFragment("squeeze parameters must be real here")


# -- interpretation ----------------------------------------------------------------


def interpret(d: Diagram, calculus: str = "gsa", field=EXACT,
              elimination_order: Optional[Sequence[int]] = None) -> LagrangianRelation:
    """Compile the diagram to one exact linear system and project it onto
    the boundary. `elimination_order` optionally projects the internal
    variables out stepwise in the given order (used to demonstrate
    contraction-order independence)."""
    d.validate()
    f = field
    _check_fragment(d, calculus, f)
    n, m = d.n_in, d.n_out
    nb = 2 * n + 2 * m  # boundary variables (z_in, x_in, z_out, x_out)
    edge_var: Dict[int, int] = {}
    nvars = nb
    for i, _ in enumerate(d.edges):
        edge_var[i] = nvars
        nvars += 2
    spider_var: Dict[int, int] = {}
    for nid, node in d.nodes.items():
        if node.kind in SPIDERS:
            spider_var[nid] = nvars
            nvars += 1

    rows: List[List] = []
    rhs: List = []

    def new_row():
        return [f.zero] * nvars

    def ep_value(edge_idx: int, second: bool):
        """(sign for z, zvar, xvar) of the value at one end of an edge."""
        zv = edge_var[edge_idx]
        return (-1 if second else 1, zv, zv + 1)

    # boundary rules: value(in_i) = (z_in_i, x_in_i),
    #                 value(out_j) = (-z_out_j, x_out_j)
    leg_values: Dict[int, List[Tuple[int, int, int]]] = {nid: [] for nid in d.nodes}
    box_leg: Dict[Tuple[int, int], Tuple[int, int, int]] = {}
    for ei, (p, q) in enumerate(d.edges):
        for second, ep in ((False, p), (True, q)):
            sgn, zv, xv = ep_value(ei, second)
            if ep[0] == "in":
                i = ep[1]
                row = new_row()
                row[zv] = f.coerce(sgn)
                row[i] = f.neg(f.one)
                rows.append(row)
                rhs.append(f.zero)
                row = new_row()
                row[xv] = f.one
                row[n + i] = f.neg(f.one)
                rows.append(row)
                rhs.append(f.zero)
            elif ep[0] == "out":
                j = ep[1]
                row = new_row()
                row[zv] = f.coerce(sgn)
                row[2 * n + j] = f.one
                rows.append(row)
                rhs.append(f.zero)
                row = new_row()
                row[xv] = f.one
                row[2 * n + m + j] = f.neg(f.one)
                rows.append(row)
                rhs.append(f.zero)
            else:
                nid = ep[1]
                node = d.nodes[nid]
                if node.kind in BOXES:
                    box_leg[(nid, ep[2])] = (sgn, zv, xv)
                else:
                    leg_values[nid].append((sgn, zv, xv))

    for nid, node in d.nodes.items():
        if node.kind in SPIDERS:
            legs = leg_values[nid]
            a = f.coerce(node.phase[0])
            b = f.coerce(node.phase[1])
            s = spider_var[nid]
            if node.kind == Z:
                # all leg x equal the shared s; sum of leg z plus b*s = a
                for sgn, zv, xv in legs:
                    row = new_row()
                    row[xv] = f.one
                    row[s] = f.neg(f.one)
                    rows.append(row)
                    rhs.append(f.zero)
                row = new_row()
                for sgn, zv, xv in legs:
                    row[zv] = f.add(row[zv], f.coerce(sgn))
                row[s] = f.add(row[s], b)
                rows.append(row)
                rhs.append(a)
            else:
                for sgn, zv, xv in legs:
                    row = new_row()
                    row[zv] = f.coerce(sgn)
                    row[s] = f.neg(f.one)
                    rows.append(row)
                    rhs.append(f.zero)
                row = new_row()
                for sgn, zv, xv in legs:
                    row[xv] = f.add(row[xv], f.one)
                row[s] = f.add(row[s], b)
                rows.append(row)
                rhs.append(a)
        elif node.kind == VACUUM:
            (sgn, zv, xv) = leg_values[nid][0]
            # leg value (zeta, xi) with zeta = i * xi
            row = new_row()
            row[zv] = f.coerce(sgn)
            row[xv] = f.neg(f.i)
            rows.append(row)
            rhs.append(f.zero)
        elif node.kind in (FOURIER, FOURIER_INV):
            s0, z0, x0 = box_leg[(nid, 0)]
            s1, z1, x1 = box_leg[(nid, 1)]
            flip = f.one if node.kind == FOURIER else f.neg(f.one)
            # Fourier: v1 = (x0-val, z0-val); inverse negates both
            row = new_row()
            row[z1] = f.coerce(s1)
            row[x0] = f.neg(flip)
            rows.append(row)
            rhs.append(f.zero)
            row = new_row()
            row[x1] = f.one
            row[z0] = f.sub(row[z0], f.mul(flip, f.coerce(s0)))
            rows.append(row)
            rhs.append(f.zero)
        elif node.kind == SQUEEZE:
            c = f.coerce(node.param)
            if f.is_zero(c):
                raise ZeroSqueeze("squeeze parameter must be nonzero")
            s0, z0, x0 = box_leg[(nid, 0)]
            s1, z1, x1 = box_leg[(nid, 1)]
            # v1 = (-c * v0.z, v0.x / c)
            row = new_row()
            row[z1] = f.coerce(s1)
            row[z0] = f.add(row[z0], f.mul(c, f.coerce(s0)))
            rows.append(row)
            rhs.append(f.zero)
            row = new_row()
            row[x1] = f.one
            row[x0] = f.sub(row[x0], f.inv(c))
            rows.append(row)
            rhs.append(f.zero)

    keep = list(range(nb))
    if elimination_order is not None:
        internal = list(elimination_order)
        if sorted(internal) != list(range(nb, nvars)):
            raise DimensionMismatch("elimination order must cover internal variables")
        live = list(range(nvars))
        for var in internal:
            pos = live.index(var)
            sub_keep = [i for i in range(len(live)) if i != pos]
            out = project_affine(f, len(live), rows, rhs, sub_keep)
            if out is None:
                rel = AffineRelation.empty(f, 2 * n, 2 * m)
                ordered = _reorder_boundary(rel, n, m)
                return LagrangianRelation(ordered, n, m)
            rows = out[0].to_lists()
            rhs = out[1].to_list()
            live.pop(pos)
        rel = AffineRelation.from_constraints(f, 2 * n, 2 * m, rows, rhs)
        return LagrangianRelation(_reorder_boundary(rel, n, m), n, m)
    out = project_affine(f, nvars, rows, rhs, keep)
    if out is None:
        rel = AffineRelation.empty(f, 2 * n, 2 * m)
    else:
        rel = AffineRelation(f, 2 * n, 2 * m, out[0], out[1])
    return LagrangianRelation(_reorder_boundary(rel, n, m), n, m)


def _reorder_boundary(rel: AffineRelation, n: int, m: int) -> AffineRelation:
    # interpreter order is already (z_in, x_in, z_out, x_out); nothing to do,
    # but keep the hook in one place in case the variable layout changes.
    return rel


# -- weighted edge gadget ------------------------------------------------------------


def add_weighted_edge(d: Diagram, p: Endpoint, q: Endpoint, weight):
    """Connect two spider legs so each side's z-sum receives
    weight * (other side's shared x). A bare Fourier link is the
    weight -1 gadget; other weights squeeze the link."""
    w = weight
    f_nid = d.add_node(FOURIER)
    if w == -1 or w == qi(-1):
        d.add_edge(p, _node_ep(f_nid, 0))
        d.add_edge(_node_ep(f_nid, 1), q)
        return
    # chain p -- Sq(c) -- F -- q contributes -1/c, so c = -1/w
    c = _neg_scalar(_invert_scalar(w))
    sq_nid = d.add_node(SQUEEZE, param=c)
    d.add_edge(p, _node_ep(sq_nid, 0))
    d.add_edge(_node_ep(sq_nid, 1), _node_ep(f_nid, 0))
    d.add_edge(_node_ep(f_nid, 1), q)


def _invert_scalar(w):
    if isinstance(w, (int, Fraction)):
        return Fraction(1, 1) / Fraction(w)
    return w.inv() if hasattr(w, "inv") else 1.0 / w


def _neg_scalar(w):
    return -w


# -- normal-form synthesis -------------------------------------------------------------


def four_square_decomposition(d: Fraction) -> List[Fraction]:
    """Nonnegative rational as a sum of at most four rational squares."""
    d = Fraction(d)
    if d < 0:
        raise ValueError("need a nonnegative rational")
    if d == 0:
        return []
    n = d.numerator * d.denominator
    q = d.denominator
    import math
    best = None
    a_max = math.isqrt(n)
    for a in range(a_max, -1, -1):
        r1 = n - a * a
        b_max = math.isqrt(r1)
        for b in range(b_max, -1, -1):
            r2 = r1 - b * b
            c = math.isqrt(r2)
            e2 = r2 - c * c
            e = math.isqrt(e2)
            if e * e == e2:
                best = [a, b, c, e]
                break
        if best:
            break
    assert best is not None, "four-square decomposition failed"
    return [Fraction(v, q) for v in best if v]


def _ldlt_decomposition(sigma: Matrix) -> List[Tuple[Fraction, List[Fraction]]]:
    """PSD real rational sigma as sum of d_j * r_j r_j^T with rational
    data; returns [(d_j, r_j)] for the nonzero pivots."""
    f = sigma.field
    n = sigma.rows
    work = [[sigma[i, j].re for j in range(n)] for i in range(n)]
    terms = []
    active = list(range(n))
    while active:
        p = None
        for i in active:
            if work[i][i] != 0:
                p = i
                break
        if p is None:
            break
        dpiv = work[p][p]
        r = [Fraction(0)] * n
        for j in active:
            r[j] = work[p][j] / dpiv if j != p else Fraction(1)
        terms.append((Fraction(dpiv), r))
        for i in active:
            if i == p:
                continue
            li = work[i][p] / dpiv
            for j in active:
                work[i][j] -= li * work[p][j]
        active = [i for i in active if i != p]
    return terms


def _attach_imaginary_part(d: Diagram, sigma_im: Matrix, pivot_nodes: List[int]):
    """Wire auxiliary vacuum gadgets so the pivot spiders' z-rows pick up
    +i * sigma_im against their shared x-values."""
    for dj, r in _ldlt_decomposition(sigma_im):
        for w in four_square_decomposition(dj):
            aux = d.add_node(Z, phase=(0, 0))
            vac = d.add_node(VACUUM)
            sq = d.add_node(SQUEEZE, param=w)
            fr = d.add_node(FOURIER)
            d.add_edge(_node_ep(aux), _node_ep(sq, 0))
            d.add_edge(_node_ep(sq, 1), _node_ep(fr, 0))
            d.add_edge(_node_ep(fr, 1), _node_ep(vac))
            for p, rp in enumerate(r):
                if rp == 0:
                    continue
                add_weighted_edge(d, _node_ep(aux), _node_ep(pivot_nodes[p]),
                                  Fraction(rp))


def _synthesize_ap_direct(ap: APForm, calculus: str) -> Diagram:
    """AP-shaped diagram: one grey spider per pivot wire, one white
    spider per fibre wire, phase-block couplings between pivots (with
    auxiliary vacuum gadgets supplying the imaginary part outside the
    plain calculus) and squeeze links realizing the fibre coupling."""
    f = ap.L.field
    n, k = ap.n, ap.k
    d = Diagram(0, n)
    phi = ap.phi
    pivot_nodes = []
    for p in range(k):
        if calculus == "gsa":
            b = f.neg(phi[p, p])
        else:
            b = f.neg(f.re(phi[p, p]))
        node = d.add_node(Z, phase=(ap.mu[p], b))
        pivot_nodes.append(node)
        d.add_edge(_node_ep(node), ("out", ap.perm[p]))
    fibre_nodes = []
    for j in range(n - k):
        node = d.add_node(X, phase=(ap.xshift[j], 0))
        fibre_nodes.append(node)
        d.add_edge(_node_ep(node), ("out", ap.perm[k + j]))
    # pivot-pivot couplings for the (real part of the) phase block
    for p in range(k):
        for q in range(p + 1, k):
            c = phi[p, q] if calculus == "gsa" else f.re(phi[p, q])
            if not f.is_zero(c):
                add_weighted_edge(d, _node_ep(pivot_nodes[p]),
                                  _node_ep(pivot_nodes[q]), f.neg(c))
    if calculus != "gsa":
        sigma_im = phi.imag()
        if not sigma_im.is_zero():
            _attach_imaginary_part(d, sigma_im, pivot_nodes)
    # fibre couplings: white_f -- Sq(-L_pf) -- grey_p
    for p in range(k):
        for j in range(n - k):
            lpj = ap.L[p, j]
            if f.is_zero(lpj):
                continue
            sq = d.add_node(SQUEEZE, param=f.neg(lpj))
            d.add_edge(_node_ep(fibre_nodes[j]), _node_ep(sq, 0))
            d.add_edge(_node_ep(sq, 1), _node_ep(pivot_nodes[p]))
    return d


def _translation_diagram(vz, vx) -> Diagram:
    """Per-wire phase-space translation (z + vz_i, x + vx_i)."""
    out = None
    for z, x in zip(vz, vx):
        d = wire_diagram(1)
        if not (z == 0 or getattr(z, "is_zero", lambda: False)()):
            d = compose_diagrams(d, z_translate_diagram(z))
        if not (x == 0 or getattr(x, "is_zero", lambda: False)()):
            d = compose_diagrams(d, x_translate_diagram(x))
        out = d if out is None else tensor_diagrams(out, d)
    return out if out is not None else Diagram(0, 0)


def _permute_outputs(d: Diagram, perm: Sequence[int]) -> Diagram:
    """Relabel output j as output perm[j]."""
    out = d.copy()
    out.edges = [
        tuple(("out", perm[ep[1]]) if ep[0] == "out" else ep for ep in e)
        for e in d.edges
    ]
    return out


def _uniform_state_diagram() -> Diagram:
    d = Diagram(0, 1)
    nid = d.add_node(X, phase=(0, 0))
    d.add_edge(_node_ep(nid), ("out", 0))
    return d


def _synthesize_gga_state(state: LagrangianRelation) -> Diagram:
    """Fourier-free synthesis: vacuums and uniform generators pushed
    through a block-matrix diagram, then translated. Covers exactly the
    quasi-real states."""
    from .linalg import real_solution
    f = state.field
    n = state.n_out
    shift = real_solution(state.rel.mat, state.rel.rhs)
    if shift is None:
        raise NotInFragment("quasi-real state must have a real shift")
    linear = LagrangianRelation.from_constraints(
        f, 0, n, state.rel.mat.to_lists(), [f.zero] * state.rel.mat.rows)
    ap = ap_form(linear)
    k = ap.n - (ap.n - ap.k)  # pivot count
    sigma = ap.phi.imag()
    cols: List[List] = []
    for dj, r in _ldlt_decomposition(sigma):
        for w in four_square_decomposition(dj):
            cols.append([f.mul(f.coerce(w), f.coerce(r[p])) for p in range(ap.k)])
    s = len(cols)
    # M = [[Atilde, -L], [0, I]] over (vacuum, uniform) inputs
    rows = []
    for p in range(ap.k):
        rows.append([cols[c][p] for c in range(s)] +
                    [f.neg(ap.L[p, j]) for j in range(ap.n - ap.k)])
    for j in range(ap.n - ap.k):
        rows.append([f.zero] * s +
                    [f.one if jj == j else f.zero for jj in range(ap.n - ap.k)])
    mat = Matrix(f, ap.n, s + (ap.n - ap.k),
                 [x for row in rows for x in row]) if rows else Matrix(f, 0, s, [])
    src = None
    for _ in range(s):
        src = vacuum_diagram() if src is None else tensor_diagrams(src, vacuum_diagram())
    for _ in range(ap.n - ap.k):
        u = _uniform_state_diagram()
        src = u if src is None else tensor_diagrams(src, u)
    if src is None:
        src = Diagram(0, 0)
    d = compose_diagrams(src, matrix_diagram(mat))
    vz = shift.take_rows(range(n)).to_list()
    vx = shift.take_rows(range(n, 2 * n)).to_list()
    # outputs are currently in pivot-then-fibre order; translate in wire order
    d = _permute_outputs(d, list(ap.perm))
    d = compose_diagrams(d, _translation_diagram(vz, vx))
    return d


def synthesize_state(ap_or_state, calculus: str) -> Diagram:
    """Build a diagram whose interpretation is the given nonempty state,
    using only generators of the requested calculus."""
    if isinstance(ap_or_state, APForm):
        state = from_ap(ap_or_state)
    else:
        state = ap_or_state
    f = state.field
    if calculus == "gsa":
        return _synthesize_ap_direct(ap_form(state), "gsa")
    if calculus == "gga":
        return _synthesize_gga_state(state)
    # gqga: real translations first, then the real-phase AP diagram
    from .linalg import real_solution
    n = state.n_out
    shift = real_solution(state.rel.mat, state.rel.rhs)
    if shift is None:
        raise NotInFragment("positive state must have a real shift")
    linear = LagrangianRelation.from_constraints(
        f, 0, n, state.rel.mat.to_lists(), [f.zero] * state.rel.mat.rows)
    d = _synthesize_ap_direct(ap_form(linear), "gqga")
    vz = shift.take_rows(range(n)).to_list()
    vx = shift.take_rows(range(n, 2 * n)).to_list()
    return compose_diagrams(d, _translation_diagram(vz, vx))


def empty_diagram(field, n_in: int, n_out: int) -> Diagram:
    """The canonical inconsistent diagram of the requested type."""
    d = Diagram(n_in, n_out)
    a = d.add_node(Z, phase=(1, 0))
    b = d.add_node(Z, phase=(0, 0))
    d.add_edge(_node_ep(a), _node_ep(b))
    for i in range(n_in):
        w = d.add_node(X, phase=(0, 0))
        d.add_edge(("in", i), _node_ep(w))
    for j in range(n_out):
        w = d.add_node(X, phase=(0, 0))
        d.add_edge(_node_ep(w), ("out", j))
    return d


def synthesize_normal_form(r: LagrangianRelation, calculus: str = "gsa") -> Diagram:
    """Constructive completeness: a diagram in the calculus interpreting
    to r. GSA covers every relation; the Gaussian calculi demand their
    semantic fragments."""
    f = r.field
    if r.is_empty:
        return empty_diagram(f, r.n_in, r.n_out)
    if calculus == "gga" and not is_quasi_real(r):
        raise NotInFragment("Gaussian-relation synthesis needs a quasi-real relation")
    if calculus == "gqga" and not is_positive(r):
        raise NotInFragment("positive-fragment synthesis needs a positive relation")
    state = name_state(r) if r.n_in else r
    d = synthesize_state(state, calculus)
    if r.n_in:
        d = relabel_outputs_as_inputs(d, r.n_in)
    return d


# -- weighted graph-state import --------------------------------------------------


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    import math
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


def import_graph_state(u: Matrix, v: Matrix) -> Diagram:
    """Weighted graph state with adjacency U + iV (V positive definite)
    as a diagram: one grey spider per vertex, weighted edges between
    them, vacuum dressing for the imaginary self-phases whenever the
    required edge weight 1/sqrt(V_jj) is rational, complex self-phases
    otherwise."""
    f = u.field
    n = u.rows
    if not (u.is_symmetric() and v.is_symmetric() and u.is_real() and v.is_real()):
        raise NotPositiveDefinite("graph adjacency must be real symmetric")
    if not is_positive_definite(v):
        raise NotPositiveDefinite("imaginary part must be positive definite")
    d = Diagram(0, n)
    roots = []
    for j in range(n):
        off_diag_v = any(not f.is_zero(v[j, kk]) for kk in range(n) if kk != j)
        roots.append(_rational_sqrt(v[j, j].re) if not off_diag_v else None)
    unfuse = all(r is not None for r in roots)
    verts = []
    for j in range(n):
        root = roots[j] if unfuse else None
        if root is not None:
            node = d.add_node(Z, phase=(0, f.neg(u[j, j])))
            vac = d.add_node(VACUUM)
            if root == 1:
                fr = d.add_node(FOURIER)
                d.add_edge(_node_ep(node), _node_ep(fr, 0))
                d.add_edge(_node_ep(fr, 1), _node_ep(vac))
            else:
                sq = d.add_node(SQUEEZE, param=Fraction(1) / root)
                fr = d.add_node(FOURIER)
                d.add_edge(_node_ep(node), _node_ep(sq, 0))
                d.add_edge(_node_ep(sq, 1), _node_ep(fr, 0))
                d.add_edge(_node_ep(fr, 1), _node_ep(vac))
        else:
            z_jj = f.add(u[j, j], f.mul(f.i, v[j, j]))
            node = d.add_node(Z, phase=(0, f.neg(z_jj)))
        verts.append(node)
        d.add_edge(_node_ep(node), ("out", j))
    for j in range(n):
        for kk in range(j + 1, n):
            w = f.add(u[j, kk], f.mul(f.i, v[j, kk]))
            if not f.is_zero(w):
                add_weighted_edge(d, _node_ep(verts[j]), _node_ep(verts[kk]),
                                  f.neg(w))
    return d


# -- teleportation demo ---------------------------------------------------------------


def z_translate_diagram(a) -> Diagram:
    return spider_diagram(Z, 1, 1, (a, 0))


def x_translate_diagram(t) -> Diagram:
    d = compose_diagrams(spider_diagram(X, 1, 1, (_neg_scalar(t), 0)),
                         spider_diagram(X, 1, 1, (0, 0)))
    return d


def bell_resource_diagram(eps) -> Diagram:
    """Two-mode resource: the 2-legged grey node, blurred in position by
    eps (the node's symplectic phase absorbs the blur)."""
    return spider_diagram(Z, 0, 2, (0, qi(0, -Fraction(eps))))


def bell_effect_diagram(a, b) -> Diagram:
    """Recorded Bell-basis effect on two wires:
    z1 + z2 = a and x1 - x2 = b."""
    shifted = tensor_diagrams(wire_diagram(1), x_translate_diagram(b))
    return compose_diagrams(shifted, spider_diagram(Z, 2, 0, (_neg_scalar(a), 0)))


def teleportation_diagram(eps, outcome=(0, 0)) -> Diagram:
    """The teleportation composite: shared two-mode resource with
    position blur eps, a Bell-basis effect recording the outcome (a, b),
    and the receiver's phase-space correction."""
    a, b = outcome
    stage1 = tensor_diagrams(wire_diagram(1), bell_resource_diagram(eps))
    stage2 = tensor_diagrams(bell_effect_diagram(a, b), wire_diagram(1))
    corr = compose_diagrams(z_translate_diagram(a), x_translate_diagram(b))
    return compose_diagrams(compose_diagrams(stage1, stage2), corr)


def teleportation_oracle(eps, outcome=(0, 0), field=EXACT) -> LagrangianRelation:
    """Direct relational computation of the same channel, no diagrams:
    compose the resource, the recorded effect, and the correction."""
    f = field
    eps = f.coerce(eps)
    a, b = (f.coerce(outcome[0]), f.coerce(outcome[1]))
    # resource: 0 -> 2 with legs (A, B): z_A + z_B = i eps x_A, x_A = x_B
    bell = LagrangianRelation.from_constraints(
        f, 0, 2,
        [[1, 1, f.mul(f.neg(f.i), eps), 0],
         [0, 0, 1, -1]],
        [0, 0])
    # effect on (in, A): z_in + z_A = a, x_in - x_A = b
    effect = LagrangianRelation.from_constraints(
        f, 2, 0,
        [[1, 1, 0, 0],
         [0, 0, 1, -1]],
        [a, b])
    from .lagrangian import z_translate_rel, x_translate_rel
    idw = LagrangianRelation.identity(f, 1)
    pre = idw.tensor(bell)                      # 1 -> 3 (in, A, B)
    measured = pre.compose(effect.tensor(idw))  # 1 -> 1
    corr = z_translate_rel(f, a).compose(x_translate_rel(f, b))
    return measured.compose(corr)


def demo_teleportation(eps, outcome=(0, 0), field=EXACT) -> LagrangianRelation:
    """Interpret the diagrammatic teleportation composite. Negative blur
    is rejected; eps = 0 must give the identity channel exactly."""
    eps = Fraction(eps.re) if hasattr(eps, "re") and not isinstance(eps, complex) \
        else Fraction(eps)
    if eps < 0:
        raise NegativeEpsilon("position blur must be nonnegative")
    d = teleportation_diagram(eps, outcome)
    return interpret(d, calculus="gsa", field=field)


# -- matrix diagrams and rotations ------------------------------------------------------


def matrix_diagram(mat: Matrix) -> Diagram:
    """The block-matrix diagram of A: n -> m wires interpreting to the
    Lagrangian lift {(z, x) -> (A z, x')} with x = A^T x'."""
    f = mat.field
    m, n = mat.rows, mat.cols
    d = Diagram(n, m)
    whites = []
    for i in range(n):
        w = d.add_node(X, phase=(0, 0))
        whites.append(w)
        d.add_edge(("in", i), _node_ep(w))
    greys = []
    for j in range(m):
        g = d.add_node(Z, phase=(0, 0))
        greys.append(g)
        d.add_edge(_node_ep(g), ("out", j))
    for j in range(m):
        for i in range(n):
            c = mat[j, i]
            if f.is_zero(c):
                continue
            sq = d.add_node(SQUEEZE, param=f.neg(c))
            d.add_edge(_node_ep(whites[i]), _node_ep(sq, 0))
            d.add_edge(_node_ep(sq, 1), _node_ep(greys[j]))
    return d


def shear_diagram(a, kind: str = "x") -> Diagram:
    """One-mode shears: kind 'x' sends z -> z + a x (a grey symplectic
    phase); kind 'z' sends x -> x + a z (two white spiders)."""
    if kind == "x":
        return spider_diagram(Z, 1, 1, (0, _neg_scalar(a)))
    d = Diagram(1, 1)
    w1 = d.add_node(X, phase=(0, _neg_scalar(a)))
    w2 = d.add_node(X, phase=(0, 0))
    d.add_edge(("in", 0), _node_ep(w1))
    d.add_edge(_node_ep(w1), _node_ep(w2))
    d.add_edge(_node_ep(w2), ("out", 0))
    return d


def squeeze_diagram(a) -> Diagram:
    if a == 0:
        raise ZeroSqueeze("squeeze parameter must be nonzero")
    return box_diagram(SQUEEZE, param=a)


def rotation_diagram(cp: CirclePoint) -> Diagram:
    """One-mode phase rotation R = [[c, -s], [s, c]] on (z, x) as shears
    (three-shear decomposition), with the Fourier boxes covering the
    asymptotes and the antipode covering the half turn."""
    c, s = cp.c, cp.s
    if s == 0:
        if c == 1:
            return wire_diagram(1)
        return squeeze_diagram(-1)
    if c == 0:
        return box_diagram(FOURIER if s == -1 else FOURIER_INV)
    if c == -1:  # unreachable on the circle with s != 0; kept for floats
        return squeeze_diagram(-1)
    t = s / (1 + c)
    d = shear_diagram(-t, kind="x")
    d = compose_diagrams(d, shear_diagram(s, kind="z"))
    d = compose_diagrams(d, shear_diagram(-t, kind="x"))
    return d
