"""Affine Lagrangian relations over the doubled (z, x) coordinates.

A relation n -> m lives in K^{2n} + K^{2m} with coordinates ordered
(z_in, x_in | z_out, x_out), z-major within each side. The twisted
symplectic form is omega_out - omega_in, which is what makes relational
composition land back in the Lagrangian world.

This module holds the Lagrangian predicates, the reduced AP canonical
form with its uniqueness contract, the positivity / quasi-reality
deciders (each computed by two independent algorithms that must agree),
and generator builders for symplectomorphisms and spiders.

Convention notes, fixed once and used everywhere:
  * Omega_n = [[0, I], [-I, 0]], i.e. omega((z,x),(z',x')) = z.x' - x.z'.
  * The one-mode vacuum is the subspace {x = -i z} (equivalently z = i x),
    which satisfies i*omega(conj v, v) >= 0; its AP phase is phi = i.
  * The AP generator matrix is [[I_k, L, -phi, 0], [0, 0, -L^T, I_{n-k}]]
    (columns permuted by the wire permutation), with right-hand side
    (mu, xshift). Positivity reads off as "L real and Im(phi) PSD".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    EmptyRelation,
    InternalDisagreement,
    NotAState,
    NotLagrangian,
    NotSymplectic,
)
from .linalg import (
    Matrix,
    block,
    invert,
    is_psd,
    is_psd_hermitian,
    kernel,
    real_solution,
    rref,
    to_text,
)
from .relations import AffineRelation
from .scalars import CirclePoint


# -- symplectic forms ---------------------------------------------------------


def omega(field, n: int) -> Matrix:
    """Matrix of the standard form on K^{2n}: omega(v, w) = v^T Omega w."""
    f = field
    i_n = Matrix.identity(f, n)
    z_n = Matrix.zeros(f, n, n)
    return block([[z_n, i_n], [-i_n, z_n]])


def omega_twisted(field, n: int, m: int) -> Matrix:
    """Form for relations n -> m: omega_out - omega_in as one matrix."""
    f = field
    top = -omega(f, n)
    bot = omega(f, m)
    z1 = Matrix.zeros(f, 2 * n, 2 * m)
    z2 = Matrix.zeros(f, 2 * m, 2 * n)
    return block([[top, z1], [z2, bot]])


def chi_form(field, n: int) -> Matrix:
    """Matrix of chi((z,x),(z',x')) = conj(z).x' + conj(x).z'."""
    f = field
    i_n = Matrix.identity(f, n)
    z_n = Matrix.zeros(f, n, n)
    return block([[z_n, i_n], [i_n, z_n]])


# -- the relation type --------------------------------------------------------


class LagrangianRelation:
    """An affine relation between doubled spaces, n_in modes to n_out."""

    __slots__ = ("rel", "n_in", "n_out")

    def __init__(self, rel: AffineRelation, n_in: int, n_out: int):
        if rel.dom != 2 * n_in or rel.cod != 2 * n_out:
            raise DimensionMismatch("doubled coordinate count mismatch")
        self.rel = rel
        self.n_in = n_in
        self.n_out = n_out

    @property
    def field(self):
        return self.rel.field

    @property
    def is_empty(self) -> bool:
        return self.rel.is_empty

    def __eq__(self, other) -> bool:
        if not isinstance(other, LagrangianRelation):
            return NotImplemented
        return (self.n_in, self.n_out) == (other.n_in, other.n_out) and self.rel == other.rel

    def __hash__(self):
        return hash((self.n_in, self.n_out, self.rel))

    def __repr__(self):
        return f"LagrangianRelation({self.n_in}->{self.n_out}, {self.rel!r})"

    @classmethod
    def from_constraints(cls, field, n_in: int, n_out: int,
                         rows: Sequence[Sequence], rhs: Sequence) -> "LagrangianRelation":
        rel = AffineRelation.from_constraints(field, 2 * n_in, 2 * n_out, rows, rhs)
        return cls(rel, n_in, n_out)

    @classmethod
    def empty(cls, field, n_in: int, n_out: int) -> "LagrangianRelation":
        return cls(AffineRelation.empty(field, 2 * n_in, 2 * n_out), n_in, n_out)

    def compose(self, other: "LagrangianRelation") -> "LagrangianRelation":
        if self.n_out != other.n_in:
            raise DimensionMismatch("mode mismatch in composition")
        return LagrangianRelation(self.rel.compose(other.rel), self.n_in, other.n_out)

    def tensor(self, other: "LagrangianRelation") -> "LagrangianRelation":
        """Direct sum with block interleaving of z/x components."""
        plain = self.rel.tensor(other.rel)
        n1, m1, n2, m2 = self.n_in, self.n_out, other.n_in, other.n_out

        def side_perm(a1: int, a2: int, off: int) -> List[int]:
            # plain layout: (z1, x1, z2, x2); want (z1, z2, x1, x2)
            zs = list(range(off, off + a1)) + list(range(off + 2 * a1, off + 2 * a1 + a2))
            xs = list(range(off + a1, off + 2 * a1)) + \
                 list(range(off + 2 * a1 + a2, off + 2 * a1 + 2 * a2))
            return zs + xs

        perm = side_perm(n1, n2, 0) + side_perm(m1, m2, 2 * n1 + 2 * n2)
        rel = plain.permute_columns(perm, dom=2 * (n1 + n2), cod=2 * (m1 + m2))
        return LagrangianRelation(rel, n1 + n2, m1 + m2)

    def converse(self) -> "LagrangianRelation":
        return LagrangianRelation(self.rel.converse(), self.n_out, self.n_in)

    def conjugate(self) -> "LagrangianRelation":
        if self.is_empty:
            return self
        rel = AffineRelation.from_constraints(
            self.field, self.rel.dom, self.rel.cod,
            self.rel.mat.conj().to_lists(), self.rel.rhs.conj().to_list())
        return LagrangianRelation(rel, self.n_in, self.n_out)

    def dagger(self) -> "LagrangianRelation":
        """Conjugate converse: the adjoint sending states to effects."""
        return self.conjugate().converse()

    @classmethod
    def identity(cls, field, n: int) -> "LagrangianRelation":
        return cls(AffineRelation.identity(field, 2 * n), n, n)

    def contains(self, z_in, x_in, z_out, x_out) -> bool:
        return self.rel.contains(list(z_in) + list(x_in) + list(z_out) + list(x_out))


def symmetry(field, n: int, m: int) -> LagrangianRelation:
    f = field
    rows, rhs = [], []
    total = n + m
    # out wire j carries in wire src[j]
    src = list(range(n, n + m)) + list(range(n))
    for j, s in enumerate(src):
        for blk in (0, 1):  # z then x
            row = [f.zero] * (4 * total)
            row[blk * total + s] = f.one
            row[2 * total + blk * total + j] = f.neg(f.one)
            rows.append(row)
            rhs.append(f.zero)
    return LagrangianRelation.from_constraints(f, total, total, rows, rhs)


def cup(field, n: int) -> LagrangianRelation:
    """The compact cup 0 -> 2n: wire i pairs with wire n+i via
    (z, z, x, -x)."""
    f = field
    rows, rhs = [], []
    for i in range(n):
        rz = [f.zero] * (4 * n)
        rz[i] = f.one
        rz[n + i] = f.neg(f.one)
        rows.append(rz)
        rhs.append(f.zero)
        rx = [f.zero] * (4 * n)
        rx[2 * n + i] = f.one
        rx[2 * n + n + i] = f.one
        rows.append(rx)
        rhs.append(f.zero)
    return LagrangianRelation.from_constraints(f, 0, 2 * n, rows, rhs)


def cap(field, n: int) -> LagrangianRelation:
    return cup(field, n).converse()


def name_state(r: LagrangianRelation) -> LagrangianRelation:
    """Bend all inputs into outputs: the name, a state on n_in + n_out
    modes. Bent wires carry (-z_in, x_in)."""
    f = r.field
    n, m = r.n_in, r.n_out
    total = n + m
    if r.is_empty:
        return LagrangianRelation.empty(f, 0, total)
    # columns of the state system, in state order (Z(total), X(total))
    cols = []
    signs = []
    for i in range(n):          # Z_i = -z_in_i
        cols.append(i)
        signs.append(-1)
    for j in range(m):          # Z_{n+j} = z_out_j
        cols.append(2 * n + j)
        signs.append(1)
    for i in range(n):          # X_i = x_in_i
        cols.append(n + i)
        signs.append(1)
    for j in range(m):          # X_{n+j} = x_out_j
        cols.append(2 * n + m + j)
        signs.append(1)
    rows = []
    for i in range(r.rel.mat.rows):
        old = r.rel.mat.row(i)
        rows.append([old[c] if s == 1 else f.neg(old[c]) for c, s in zip(cols, signs)])
    return LagrangianRelation.from_constraints(f, 0, total, rows, r.rel.rhs.to_list())


def unname_state(s: LagrangianRelation, n_in: int) -> LagrangianRelation:
    """Inverse of name_state: rebend the first n_in wires into inputs."""
    f = s.field
    total = s.n_out
    m = total - n_in
    if s.n_in != 0:
        raise NotAState("unname expects a state")
    if s.is_empty:
        return LagrangianRelation.empty(f, n_in, m)
    cols, signs = [], []
    for i in range(n_in):       # z_in_i = -Z_i
        cols.append(i)
        signs.append(-1)
    for i in range(n_in):       # x_in_i = X_i
        cols.append(total + i)
        signs.append(1)
    for j in range(m):
        cols.append(n_in + j)
        signs.append(1)
    for j in range(m):
        cols.append(total + n_in + j)
        signs.append(1)
    rows = []
    for i in range(s.rel.mat.rows):
        old = s.rel.mat.row(i)
        rows.append([old[c] if sg == 1 else f.neg(old[c]) for c, sg in zip(cols, signs)])
    return LagrangianRelation.from_constraints(f, n_in, m, rows, s.rel.rhs.to_list())


# -- Lagrangian predicate ------------------------------------------------------


def is_lagrangian(r: LagrangianRelation) -> bool:
    """Half dimension plus isotropy with respect to the twisted form."""
    if r.is_empty:
        return True
    total = r.n_in + r.n_out
    mat = r.rel.mat
    if mat.rows != total:
        return False
    k = kernel(mat)
    om = omega_twisted(r.field, r.n_in, r.n_out)
    return (k.transpose() @ om @ k).is_zero()


# -- reduced AP form -----------------------------------------------------------


@dataclass(frozen=True)
class APForm:
    """Canonical data of a nonempty Lagrangian state on n modes.

    k wires (after the permutation) carry pivots; phi is the k x k
    symmetric phase block, mu the pivot-side shift, L the coupling into
    the remaining n-k fibre wires and xshift their x-side shift.
    """

    n: int
    perm: Tuple[int, ...]
    k: int
    L: Matrix
    phi: Matrix
    mu: Tuple
    xshift: Tuple

    def fingerprint(self) -> str:
        f = self.L.field
        return (
            f"AP[n={self.n};perm={','.join(map(str, self.perm))};k={self.k};"
            f"L={to_text(self.L)};phi={to_text(self.phi)};"
            f"mu={','.join(f.to_str(x) for x in self.mu)};"
            f"x={','.join(f.to_str(x) for x in self.xshift)}]"
        )

    def invariant(self) -> Tuple[Matrix, Matrix]:
        """The pair (E, phi) with E = [I, L] * perm."""
        f = self.L.field
        e = Matrix.identity(f, self.k).hstack(self.L)
        inv_cols = [0] * self.n
        for new, old in enumerate(self.perm):
            inv_cols[old] = new
        return e.take_cols(inv_cols), self.phi


def ap_form(r: LagrangianRelation) -> APForm:
    """Reduce a nonempty Lagrangian state to its unique AP form.

    The wire permutation is fixed by greedy lowest-index pivot selection
    on the z-block of the canonical constraint matrix.
    """
    if r.n_in != 0:
        raise NotAState("ap_form expects a state; bend maps with cups first")
    if r.is_empty:
        raise EmptyRelation("empty relations have no AP form")
    f = r.field
    n = r.n_out
    mat, rhs = r.rel.mat, r.rel.rhs
    if mat.rows != n:
        raise NotLagrangian("constraint rank differs from the mode count")
    # greedy pivot selection on the z-block
    pivots: List[int] = []
    for j in range(n):
        cand = mat.take_cols(pivots + [j])
        if rref(cand)[2] == len(pivots) + 1:
            pivots.append(j)
    k = len(pivots)
    fibre = [j for j in range(n) if j not in pivots]
    sigma = pivots + fibre
    # eliminate with column order (z_P, z_F, x_F, x_P)
    order = (sigma
             + [n + j for j in fibre]
             + [n + j for j in pivots])
    aug = mat.take_cols(order).hstack(rhs)
    red, piv, rk = rref(aug, pivot_cols=2 * n)
    if rk != n or list(piv) != list(range(k)) + list(range(n, n + (n - k))):
        raise NotLagrangian("state is not Lagrangian: AP pivot structure failed")
    L = red.submatrix(range(k), range(k, n))
    psi = red.submatrix(range(k), range(2 * n - k, 2 * n))
    gamma = red.submatrix(range(k, n), range(2 * n - k, 2 * n))
    if not psi.is_symmetric() or gamma != -L.transpose():
        raise NotLagrangian("state is not Lagrangian: AP block structure failed")
    mu = tuple(red[i, 2 * n] for i in range(k))
    xshift = tuple(red[i, 2 * n] for i in range(k, n))
    return APForm(n=n, perm=tuple(sigma), k=k, L=L, phi=-psi, mu=mu, xshift=xshift)


def from_ap(ap: APForm) -> LagrangianRelation:
    """Rebuild the state presented by an AP form."""
    fld = ap.L.field
    n, k = ap.n, ap.k
    rows, rhs = [], []
    zero = fld.zero
    for i in range(k):
        row = [zero] * (2 * n)
        row[ap.perm[i]] = fld.one
        for j in range(n - k):
            row[ap.perm[k + j]] = ap.L[i, j]
        for j in range(k):
            row[n + ap.perm[j]] = fld.neg(ap.phi[i, j])
        rows.append(row)
        rhs.append(ap.mu[i])
    for i in range(n - k):
        row = [zero] * (2 * n)
        for j in range(k):
            row[n + ap.perm[j]] = fld.neg(ap.L[j, i])
        row[n + ap.perm[k + i]] = fld.one
        rows.append(row)
        rhs.append(ap.xshift[i])
    return LagrangianRelation.from_constraints(fld, 0, n, rows, rhs)


def ap_fingerprint(r: LagrangianRelation) -> str:
    """Canonical fingerprint of any relation: AP form of its name."""
    if r.is_empty:
        return f"AP[empty;{r.n_in}->{r.n_out}]"
    return ap_form(name_state(r)).fingerprint()


# -- positivity and quasi-reality ----------------------------------------------


def _shift_has_real_representative(state: LagrangianRelation) -> bool:
    return real_solution(state.rel.mat, state.rel.rhs) is not None


def restricted_hermitian_form(state: LagrangianRelation) -> Matrix:
    """The Hermitian form (i/2) conj(B) Omega B^T induced on an image
    basis Omega B^T of the linear part with constraint matrix B."""
    f = state.field
    b = state.rel.mat
    om = omega(f, state.n_out)
    return (b.conj() @ om @ b.transpose()).scale(f.div(f.i, f.coerce(2)))


def restricted_chi_form(state: LagrangianRelation) -> Matrix:
    """The chi Hermitian form on the same image basis, up to a harmless
    negative factor: conj(B) K B^T."""
    f = state.field
    b = state.rel.mat
    return b.conj() @ chi_form(f, state.n_out) @ b.transpose()


def positive_by_invariant(r: LagrangianRelation) -> bool:
    """Positivity read off the AP invariant: real shift, real coupling
    block, PSD imaginary phase."""
    if r.is_empty:
        return True
    state = name_state(r) if r.n_in else r
    if not is_lagrangian(state):
        return False
    ap = ap_form(state)
    return (_shift_has_real_representative(state)
            and ap.L.is_real() and is_psd(ap.phi.imag().real()))


def positive_by_form(r: LagrangianRelation) -> bool:
    """Positivity via the Hermitian form restricted to an image basis of
    the direction space."""
    if r.is_empty:
        return True
    state = name_state(r) if r.n_in else r
    if not is_lagrangian(state):
        return False
    return (_shift_has_real_representative(state)
            and is_psd_hermitian(restricted_hermitian_form(state)))


def is_positive(r: LagrangianRelation) -> bool:
    """Def-style positivity: real affine shift and i*omega(conj v, v) >= 0
    on the direction space. Decided by two independent algorithms whose
    verdicts must agree: the AP-invariant test (L real, Im(phi) PSD) and
    the restricted Hermitian form PSD test."""
    via_ap = positive_by_invariant(r)
    via_form = positive_by_form(r)
    if via_ap != via_form:
        raise InternalDisagreement(
            f"positivity algorithms disagree: ap={via_ap} form={via_form}")
    return via_ap


def is_quasi_real(r: LagrangianRelation) -> bool:
    """Positive with purely imaginary AP phase. Empty relations qualify."""
    if r.is_empty:
        return True
    if not is_positive(r):
        return False
    state = name_state(r) if r.n_in else r
    ap = ap_form(state)
    return ap.phi.real().is_zero()


# -- symplectomorphisms ---------------------------------------------------------


def symplectomorphism_check(s: Matrix) -> bool:
    """S^T Omega S = Omega, exactly."""
    if s.rows != s.cols or s.rows % 2:
        raise DimensionMismatch("symplectomorphisms act on K^{2n}")
    om = omega(s.field, s.rows // 2)
    return s.transpose() @ om @ s == om


def symp_diag(a: Matrix) -> Matrix:
    """diag(A, A^{-T}) for invertible A."""
    f = a.field
    n = a.rows
    z = Matrix.zeros(f, n, n)
    return block([[a, z], [z, invert(a).transpose()]])


def symp_shear_x(b: Matrix) -> Matrix:
    """[[I, B], [0, I]] for symmetric B: z picks up B x."""
    if not b.is_symmetric():
        raise NotSymplectic("shear block must be symmetric")
    f = b.field
    n = b.rows
    i_n = Matrix.identity(f, n)
    z = Matrix.zeros(f, n, n)
    return block([[i_n, b], [z, i_n]])


def symp_shear_z(b: Matrix) -> Matrix:
    """[[I, 0], [B, I]] for symmetric B: x picks up B z."""
    if not b.is_symmetric():
        raise NotSymplectic("shear block must be symmetric")
    f = b.field
    n = b.rows
    i_n = Matrix.identity(f, n)
    z = Matrix.zeros(f, n, n)
    return block([[i_n, z], [b, i_n]])


def symp_fourier(field, n: int) -> Matrix:
    return omega(field, n)


def symplectic_rotation(field, cp: CirclePoint) -> Matrix:
    """One-mode rotation [[c, -s], [s, c]] on (z, x)."""
    c, s = field.coerce(cp.c), field.coerce(cp.s)
    return Matrix.from_rows(field, [[c, field.neg(s)], [s, c]])


def two_mode_rotation(field, cp: CirclePoint) -> Matrix:
    """Mode-mixing rotation on two modes: z and x blocks rotate alike."""
    c, s = field.coerce(cp.c), field.coerce(cp.s)
    r = Matrix.from_rows(field, [[c, field.neg(s)], [s, c]])
    z = Matrix.zeros(field, 2, 2)
    return block([[r, z], [z, r]])


def rotation_matrix(field, cp: CirclePoint, n: int = 1) -> Matrix:
    """Plain SO(n)-style rotation acting on single coordinates (n = 2)."""
    if n != 2:
        raise DimensionMismatch("rotation generator acts on two wires")
    c, s = field.coerce(cp.c), field.coerce(cp.s)
    return Matrix.from_rows(field, [[c, field.neg(s)], [s, c]])


def graph_relation(s: Matrix, shift: Optional[Matrix] = None,
                   check: bool = True) -> LagrangianRelation:
    """The Lagrangian relation {(v, S v + shift)} of an affine
    symplectomorphism."""
    if check and not symplectomorphism_check(s):
        raise NotSymplectic("matrix fails S^T Omega S = Omega")
    n = s.rows // 2
    rel = AffineRelation.from_graph(s.field, s, shift)
    return LagrangianRelation(rel, n, n)


# -- spider generators (relation level) ------------------------------------------


def z_spider_rel(field, m: int, n: int, a, b) -> LagrangianRelation:
    """Grey spider m -> n with phase (a, b): shared x on every leg,
    sum(z_out) - sum(z_in) + b x = a."""
    f = field
    a, b = f.coerce(a), f.coerce(b)
    total = m + n
    if total == 0:
        if f.is_zero(b) and not f.is_zero(a):
            return LagrangianRelation.empty(f, 0, 0)
        return LagrangianRelation(AffineRelation.total(f, 0, 0), 0, 0)
    # coordinate layout: (z_in m, x_in m | z_out n, x_out n)
    def zcol(leg):  # leg indexed over inputs then outputs
        return leg if leg < m else 2 * m + (leg - m)

    def xcol(leg):
        return m + leg if leg < m else 2 * m + n + (leg - m)

    width = 2 * m + 2 * n
    rows, rhs = [], []
    for leg in range(total - 1):
        row = [f.zero] * width
        row[xcol(leg)] = f.one
        row[xcol(leg + 1)] = f.neg(f.one)
        rows.append(row)
        rhs.append(f.zero)
    row = [f.zero] * width
    for leg in range(m):
        row[zcol(leg)] = f.neg(f.one)
    for leg in range(m, total):
        row[zcol(leg)] = f.one
    row[xcol(0)] = f.add(row[xcol(0)], b)
    rows.append(row)
    rhs.append(a)
    return LagrangianRelation.from_constraints(f, m, n, rows, rhs)


def x_spider_rel(field, m: int, n: int, a, b) -> LagrangianRelation:
    """White spider m -> n with phase (a, b): z_in = -w, z_out = w on every
    leg, sum of all x plus b w = a."""
    f = field
    a, b = f.coerce(a), f.coerce(b)
    total = m + n
    if total == 0:
        if f.is_zero(b) and not f.is_zero(a):
            return LagrangianRelation.empty(f, 0, 0)
        return LagrangianRelation(AffineRelation.total(f, 0, 0), 0, 0)

    def zcol(leg):
        return leg if leg < m else 2 * m + (leg - m)

    def xcol(leg):
        return m + leg if leg < m else 2 * m + n + (leg - m)

    def zsign(leg):  # leg z-value equals zsign * w
        return -1 if leg < m else 1

    width = 2 * m + 2 * n
    rows, rhs = [], []
    for leg in range(total - 1):
        row = [f.zero] * width
        row[zcol(leg)] = f.one if zsign(leg) == 1 else f.neg(f.one)
        s2 = zsign(leg + 1)
        row[zcol(leg + 1)] = f.sub(row[zcol(leg + 1)],
                                   f.one if s2 == 1 else f.neg(f.one))
        rows.append(row)
        rhs.append(f.zero)
    row = [f.zero] * width
    for leg in range(total):
        row[xcol(leg)] = f.add(row[xcol(leg)], f.one)
    zc = zcol(0)
    bw = b if zsign(0) == 1 else f.neg(b)
    row[zc] = f.add(row[zc], bw)
    rows.append(row)
    rhs.append(a)
    return LagrangianRelation.from_constraints(f, m, n, rows, rhs)


def fourier_rel(field) -> LagrangianRelation:
    """Graph of Omega_1: (z, x) -> (x, -z)."""
    s = Matrix.from_rows(field, [[0, 1], [-1, 0]])
    return graph_relation(s)


def fourier_inv_rel(field) -> LagrangianRelation:
    s = Matrix.from_rows(field, [[0, -1], [1, 0]])
    return graph_relation(s)


def squeeze_rel(field, c) -> LagrangianRelation:
    """Graph of diag(c, 1/c)."""
    f = field
    c = f.coerce(c)
    s = Matrix.from_rows(f, [[c, f.zero], [f.zero, f.inv(c)]])
    return graph_relation(s)


def vacuum_rel(field) -> LagrangianRelation:
    """The vacuum state on one mode: {x = -i z} (AP phase i)."""
    return x_spider_rel(field, 0, 1, field.zero, field.i)


def z_translate_rel(field, a) -> LagrangianRelation:
    return z_spider_rel(field, 1, 1, a, field.zero)


def x_translate_rel(field, t) -> LagrangianRelation:
    f = field
    first = x_spider_rel(f, 1, 1, f.neg(f.coerce(t)), f.zero)
    return first.compose(x_spider_rel(f, 1, 1, f.zero, f.zero))
