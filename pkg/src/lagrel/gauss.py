"""Gaussian bridges: the pushforward prop of Gaussian maps, extended
Gaussians on quotients, the phase-matrix / covariance-matrix bijection,
quantum Gaussian states / unitaries / projections, and the Wigner
density.

A Gaussian channel (A, Sigma, mu) embeds into the relational world as

    { ((z, x), (z', x')) : z' = A z + i Sigma x' + mu,  x = A^T x' }

which is quasi-real, and relational composition of these embeddings is
exactly channel composition (the functoriality oracle in the tests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    NotAQuantumCovariance,
    NotLagrangian,
    NotPositiveDefinite,
    NotQuasiReal,
    NotSymmetric,
    NotSymplectic,
)
from .linalg import (
    Matrix,
    block,
    det,
    invert,
    is_psd,
    is_psd_hermitian,
    is_positive_definite,
    kernel,
    schur_project,
    solve_affine,
)
from .lagrangian import (
    LagrangianRelation,
    ap_form,
    graph_relation,
    is_quasi_real,
    omega,
    symplectomorphism_check,
)


# -- classical Gaussian maps ----------------------------------------------------


@dataclass(frozen=True)
class GaussMap:
    """Gaussian channel n -> m: push forward along A, add noise Sigma,
    shift by mu."""

    a: Matrix
    sigma: Matrix
    mu: Matrix

    def __post_init__(self):
        m = self.a.rows
        if self.sigma.rows != m or self.sigma.cols != m or self.mu.rows != m:
            raise DimensionMismatch("GaussMap blocks disagree on the codomain")
        if not (self.a.is_real() and self.sigma.is_real() and self.mu.is_real()):
            raise NotSymmetric("GaussMap data must be real")
        if not is_psd(self.sigma):
            raise NotPositiveDefinite("covariance must be PSD")

    @property
    def dom(self) -> int:
        return self.a.cols

    @property
    def cod(self) -> int:
        return self.a.rows

    @classmethod
    def state(cls, sigma: Matrix, mu: Matrix) -> "GaussMap":
        return cls(Matrix.zeros(sigma.field, sigma.rows, 0), sigma, mu)

    @classmethod
    def identity(cls, field, n: int) -> "GaussMap":
        return cls(Matrix.identity(field, n), Matrix.zeros(field, n, n),
                   Matrix.zeros(field, n, 1))


def gauss_compose(g: GaussMap, h: GaussMap) -> GaussMap:
    """g then h: (B, Delta, nu) o (A, Sigma, mu) = (BA, Delta + B Sigma B^T,
    nu + B mu)."""
    if g.cod != h.dom:
        raise DimensionMismatch("gauss_compose dimension mismatch")
    b = h.a
    return GaussMap(b @ g.a, h.sigma + b @ g.sigma @ b.transpose(),
                    h.mu + b @ g.mu)


def to_gaussrel(g: GaussMap) -> LagrangianRelation:
    """Embed a Gaussian channel as a quasi-real Lagrangian relation."""
    f = g.a.field
    n, m = g.dom, g.cod
    i_m = Matrix.identity(f, m)
    i_n = Matrix.identity(f, n)
    z_mn = Matrix.zeros(f, m, n)
    z_nm = Matrix.zeros(f, n, m)
    # rows: [-A, 0 | I, -i Sigma] = mu ; [0, I | 0, -A^T] = 0
    top = (-g.a).hstack(z_mn).hstack(i_m).hstack(g.sigma.scale(f.neg(f.i)))
    bot = Matrix.zeros(f, n, n).hstack(i_n).hstack(z_nm).hstack((-g.a).transpose())
    rows = top.vstack(bot)
    rhs = g.mu.to_list() + [f.zero] * n
    return LagrangianRelation.from_constraints(f, n, m, rows.to_lists(), rhs)


def from_gaussrel(r: LagrangianRelation) -> GaussMap:
    """Recover (A, Sigma, mu) from the canonical embedded relation by
    exact probing; raises when the relation is not such an embedding."""
    f = r.field
    n, m = r.n_in, r.n_out
    if r.is_empty:
        raise NotQuasiReal("empty relation is not a Gaussian channel")
    mat, rhs = r.rel.mat, r.rel.rhs

    def probe(z_in: List, x_out: List) -> Optional[Matrix]:
        rows = mat.to_lists()
        vec = rhs.to_list()
        width = 2 * n + 2 * m
        for i, v in enumerate(z_in):
            row = [f.zero] * width
            row[i] = f.one
            rows.append(row)
            vec.append(f.coerce(v))
        for j, v in enumerate(x_out):
            row = [f.zero] * width
            row[2 * n + m + j] = f.one
            rows.append(row)
            vec.append(f.coerce(v))
        return solve_affine(Matrix.from_rows(f, rows), Matrix.vector(f, vec))

    zero_n = [0] * n
    zero_m = [0] * m
    base = probe(zero_n, zero_m)
    if base is None:
        raise NotQuasiReal("relation has no section over (z_in, x_out)")
    mu = base.take_rows(range(2 * n, 2 * n + m))
    a_cols, s_cols = [], []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        sol = probe(e, zero_m)
        if sol is None:
            raise NotQuasiReal("relation is not total over z_in")
        a_cols.append((sol.take_rows(range(2 * n, 2 * n + m)) - mu).to_list())
    for j in range(m):
        e = [0] * m
        e[j] = 1
        sol = probe(zero_n, e)
        if sol is None:
            raise NotQuasiReal("relation is not total over x_out")
        s_cols.append((sol.take_rows(range(2 * n, 2 * n + m)) - mu).to_list())
    a = Matrix.zeros(f, m, n)
    data = list(a.data)
    for j, col in enumerate(a_cols):
        for i in range(m):
            data[i * n + j] = col[i]
    a = Matrix(f, m, n, data)
    sigma = Matrix.zeros(f, m, m)
    data = list(sigma.data)
    for j, col in enumerate(s_cols):
        for i in range(m):
            data[i * m + j] = f.mul(f.neg(f.i), col[i])  # strip the i factor
    sigma = Matrix(f, m, m, data)
    g = GaussMap(a, sigma, mu)
    if to_gaussrel(g) != r:
        raise NotQuasiReal("relation is not the embedding of a Gaussian channel")
    return g


@dataclass(frozen=True)
class ExtendedGaussian:
    """Gaussian distribution on a quotient R^n / D.

    `fibre` holds a canonical basis of D as columns; `coords` names the
    wires carrying the quotient coordinates in which (sigma, mu) live.
    """

    n: int
    fibre: Matrix
    sigma: Matrix
    mu: Matrix
    coords: Tuple[int, ...]


def extract_extended_gaussian(r: LagrangianRelation) -> ExtendedGaussian:
    """Read off the extended Gaussian carried by a quasi-real state."""
    if r.n_in != 0:
        raise NotQuasiReal("extraction expects a state")
    if not is_quasi_real(r):
        raise NotQuasiReal("state is not quasi-real")
    ap = ap_form(r)
    e, phi = ap.invariant()
    fibre = kernel(e)
    sigma = phi.imag().real()
    if not is_psd(sigma):
        raise NotQuasiReal("quotient covariance is not PSD")
    mu = Matrix.vector(r.field, list(ap.mu))
    if not (mu.is_real() and fibre.is_real()):
        raise NotQuasiReal("quotient data is not real")
    return ExtendedGaussian(n=ap.n, fibre=fibre, sigma=sigma, mu=mu,
                            coords=tuple(ap.perm[: ap.k]))


# -- phase matrices and the Wigner bridge ----------------------------------------


@dataclass(frozen=True)
class PhaseMatrix:
    """Complex symmetric matrix with positive-definite imaginary part,
    plus a phase-space displacement (z-block then x-block)."""

    phi: Matrix
    displacement: Matrix

    def __post_init__(self):
        n = self.phi.rows
        if self.phi.cols != n:
            raise DimensionMismatch("phase matrix must be square")
        if not self.phi.is_symmetric():
            raise NotSymmetric("phase matrix must be symmetric")
        if self.displacement.rows != 2 * n or self.displacement.cols != 1:
            raise DimensionMismatch("displacement must have length 2n")
        if not self.displacement.is_real():
            raise NotSymmetric("displacement must be real")
        if not is_positive_definite(self.phi.imag().real()):
            raise NotPositiveDefinite("Im(phase matrix) must be positive definite")

    @property
    def n(self) -> int:
        return self.phi.rows

    @classmethod
    def centered(cls, phi: Matrix) -> "PhaseMatrix":
        return cls(phi, Matrix.zeros(phi.field, 2 * phi.rows, 1))


def phase_to_covariance(pm: PhaseMatrix) -> Matrix:
    """The 2n x 2n Wigner covariance block matrix of a phase matrix."""
    f = pm.phi.field
    re = pm.phi.real()
    im = pm.phi.imag()
    im_inv = invert(im)
    a = im + re @ im_inv @ re
    b = -(re @ im_inv)
    c = im_inv
    return block([[a, b], [b.transpose(), c]])


def covariance_to_phase(delta: Matrix,
                        displacement: Optional[Matrix] = None) -> PhaseMatrix:
    """Inverse direction: Phi = -B C^{-1} + i C^{-1} for
    delta = [[A, B], [B^T, C]]; demands det = 1 and delta + i Omega PSD."""
    f = delta.field
    if delta.rows != delta.cols or delta.rows % 2:
        raise DimensionMismatch("covariance must be 2n x 2n")
    n = delta.rows // 2
    if not delta.is_symmetric() or not delta.is_real():
        raise NotAQuantumCovariance("covariance must be real symmetric")
    if det(delta) != f.one:
        raise NotAQuantumCovariance("pure Gaussian covariance must have det 1")
    herm = delta + omega(f, n).scale(f.i)
    if not is_psd_hermitian(herm):
        raise NotAQuantumCovariance("delta + i Omega must be PSD")
    bblk = delta.submatrix(range(n), range(n, 2 * n))
    cblk = delta.submatrix(range(n, 2 * n), range(n, 2 * n))
    c_inv = invert(cblk)
    phi = -(bblk @ c_inv) + c_inv.scale(f.i)
    if displacement is None:
        displacement = Matrix.zeros(f, 2 * n, 1)
    return PhaseMatrix(phi, displacement)


def wigner_density_at(pm: PhaseMatrix, point: Sequence[float]) -> float:
    """Closed-form Wigner density (1/pi^n) exp(-(v-mu)^T Sigma (v-mu))."""
    n = pm.n
    if len(point) != 2 * n:
        raise DimensionMismatch("phase-space point must have length 2n")
    sigma = phase_to_covariance(pm)
    f = sigma.field
    s = [[f.to_complex(sigma[i, j]).real for j in range(2 * n)] for i in range(2 * n)]
    mu = [f.to_complex(x).real for x in pm.displacement.to_list()]
    v = [float(p) - m for p, m in zip(point, mu)]
    quad = sum(v[i] * s[i][j] * v[j] for i in range(2 * n) for j in range(2 * n))
    return math.exp(-quad) / math.pi ** n


# -- quantum Gaussian operations --------------------------------------------------
#
# Phase-space data (covariances, displacements, symplectomorphisms) is
# ordered (q-block, p-block); mode-relation coordinates are (z, x) with
# the dictionary (z, x) = (-q, p). The conjugation below installs it.


def _phase_space_twist(field, n: int) -> Matrix:
    i_n = Matrix.identity(field, n)
    z = Matrix.zeros(field, n, n)
    return block([[-i_n, z], [z, i_n]])


def phase_space_to_mode(s: Matrix) -> Matrix:
    """Rewrite a phase-space symplectomorphism in relation coordinates."""
    j = _phase_space_twist(s.field, s.rows // 2)
    return j @ s @ j


def qgauss_state(pm: PhaseMatrix) -> LagrangianRelation:
    """The positive Lagrangian state with AP phase equal to the phase
    matrix: {z - mu_z = Phi (x - mu_x)}."""
    f = pm.phi.field
    n = pm.n
    j = _phase_space_twist(f, n)
    mean = j @ pm.displacement
    mu_z = mean.take_rows(range(n))
    mu_x = mean.take_rows(range(n, 2 * n))
    rows = Matrix.identity(f, n).hstack(-pm.phi)
    rhs = (mu_z - pm.phi @ mu_x).to_list()
    return LagrangianRelation.from_constraints(f, 0, n, rows.to_lists(), rhs)


def qgauss_unitary(s: Matrix, shift: Optional[Matrix] = None) -> LagrangianRelation:
    """Embed the affine symplectomorphism (S, shift) on phase space as a
    Lagrangian relation on n modes."""
    if not symplectomorphism_check(s):
        raise NotSymplectic("unitary action needs S^T Omega S = Omega")
    if shift is not None and not shift.is_real():
        raise NotSymplectic("displacement must be real")
    j = _phase_space_twist(s.field, s.rows // 2)
    mode_shift = j @ shift if shift is not None else None
    return graph_relation(j @ s @ j, mode_shift, check=False)


def unitary_covariance_action(s: Matrix, sigma: Matrix, mu: Matrix,
                              shift: Optional[Matrix] = None) -> Tuple[Matrix, Matrix]:
    """Sigma -> S Sigma S^T and mu -> S mu + shift."""
    out_mu = s @ mu
    if shift is not None:
        out_mu = out_mu + shift
    return s @ sigma @ s.transpose(), out_mu


def qgauss_project(sigma: Matrix, n_split: int, delta: Matrix,
                   mu: Matrix, nu: Matrix) -> Tuple[Matrix, Matrix]:
    """Project a Gaussian state onto a Gaussian effect on its first
    n_split phase-space coordinates (generalised Schur complement)."""
    return schur_project(sigma, n_split, delta, mu, nu)


def classical_gauss_state_rel(sigma: Matrix, mu: Matrix) -> LagrangianRelation:
    """N(sigma, mu) on R^d as a quasi-real state on d modes."""
    return to_gaussrel(GaussMap.state(sigma, mu))


def qgauss_project_relational(sigma: Matrix, n_split: int, delta: Matrix,
                              mu: Matrix, nu: Matrix) -> Tuple[Matrix, Matrix]:
    """Independent oracle for qgauss_project: run the projection as a
    relational composition of doubled classical Gaussians and read the
    result back off the AP form. The projecting effect is the dagger of
    the effect's state (conjugate converse), which is what flips the
    sign that turns Sigma_nn - Delta into Sigma_nn + Delta."""
    f = sigma.field
    d = sigma.rows
    rest = d - n_split
    state = classical_gauss_state_rel(sigma, mu)
    effect = classical_gauss_state_rel(delta, nu).dagger()
    idr = LagrangianRelation.identity(f, rest)
    out = state.compose(effect.tensor(idr))
    eg = extract_extended_gaussian(out)
    if eg.fibre.cols != 0 or eg.coords != tuple(range(rest)):
        raise NotLagrangian("projection oracle produced a fibre")
    return eg.sigma, eg.mu
