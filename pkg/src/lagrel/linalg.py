"""Dense matrices over a scalar backend, with the exact kernel everything
else is built on: RREF, kernel/image, solving, Moore-Penrose pseudo-inverse,
LDL^T positive-semidefiniteness, generalised Schur complements.

All rank decisions demand the exact backend; the float backend only gets
arithmetic (used for trigonometric LOv parameters and density evaluation).
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .errors import BackendMismatch, DimensionMismatch, NotSymmetric


class Matrix:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows: int, cols: int, data: Sequence):
        if len(data) != rows * cols:
            raise DimensionMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(data)}"
            )
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = tuple(data)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise DimensionMismatch("ragged rows")
            flat.extend(field.coerce(x) for x in row)
        return cls(field, r, c, flat)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, [o if i == j else z for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def vector(cls, field, entries: Sequence) -> "Matrix":
        return cls(field, len(entries), 1, [field.coerce(x) for x in entries])

    @classmethod
    def diag(cls, field, entries: Sequence) -> "Matrix":
        es = [field.coerce(x) for x in entries]
        n = len(es)
        z = field.zero
        return cls(field, n, n, [es[i] if i == j else z for i in range(n) for j in range(n)])

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij) -> object:
        i, j = ij
        return self.data[i * self.cols + j]

    def row(self, i: int) -> Tuple:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Tuple:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def to_lists(self) -> List[List]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_list(self) -> List:
        if self.cols != 1:
            raise DimensionMismatch("not a column vector")
        return list(self.data)

    # -- arithmetic ---------------------------------------------------------

    def _same_shape(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [f.add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        f = self.field
        return Matrix(f, self.rows, self.cols,
                      [f.sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.neg(a) for a in self.data])

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f.coerce(c)
        return Matrix(f, self.rows, self.cols, [f.mul(c, a) for a in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        f = self.field
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = f.zero
                for k in range(self.cols):
                    acc = f.add(acc, f.mul(ri[k], other.data[k * other.cols + j]))
                out.append(acc)
        return Matrix(f, self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.cols, self.rows,
                      [self.data[i * self.cols + j]
                       for j in range(self.cols) for i in range(self.rows)])

    def conj(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.conj(a) for a in self.data])

    def conj_transpose(self) -> "Matrix":
        return self.conj().transpose()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        f = self.field
        return all(f.eq(a, b) for a, b in zip(self.data, other.data))

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def is_zero(self) -> bool:
        f = self.field
        return all(f.is_zero(a) for a in self.data)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.transpose()

    def is_hermitian(self) -> bool:
        return self.rows == self.cols and self == self.conj_transpose()

    def is_real(self) -> bool:
        f = self.field
        return all(f.is_real(a) for a in self.data)

    def real(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.re(a) for a in self.data])

    def imag(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, [f.im(a) for a in self.data])

    # -- stacking ------------------------------------------------------------

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        rows = [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)]
        return Matrix(self.field, self.rows, self.cols + other.cols,
                      [x for r in rows for x in r])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack col mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols,
                      list(self.data) + list(other.data))

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(row_idx), len(col_idx),
                      [self.data[i * self.cols + j] for i in row_idx for j in col_idx])

    def take_cols(self, col_idx: Sequence[int]) -> "Matrix":
        return self.submatrix(range(self.rows), col_idx)

    def take_rows(self, row_idx: Sequence[int]) -> "Matrix":
        return self.submatrix(row_idx, range(self.cols))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {to_text(self)!r})"


def block(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix from a 2d grid of matrices."""
    rows = None
    for brow in blocks:
        stacked = brow[0]
        for b in brow[1:]:
            stacked = stacked.hstack(b)
        rows = stacked if rows is None else rows.vstack(stacked)
    return rows


def to_text(m: Matrix) -> str:
    """Rows joined by ';', entries by ','; scalars in canonical text form."""
    f = m.field
    return ";".join(",".join(f.to_str(x) for x in m.row(i)) for i in range(m.rows))


def from_text(field, text: str, rows: Optional[int] = None) -> Matrix:
    text = text.strip()
    if not text:
        return Matrix(field, 0, 0, [])
    raw = [[field.coerce(e.strip()) for e in row.split(",")] for row in text.split(";")]
    m = Matrix.from_rows(field, raw)
    if rows is not None and m.rows != rows:
        raise DimensionMismatch(f"expected {rows} rows, got {m.rows}")
    return m


# -- elimination ------------------------------------------------------------


def _require_exact(field):
    if not field.exact:
        raise BackendMismatch("exact backend required for rank decisions")


def rref(m: Matrix, pivot_cols: Optional[int] = None) -> Tuple[Matrix, Tuple[int, ...], int]:
    """Reduced row echelon form.

    `pivot_cols` limits pivot search to the first k columns (used for
    augmented systems where the right-hand side may not host a pivot).
    Returns (R, pivot column indices, rank within the pivot region).
    """
    _require_exact(m.field)
    f = m.field
    k = m.cols if pivot_cols is None else pivot_cols
    work = [list(m.row(i)) for i in range(m.rows)]
    pivots: List[int] = []
    r = 0
    for c in range(k):
        sel = None
        for i in range(r, m.rows):
            if not f.is_zero(work[i][c]):
                sel = i
                break
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        inv = f.inv(work[r][c])
        work[r] = [f.mul(inv, x) for x in work[r]]
        for i in range(m.rows):
            if i != r and not f.is_zero(work[i][c]):
                factor = work[i][c]
                work[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    flat = [x for row in work for x in row]
    return Matrix(f, m.rows, m.cols, flat), tuple(pivots), r


def rank(m: Matrix) -> int:
    return rref(m)[2]


def kernel(m: Matrix) -> Matrix:
    """Columns form the canonical (RREF-derived) basis of ker m."""
    f = m.field
    r, pivots, rk = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    cols = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(r[i, fc])
        cols.append(v)
    out = Matrix.zeros(f, m.cols, len(cols))
    data = list(out.data)
    for j, v in enumerate(cols):
        for i in range(m.cols):
            data[i * len(cols) + j] = v[i]
    return Matrix(f, m.cols, len(cols), data)


def row_space_canonical(m: Matrix) -> Matrix:
    """Nonzero rows of the RREF: the canonical basis of the row space."""
    r, _, rk = rref(m)
    return r.take_rows(range(rk))


def column_space_canonical(m: Matrix) -> Matrix:
    return row_space_canonical(m.transpose()).transpose()


def same_row_space(a: Matrix, b: Matrix) -> bool:
    return row_space_canonical(a) == row_space_canonical(b)


def solve_affine(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """A particular solution of A x = b (free variables zero), or None
    when the system is inconsistent."""
    if b.rows != a.rows or b.cols != 1:
        raise DimensionMismatch("rhs shape mismatch")
    f = a.field
    aug = a.hstack(b)
    r, pivots, rk = rref(aug, pivot_cols=a.cols)
    for i in range(rk, a.rows):
        if not f.is_zero(r[i, a.cols]):
            return None
    # rows below rank are all-zero in the pivot region; also check their rhs
    x = [f.zero] * a.cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i, a.cols]
    return Matrix.vector(f, x)


def invert(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("inverse of a non-square matrix")
    f = m.field
    aug = m.hstack(Matrix.identity(f, m.rows))
    r, pivots, rk = rref(aug, pivot_cols=m.cols)
    if rk != m.rows:
        raise DimensionMismatch("singular matrix")
    return r.take_cols(range(m.cols, 2 * m.cols))


def det(m: Matrix):
    """Exact determinant by fraction-full Gaussian elimination."""
    _require_exact(m.field)
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    f = m.field
    n = m.rows
    work = [list(m.row(i)) for i in range(n)]
    acc = f.one
    for c in range(n):
        sel = None
        for i in range(c, n):
            if not f.is_zero(work[i][c]):
                sel = i
                break
        if sel is None:
            return f.zero
        if sel != c:
            work[c], work[sel] = work[sel], work[c]
            acc = f.neg(acc)
        acc = f.mul(acc, work[c][c])
        inv = f.inv(work[c][c])
        for i in range(c + 1, n):
            if not f.is_zero(work[i][c]):
                factor = f.mul(inv, work[i][c])
                work[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(work[i], work[c])]
    return acc


def pinv(m: Matrix) -> Matrix:
    """Moore-Penrose pseudo-inverse via full-rank factorization M = F G,
    X = G^+ F^+ with conjugate transposes; exact over the Gaussian
    rationals and equal to M^-1 for invertible M."""
    _require_exact(m.field)
    f = m.field
    r, pivots, rk = rref(m)
    if rk == 0:
        return Matrix.zeros(f, m.cols, m.rows)
    F = m.take_cols(pivots)            # rows x rk, full column rank
    G = r.take_rows(range(rk))         # rk x cols, full row rank
    Fh = F.conj_transpose()
    Gh = G.conj_transpose()
    return Gh @ invert(G @ Gh) @ invert(Fh @ F) @ Fh


# -- definiteness ------------------------------------------------------------


def _ldlt_psd(m: Matrix, hermitian: bool) -> bool:
    """Semidefinite test by symmetrically pivoted LDL^T.

    A PSD matrix with a zero diagonal entry must have the whole row zero;
    needing an indefinite 2x2 pivot disqualifies the matrix. Pivots are
    compared exactly over the rationals.
    """
    _require_exact(m.field)
    f = m.field
    n = m.rows
    work = [list(m.row(i)) for i in range(n)]
    active = list(range(n))
    while active:
        # diagonal entries must be real and nonnegative
        for i in active:
            d = work[i][i]
            if hermitian and not f.is_real(d):
                return False
            if d.re < 0:
                return False
        # rows with a zero diagonal must vanish on the active block
        nxt = []
        for i in active:
            if f.is_zero(work[i][i]):
                for j in active:
                    if not f.is_zero(work[i][j]):
                        return False
            else:
                nxt.append(i)
        active = nxt
        if not active:
            return True
        p = active[0]
        d = work[p][p]
        dinv = f.inv(d)
        rest = active[1:]
        for i in rest:
            li = f.mul(work[i][p], dinv)
            for j in rest:
                vpj = work[p][j]
                work[i][j] = f.sub(work[i][j], f.mul(li, vpj))
        active = rest
    return True


def is_psd(m: Matrix) -> bool:
    """Exact PSD test for real symmetric rational matrices."""
    if m.rows != m.cols or not m.is_symmetric():
        raise NotSymmetric("is_psd needs a symmetric matrix")
    if not m.is_real():
        raise NotSymmetric("is_psd needs real entries")
    return _ldlt_psd(m, hermitian=False)


def is_psd_hermitian(m: Matrix) -> bool:
    """Exact PSD test for Hermitian matrices over the Gaussian rationals."""
    if m.rows != m.cols or not m.is_hermitian():
        raise NotSymmetric("is_psd_hermitian needs a Hermitian matrix")
    return _ldlt_psd(m, hermitian=True)


def is_positive_definite(m: Matrix) -> bool:
    """Symmetric (real) positive definiteness: PSD and full rank."""
    return is_psd(m) and rank(m) == m.rows


def schur_project(sigma: Matrix, n_split: int, delta: Matrix,
                  mu: Matrix, nu: Matrix) -> Tuple[Matrix, Matrix]:
    """Generalised Schur complement of the block partition

        sigma = [[S_nn, S_nm], [S_nm^T, S_mm]],  mu = (mu_n, mu_m)

    against (delta, nu) on the first block:
        (S_mm - S_nm^T? ...) -- computed as
        (S_mm - S_mn (S_nn + delta)^+ S_mn^T,
         mu_m - S_mn (S_nn + delta)^+ (mu_n - nu)).
    """
    n = n_split
    total = sigma.rows
    m = total - n
    if sigma.rows != sigma.cols or delta.rows != n or delta.cols != n:
        raise DimensionMismatch("schur_project block sizes")
    if mu.rows != total or nu.rows != n:
        raise DimensionMismatch("schur_project vector sizes")
    S_nn = sigma.submatrix(range(n), range(n))
    S_nm = sigma.submatrix(range(n), range(n, total))
    S_mn = S_nm.transpose()
    S_mm = sigma.submatrix(range(n, total), range(n, total))
    mu_n = mu.take_rows(range(n))
    mu_m = mu.take_rows(range(n, total))
    core = pinv(S_nn + delta)
    out_sigma = S_mm - S_mn @ core @ S_nm
    out_mu = mu_m - S_mn @ core @ (mu_n - nu)
    return out_sigma, out_mu


def real_solution(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """A real solution of the complex system A x = b, or None.

    Splits into real and imaginary parts and solves over the rationals.
    """
    f = a.field
    ar, ai = a.real(), a.imag()
    br, bi = b.real(), b.imag()
    return solve_affine(ar.vstack(ai), br.vstack(bi))


def permutation_matrix(field, perm: Sequence[int]) -> Matrix:
    """P with P e_j = e_{perm[j]}: column j carries a 1 in row perm[j]."""
    n = len(perm)
    p = Matrix.zeros(field, n, n)
    data = list(p.data)
    for j, i in enumerate(perm):
        data[i * n + j] = field.one
    return Matrix(field, n, n, data)
