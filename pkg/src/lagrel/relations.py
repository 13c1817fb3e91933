"""The prop of affine relations over a field.

Morphisms n -> m are affine subspaces of K^(n+m) held in canonical
constraint form: a reduced-row-echelon constraint matrix with its
right-hand side, or an explicit empty marker. Equality of relations is
structural equality of the canonical data. Composition stacks the two
constraint systems over (a, b, c) and exactly eliminates the middle
block; the same elimination engine is reused by the diagram interpreter.

Cups and caps here are the plain diagonal; the symplectic sign twist
belongs to the Lagrangian layer.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from .errors import DimensionMismatch, UnknownKind
from .linalg import Matrix, rref


def _canonicalize(field, mat: Matrix, rhs: Matrix):
    """RREF the augmented system; return (mat, rhs) without zero rows,
    or None when the system is inconsistent."""
    aug = mat.hstack(rhs)
    r, pivots, rk = rref(aug, pivot_cols=mat.cols)
    for i in range(rk, mat.rows):
        if not field.is_zero(r[i, mat.cols]):
            return None
    kept = r.take_rows(range(rk))
    return kept.take_cols(range(mat.cols)), kept.take_cols([mat.cols])


def project_affine(field, n_vars: int, rows: List[List], rhs: List,
                   keep: Sequence[int]):
    """Project the solution set of (rows) x = rhs onto the kept columns.

    Returns canonical (mat, rhs) over the kept coordinates in the given
    order, or None when the system is inconsistent (empty projection).
    """
    keep = list(keep)
    elim = [c for c in range(n_vars) if c not in set(keep)]
    order = elim + keep
    if rows:
        m = Matrix.from_rows(field, rows).take_cols(order)
        b = Matrix.vector(field, rhs)
    else:
        m = Matrix.zeros(field, 0, n_vars)
        b = Matrix.zeros(field, 0, 1)
    aug = m.hstack(b)
    r, pivots, rk = rref(aug, pivot_cols=n_vars)
    for i in range(rk, m.rows):
        if not field.is_zero(r[i, n_vars]):
            return None
    n_elim = len(elim)
    keep_rows = [i for i, p in enumerate(pivots) if p >= n_elim]
    mat = r.submatrix(keep_rows, range(n_elim, n_vars))
    vec = r.submatrix(keep_rows, [n_vars])
    return _canonicalize(field, mat, vec)


class AffineRelation:
    """Affine subspace of K^(dom+cod) in canonical kernel-plus-shift form."""

    __slots__ = ("field", "dom", "cod", "mat", "rhs")

    def __init__(self, field, dom: int, cod: int,
                 mat: Optional[Matrix], rhs: Optional[Matrix]):
        self.field = field
        self.dom = dom
        self.cod = cod
        self.mat = mat     # None encodes the empty relation
        self.rhs = rhs

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_constraints(cls, field, dom: int, cod: int,
                         rows: Sequence[Sequence], rhs: Sequence) -> "AffineRelation":
        n = dom + cod
        if rows:
            mat = Matrix.from_rows(field, rows)
            if mat.cols != n:
                raise DimensionMismatch(f"constraints need {n} columns")
            vec = Matrix.vector(field, rhs)
        else:
            mat = Matrix.zeros(field, 0, n)
            vec = Matrix.zeros(field, 0, 1)
        canon = _canonicalize(field, mat, vec)
        if canon is None:
            return cls.empty(field, dom, cod)
        return cls(field, dom, cod, canon[0], canon[1])

    @classmethod
    def empty(cls, field, dom: int, cod: int) -> "AffineRelation":
        return cls(field, dom, cod, None, None)

    @classmethod
    def total(cls, field, dom: int, cod: int) -> "AffineRelation":
        return cls.from_constraints(field, dom, cod, [], [])

    @classmethod
    def identity(cls, field, n: int) -> "AffineRelation":
        rows = []
        for i in range(n):
            row = [field.zero] * (2 * n)
            row[i] = field.one
            row[n + i] = field.neg(field.one)
            rows.append(row)
        return cls.from_constraints(field, n, n, rows, [field.zero] * n)

    @classmethod
    def from_graph(cls, field, a: Matrix, shift: Optional[Matrix] = None) -> "AffineRelation":
        """The graph {(x, A x + shift)} as a relation cols(A) -> rows(A)."""
        m, n = a.rows, a.cols
        rows = []
        for i in range(m):
            row = [field.neg(x) for x in a.row(i)] + [field.zero] * m
            row[n + i] = field.one
            rows.append(row)
        rhs = shift.to_list() if shift is not None else [field.zero] * m
        return cls.from_constraints(field, n, m, rows, rhs)

    # -- basic queries --------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.mat is None

    def n_coords(self) -> int:
        return self.dom + self.cod

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineRelation):
            return NotImplemented
        if (self.dom, self.cod) != (other.dom, other.cod):
            return False
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return self.mat == other.mat and self.rhs == other.rhs

    def __hash__(self):
        if self.is_empty:
            return hash((self.dom, self.cod, "empty"))
        return hash((self.dom, self.cod, self.mat, self.rhs))

    def __repr__(self):
        if self.is_empty:
            return f"AffineRelation({self.dom}->{self.cod}, empty)"
        from .linalg import to_text
        return (f"AffineRelation({self.dom}->{self.cod}, "
                f"{to_text(self.mat)!r} = {to_text(self.rhs.transpose())!r})")

    def contains(self, point: Sequence) -> bool:
        if self.is_empty:
            return False
        f = self.field
        v = [f.coerce(x) for x in point]
        if len(v) != self.n_coords():
            raise DimensionMismatch("point dimension")
        for i in range(self.mat.rows):
            acc = f.zero
            for j, x in enumerate(v):
                acc = f.add(acc, f.mul(self.mat[i, j], x))
            if not f.eq(acc, self.rhs[i, 0]):
                return False
        return True

    def linear_part(self) -> Optional[Matrix]:
        """Canonical constraint matrix of the direction space (rhs dropped)."""
        return self.mat

    # -- prop structure ---------------------------------------------------------

    def compose(self, other: "AffineRelation") -> "AffineRelation":
        """self then other (diagrammatic order): self: a->b, other: b->c."""
        if self.cod != other.dom:
            raise DimensionMismatch(
                f"compose: {self.dom}->{self.cod} then {other.dom}->{other.cod}")
        f = self.field
        a, b, c = self.dom, self.cod, other.cod
        if self.is_empty or other.is_empty:
            return AffineRelation.empty(f, a, c)
        n_vars = a + b + c
        rows, rhs = [], []
        for i in range(self.mat.rows):
            row = list(self.mat.row(i)) + [f.zero] * c
            rows.append(row)
            rhs.append(self.rhs[i, 0])
        for i in range(other.mat.rows):
            row = [f.zero] * a + list(other.mat.row(i))
            rows.append(row)
            rhs.append(other.rhs[i, 0])
        keep = list(range(a)) + list(range(a + b, n_vars))
        out = project_affine(f, n_vars, rows, rhs, keep)
        if out is None:
            return AffineRelation.empty(f, a, c)
        return AffineRelation(f, a, c, out[0], out[1])

    def tensor(self, other: "AffineRelation") -> "AffineRelation":
        """Plain juxtaposition of coordinates (generic layer)."""
        f = self.field
        dom = self.dom + other.dom
        cod = self.cod + other.cod
        if self.is_empty or other.is_empty:
            return AffineRelation.empty(f, dom, cod)
        n = dom + cod
        rows, rhs = [], []

        def place(rel, dom_off, cod_off):
            for i in range(rel.mat.rows):
                row = [f.zero] * n
                for j in range(rel.dom):
                    row[dom_off + j] = rel.mat[i, j]
                for j in range(rel.cod):
                    row[dom + cod_off + j] = rel.mat[i, rel.dom + j]
                rows.append(row)
                rhs.append(rel.rhs[i, 0])

        place(self, 0, 0)
        place(other, self.dom, self.cod)
        return AffineRelation.from_constraints(f, dom, cod, rows, rhs)

    def converse(self) -> "AffineRelation":
        f = self.field
        if self.is_empty:
            return AffineRelation.empty(f, self.cod, self.dom)
        perm = list(range(self.dom, self.n_coords())) + list(range(self.dom))
        mat = self.mat.take_cols(perm)
        return AffineRelation.from_constraints(
            f, self.cod, self.dom, mat.to_lists(), self.rhs.to_list())

    def permute_columns(self, perm: Sequence[int],
                        dom: Optional[int] = None,
                        cod: Optional[int] = None) -> "AffineRelation":
        """Reindex ambient coordinates: new column j holds old column perm[j]."""
        f = self.field
        dom = self.dom if dom is None else dom
        cod = self.cod if cod is None else cod
        if self.is_empty:
            return AffineRelation.empty(f, dom, cod)
        mat = self.mat.take_cols(perm)
        return AffineRelation.from_constraints(
            f, dom, cod, mat.to_lists(), self.rhs.to_list())


def symmetry(field, n: int, m: int) -> AffineRelation:
    """The swap (u, v) -> (v, u): n+m -> m+n."""
    f = field
    total = n + m
    rows, rhs = [], []
    for i in range(n):
        row = [f.zero] * (2 * total)
        row[i] = f.one
        row[total + m + i] = f.neg(f.one)
        rows.append(row)
        rhs.append(f.zero)
    for j in range(m):
        row = [f.zero] * (2 * total)
        row[n + j] = f.one
        row[total + j] = f.neg(f.one)
        rows.append(row)
        rhs.append(f.zero)
    return AffineRelation.from_constraints(f, total, total, rows, rhs)


def cup(field, n: int) -> AffineRelation:
    """Plain diagonal cup 0 -> 2n: {(., (v, v))}."""
    f = field
    rows, rhs = [], []
    for i in range(n):
        row = [f.zero] * (2 * n)
        row[i] = f.one
        row[n + i] = f.neg(f.one)
        rows.append(row)
        rhs.append(f.zero)
    return AffineRelation.from_constraints(f, 0, 2 * n, rows, rhs)


def cap(field, n: int) -> AffineRelation:
    return cup(field, n).converse()


def gaa_generator(field, kind: str, m: int, n: int, phase) -> AffineRelation:
    """Affine-relations generators: 'white' constrains the sum of all legs
    to the phase; 'grey' forces all legs equal, outputs shifted by the
    phase; 'scalar' is multiplication (m = n = 1)."""
    f = field
    a = f.coerce(phase)
    total = m + n
    if kind == "white":
        if total == 0:
            if f.is_zero(a):
                return AffineRelation.total(f, 0, 0)
            return AffineRelation.empty(f, 0, 0)
        row = [f.one] * total
        return AffineRelation.from_constraints(f, m, n, [row], [a])
    if kind == "grey":
        rows, rhs = [], []
        legs = list(range(total))
        for i in range(total - 1):
            row = [f.zero] * total
            row[legs[i]] = f.one
            row[legs[i + 1]] = f.neg(f.one)
            rows.append(row)
            # stepping from an input leg to an output leg crosses the shift
            if legs[i] < m <= legs[i + 1]:
                rhs.append(f.neg(a))
            else:
                rhs.append(f.zero)
        return AffineRelation.from_constraints(f, m, n, rows, rhs)
    if kind == "scalar":
        if (m, n) != (1, 1):
            raise DimensionMismatch("scalar multiplication is 1 -> 1")
        row = [f.neg(a), f.one]
        return AffineRelation.from_constraints(f, 1, 1, [row], [f.zero])
    raise UnknownKind(f"unknown generator kind {kind!r}")


def scalar_mult(field, a) -> AffineRelation:
    return gaa_generator(field, "scalar", 1, 1, a)


def white(field, m: int, n: int, a=0) -> AffineRelation:
    return gaa_generator(field, "white", m, n, a)


def grey(field, m: int, n: int, a=0) -> AffineRelation:
    return gaa_generator(field, "grey", m, n, a)
