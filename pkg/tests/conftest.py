"""Shared randomized generators for the property suites.

Everything is seeded; the generators produce exact rational data small
enough to keep the arithmetic fast but varied enough to exercise rank
degeneracies (zero blocks, dependent rows, fibres) on purpose.
"""

import random
from fractions import Fraction

import pytest

from lagrel.scalars import EXACT, qi
from lagrel.linalg import Matrix, rank
import lagrel.lagrangian as lg
import lagrel.gauss as gs

F = EXACT


@pytest.fixture
def rng():
    return random.Random(20240817)


def rand_frac(rng, span=3, den=3):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_frac_nonzero(rng):
    while True:
        v = rand_frac(rng)
        if v:
            return v


def rand_qi(rng):
    return qi(rand_frac(rng), rand_frac(rng))


def rand_real_matrix(rng, rows, cols):
    return Matrix(F, rows, cols,
                  [F.coerce(rand_frac(rng)) for _ in range(rows * cols)])


def rand_psd(rng, n, definite=False):
    g = rand_real_matrix(rng, n, n + 1)
    out = g @ g.transpose()
    if definite:
        out = out + Matrix.identity(F, n)
    return out


def rand_symplectomorphism(rng, n, words=3):
    m = Matrix.identity(F, 2 * n)
    for _ in range(words):
        kind = rng.choice(["diag", "xshear", "zshear", "fourier"])
        if kind == "diag":
            a = rand_real_matrix(rng, n, n)
            if rank(a) < n:
                continue
            m = m @ lg.symp_diag(a)
        elif kind == "xshear":
            b = rand_real_matrix(rng, n, n)
            m = m @ lg.symp_shear_x(b + b.transpose())
        elif kind == "zshear":
            b = rand_real_matrix(rng, n, n)
            m = m @ lg.symp_shear_z(b + b.transpose())
        else:
            m = m @ lg.symp_fourier(F, n)
    return m


BASE_CHOICES = {
    "gsa": ["delta", "uniform", "vac", "conj"],
    "positive": ["delta", "uniform", "vac"],
    "quasi": ["delta", "uniform", "vac"],
}


def _base_wire(rng, choice):
    if choice == "delta":
        return lg.z_spider_rel(F, 0, 1, rand_frac(rng), 0)
    if choice == "uniform":
        return lg.x_spider_rel(F, 0, 1, rand_frac(rng), 0)
    if choice == "vac":
        return lg.vacuum_rel(F)
    return lg.x_spider_rel(F, 0, 1, 0, qi(0, -1))  # conjugate vacuum


def rand_lagrangian_state(rng, n, flavor="gsa"):
    """Random Lagrangian state: a tensor of one-mode generators moved by
    a random symplectomorphism word and a real translation. The flavor
    controls whether only positivity-preserving generators appear."""
    base = None
    for _ in range(n):
        s = _base_wire(rng, rng.choice(BASE_CHOICES[flavor]))
        base = s if base is None else base.tensor(s)
    moved = base.compose(lg.graph_relation(rand_symplectomorphism(rng, n)))
    shift = lg.z_translate_rel(F, rand_frac(rng)).compose(
        lg.x_translate_rel(F, rand_frac(rng)))
    if n > 1:
        shift = shift.tensor(lg.LagrangianRelation.identity(F, n - 1))
    return moved.compose(shift)


def rand_quasi_real_state(rng, n):
    """Quasi-real states: an embedded Gaussian channel output, possibly
    padded with fibre wires."""
    k = rng.randint(0, n)
    parts = []
    if k:
        g = gs.GaussMap.state(rand_psd(rng, k), rand_real_matrix(rng, k, 1))
        parts.append(gs.to_gaussrel(g))
    for _ in range(n - k):
        ch = rng.choice(["uniform", "delta"])
        parts.append(_base_wire(rng, ch))
    out = parts[0]
    for p in parts[1:]:
        out = out.tensor(p)
    return out


def rand_positive_state(rng, n):
    while True:
        st = rand_lagrangian_state(rng, n, flavor="positive")
        if not st.is_empty:
            return st


class GF5:
    """Tiny prime field used only as a brute-force composition oracle."""

    name = "gf5"
    exact = True
    p = 5
    zero = 0
    one = 1

    elements = tuple(range(5))

    @staticmethod
    def coerce(x):
        if isinstance(x, int):
            return x % 5
        if isinstance(x, Fraction):
            if x.denominator % 5 == 0:
                raise ZeroDivisionError("denominator divisible by 5")
            return (x.numerator * pow(x.denominator, 3, 5)) % 5
        raise TypeError(f"cannot coerce {x!r} into GF5")

    @staticmethod
    def add(a, b):
        return (a + b) % 5

    @staticmethod
    def sub(a, b):
        return (a - b) % 5

    @staticmethod
    def mul(a, b):
        return (a * b) % 5

    @staticmethod
    def neg(a):
        return (-a) % 5

    @staticmethod
    def inv(a):
        if a % 5 == 0:
            raise ZeroDivisionError("inverse of zero in GF5")
        return pow(a, 3, 5)

    @classmethod
    def div(cls, a, b):
        return cls.mul(a, cls.inv(b))

    @staticmethod
    def conj(a):
        return a

    @staticmethod
    def eq(a, b):
        return (a - b) % 5 == 0

    @staticmethod
    def is_zero(a):
        return a % 5 == 0

    @staticmethod
    def is_real(a):
        return True

    @staticmethod
    def re(a):
        return a

    @staticmethod
    def im(a):
        return 0

    @staticmethod
    def to_str(a):
        return str(a % 5)


GF5_FIELD = GF5()
