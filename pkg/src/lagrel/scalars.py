"""Scalar backends.

Two backends share one interface: exact Gaussian rationals (the default,
used by every decision procedure) and double-precision complex numbers
(used for genuinely trigonometric parameters and density evaluation).
Exact circle points stand in for (cos t, sin t) pairs so rotations stay
inside the rational world.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import BackendMismatch, DivisionByZero, NotOnCircle

RationalLike = Union[int, Fraction, str]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


@dataclass(frozen=True)
class QI:
    """Gaussian rational re + im*i with both parts exact fractions."""

    re: Fraction
    im: Fraction

    def __add__(self, other: "QI") -> "QI":
        return QI(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QI") -> "QI":
        return QI(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "QI":
        return QI(-self.re, -self.im)

    def __mul__(self, other: "QI") -> "QI":
        return QI(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inv(self) -> "QI":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return QI(self.re / n, -self.im / n)

    def __truediv__(self, other: "QI") -> "QI":
        return self * other.inv()

    def conj(self) -> "QI":
        return QI(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"QI({format_scalar(self)!r})"


def qi(re: RationalLike = 0, im: RationalLike = 0) -> QI:
    return QI(_frac(re), _frac(im))


QI_ZERO = qi(0)
QI_ONE = qi(1)
QI_I = qi(0, 1)


def _format_frac(f: Fraction) -> str:
    return str(f)


_SCALAR_RE = re.compile(
    r"^(?P<sign1>[+-]?)(?P<a>\d+(?:/\d+)?)?"
    r"(?:(?P<sign2>[+-])?(?P<b>\d+(?:/\d+)?)?(?P<i>i))?$"
)


def format_scalar(z: QI) -> str:
    """Canonical text form, e.g. '3/5+4/5i', '-1', '2i', 'i', '0'."""
    re_, im_ = z.re, z.im
    if im_ == 0:
        return _format_frac(re_)
    if im_ == 1:
        imtxt = "i"
    elif im_ == -1:
        imtxt = "-i"
    else:
        imtxt = f"{_format_frac(im_)}i"
    if re_ == 0:
        return imtxt
    if im_ > 0 and not imtxt.startswith("+"):
        imtxt = "+" + imtxt
    return f"{_format_frac(re_)}{imtxt}"


def parse_scalar(text: str) -> QI:
    """Parse the canonical text form back into a Gaussian rational."""
    t = text.strip().replace(" ", "")
    if not t:
        raise ValueError("empty scalar")
    m = _SCALAR_RE.match(t)
    if not m or (m.group("a") is None and m.group("i") is None):
        raise ValueError(f"bad scalar: {text!r}")
    if m.group("i") is None:
        return qi(Fraction(m.group("sign1") + m.group("a")))
    # some term carries the trailing i
    if m.group("b") is not None or m.group("sign2") is not None:
        re_part = Fraction(m.group("sign1") + m.group("a"))
        sign2 = m.group("sign2") or "+"
        btxt = m.group("b") or "1"
        return qi(re_part, Fraction(sign2 + btxt))
    # purely imaginary, the 'a' slot (if any) is the i coefficient
    atxt = m.group("a") or "1"
    return qi(0, Fraction(m.group("sign1") + atxt))


@dataclass(frozen=True)
class CirclePoint:
    """Exact point (c, s) on the unit circle; a stand-in for (cos t, sin t)."""

    c: Fraction
    s: Fraction

    def __post_init__(self):
        if self.c * self.c + self.s * self.s != 1:
            raise NotOnCircle(f"({self.c}, {self.s}) is not on the unit circle")

    def mul(self, other: "CirclePoint") -> "CirclePoint":
        """Angle addition."""
        return CirclePoint(
            self.c * other.c - self.s * other.s,
            self.s * other.c + self.c * other.s,
        )

    def inv(self) -> "CirclePoint":
        return CirclePoint(self.c, -self.s)

    def as_floats(self) -> tuple:
        return (float(self.c), float(self.s))


CIRCLE_ONE = CirclePoint(Fraction(1), Fraction(0))
CIRCLE_QUARTER = CirclePoint(Fraction(0), Fraction(1))
CIRCLE_HALF = CirclePoint(Fraction(-1), Fraction(0))


def circle_from_tan_half(t: RationalLike) -> CirclePoint:
    """Exact (cos, sin) from the tangent half-angle t."""
    t = _frac(t)
    d = 1 + t * t
    return CirclePoint((1 - t * t) / d, 2 * t / d)


class ExactField:
    """Field of Gaussian rationals. Values are QI instances."""

    name = "exact"
    exact = True

    zero = QI_ZERO
    one = QI_ONE
    i = QI_I

    @staticmethod
    def coerce(x) -> QI:
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction)):
            return qi(x)
        if isinstance(x, str):
            return parse_scalar(x)
        if isinstance(x, complex):
            raise BackendMismatch("float value on the exact backend")
        raise TypeError(f"cannot coerce {x!r} into the exact field")

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return a.inv()

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def conj(a):
        return a.conj()

    @staticmethod
    def eq(a, b) -> bool:
        return a == b

    @staticmethod
    def is_zero(a) -> bool:
        return a.is_zero()

    @staticmethod
    def is_real(a) -> bool:
        return a.is_real()

    @staticmethod
    def re(a) -> QI:
        return qi(a.re)

    @staticmethod
    def im(a) -> QI:
        return qi(a.im)

    @staticmethod
    def to_str(a) -> str:
        return format_scalar(a)

    @staticmethod
    def from_str(s: str) -> QI:
        return parse_scalar(s)

    @staticmethod
    def to_complex(a) -> complex:
        return complex(float(a.re), float(a.im))


class FloatField:
    """IEEE complex backend. No decision procedures allowed here."""

    name = "float"
    exact = False

    zero = complex(0.0)
    one = complex(1.0)
    i = complex(0.0, 1.0)

    @staticmethod
    def coerce(x) -> complex:
        if isinstance(x, QI):
            return complex(float(x.re), float(x.im))
        if isinstance(x, (int, float, Fraction)):
            return complex(float(x))
        if isinstance(x, complex):
            return x
        if isinstance(x, str):
            z = parse_scalar(x)
            return complex(float(z.re), float(z.im))
        raise TypeError(f"cannot coerce {x!r} into the float field")

    @staticmethod
    def _check(z: complex) -> complex:
        if not (cmath.isfinite(z)):
            raise ArithmeticError("non-finite float scalar")
        return z

    @classmethod
    def add(cls, a, b):
        return cls._check(a + b)

    @classmethod
    def sub(cls, a, b):
        return cls._check(a - b)

    @classmethod
    def mul(cls, a, b):
        return cls._check(a * b)

    @staticmethod
    def neg(a):
        return -a

    @classmethod
    def inv(cls, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return cls._check(1.0 / a)

    @classmethod
    def div(cls, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        return cls._check(a / b)

    @staticmethod
    def conj(a):
        return a.conjugate()

    @staticmethod
    def eq(a, b) -> bool:
        return a == b

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    @staticmethod
    def is_real(a) -> bool:
        return a.imag == 0.0

    @staticmethod
    def re(a):
        return complex(a.real)

    @staticmethod
    def im(a):
        return complex(a.imag)

    @staticmethod
    def to_str(a) -> str:
        return repr(a)

    @staticmethod
    def to_complex(a) -> complex:
        return a


EXACT = ExactField()
FLOAT = FloatField()


def field_by_name(name: str):
    if name == "exact":
        return EXACT
    if name == "float":
        return FLOAT
    raise BackendMismatch(f"unknown backend {name!r}")
