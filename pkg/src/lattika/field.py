"""Exact arithmetic in the quadratic field Q(sqrt(3)), small vectors/matrices over it.

Every lattice generator used in this package has entries of the form
p + q*sqrt(3) with rational p, q, so the field is closed under all the
matrix algebra we need (inverses included).  Floats only appear at the
very end, when a coordinate is handed to numpy.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact rational from {x!r}")


_SQRT3_FLOAT = math.sqrt(3.0)


@total_ordering
class QSqrt3:
    """A number p + q*sqrt(3) with exact rational p, q."""

    __slots__ = ("p", "q")

    def __init__(self, p=0, q=0):
        self.p = _frac(p)
        self.q = _frac(q)

    @classmethod
    def coerce(cls, x) -> "QSqrt3":
        if isinstance(x, QSqrt3):
            return x
        return cls(_frac(x))

    def __repr__(self):
        if self.q == 0:
            return f"QSqrt3({self.p})"
        return f"QSqrt3({self.p}, {self.q})"

    def __float__(self):
        return float(self.p) + float(self.q) * _SQRT3_FLOAT

    def __hash__(self):
        return hash((self.p, self.q))

    def __bool__(self):
        return self.p != 0 or self.q != 0

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        o = QSqrt3.coerce(other)
        return QSqrt3(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.p, -self.q)

    def __sub__(self, other):
        return self + (-QSqrt3.coerce(other))

    def __rsub__(self, other):
        return QSqrt3.coerce(other) + (-self)

    def __mul__(self, other):
        o = QSqrt3.coerce(other)
        return QSqrt3(self.p * o.p + 3 * self.q * o.q, self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt3":
        """The field conjugate p - q*sqrt(3)."""
        return QSqrt3(self.p, -self.q)

    def norm(self) -> Fraction:
        """Field norm p^2 - 3 q^2 (a rational)."""
        return self.p * self.p - 3 * self.q * self.q

    def inverse(self) -> "QSqrt3":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QSqrt3 division by zero")
        return QSqrt3(self.p / n, -self.q / n)

    def __truediv__(self, other):
        return self * QSqrt3.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QSqrt3.coerce(other) * self.inverse()

    # -- exact order --------------------------------------------------------

    def sign(self) -> int:
        """Sign of the real value p + q*sqrt(3), computed exactly."""
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return 1 if q > 0 else -1
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # opposite signs: compare p^2 vs 3 q^2
        if p > 0:  # q < 0
            return 1 if p * p > 3 * q * q else -1
        return -1 if p * p > 3 * q * q else 1

    def __eq__(self, other):
        try:
            o = QSqrt3.coerce(other)
        except TypeError:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __lt__(self, other):
        return (self - QSqrt3.coerce(other)).sign() < 0

    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError(f"{self!r} is irrational")
        return self.p


Q0 = QSqrt3(0)
Q1 = QSqrt3(1)
SQRT3 = QSqrt3(0, 1)


# -- tiny exact linear algebra (2x2 and 2-vectors) --------------------------


def vec2(x, y):
    return (QSqrt3.coerce(x), QSqrt3.coerce(y))


class Mat2:
    """2x2 matrix over Q(sqrt(3))."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = QSqrt3.coerce(a)
        self.b = QSqrt3.coerce(b)
        self.c = QSqrt3.coerce(c)
        self.d = QSqrt3.coerce(d)

    def __repr__(self):
        return f"Mat2({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def det(self) -> QSqrt3:
        return self.a * self.d - self.b * self.c

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def inverse(self) -> "Mat2":
        dt = self.det()
        if not dt:
            raise ZeroDivisionError("singular Mat2")
        inv = dt.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def inv_transpose(self) -> "Mat2":
        return self.inverse().transpose()

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        x, y = other
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __mul__(self, s):
        s = QSqrt3.coerce(s)
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    __rmul__ = __mul__

    def scale(self, s) -> "Mat2":
        return self * s

    def is_integer(self) -> bool:
        return all(
            e.is_rational() and e.p.denominator == 1 for e in (self.a, self.b, self.c, self.d)
        )

    def as_int_tuple(self):
        if not self.is_integer():
            raise ValueError("matrix has non-integer entries")
        return (
            int(self.a.p),
            int(self.b.p),
            int(self.c.p),
            int(self.d.p),
        )

    def to_float(self):
        return ((float(self.a), float(self.b)), (float(self.c), float(self.d)))


def mat2_identity() -> Mat2:
    return Mat2(1, 0, 0, 1)
