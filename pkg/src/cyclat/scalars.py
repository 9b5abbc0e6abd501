"""Exact scalars: rationals and real quadratic surds a + b*sqrt(d).

Every basis entry, Gram entry and derived invariant in this package lives
either in Q or in a single real quadratic field Q(sqrt(d)) with d > 1
squarefree.  Values are immutable, arithmetic is exact, and sign / order /
equality are decided exactly (a surd a + b*sqrt(d) is compared through the
sign of a^2 - b^2 d when a and b disagree in sign).

Scalars of *different* quadratic fields cannot be mixed arithmetically, but
they can be compared: the order of a1 + b1*sqrt(d1) versus b2*sqrt(d2) is
decided by comparing squares once both sides have a known sign.  This is
what allows exact tests such as  x <= 2 - sqrt(3)  for x in Q(sqrt(5)).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .errors import IncompatibleFieldError

RationalLike = Union[int, Fraction, "Scalar"]


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return (s, f) with n = s * f**2, s squarefree, for n > 0."""
    if n <= 0:
        raise ValueError("squarefree_decompose needs a positive integer")
    s, f = 1, 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e % 2:
                s *= p
            f *= p ** (e // 2)
        p += 1 if p == 2 else 2
    return s * m, f


def is_squarefree(n: int) -> bool:
    if n in (0, 1, -1):
        return n != 0
    return squarefree_decompose(abs(n))[1] == 1


_CHECKED_D: set[int] = set()


def _check_d(d: int) -> int:
    if d not in _CHECKED_D:
        if d <= 1 or not is_squarefree(d):
            raise ValueError(f"sqrt argument must be squarefree and > 1, got {d}")
        _CHECKED_D.add(d)
    return d


class Scalar:
    """Immutable exact number a + b*sqrt(d); d is None exactly when b == 0."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, d: int | None = None):
        if isinstance(a, Scalar) or isinstance(b, Scalar):
            raise TypeError("use Scalar arithmetic instead of nesting")
        a = Fraction(a)
        b = Fraction(b)
        if b == 0:
            d = None
        elif d is None:
            raise ValueError("surd part requires a radicand d")
        else:
            _check_d(d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *_):
        raise AttributeError("Scalar is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def of(x: RationalLike) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return Scalar(Fraction(x))

    @staticmethod
    def sqrt_int(n: int) -> "Scalar":
        """Exact sqrt of a nonnegative integer, e.g. sqrt(8) = 2*sqrt(2)."""
        if n < 0:
            raise ValueError("sqrt of a negative integer is not a real scalar")
        if n == 0:
            return Scalar(0)
        s, f = squarefree_decompose(n)
        if s == 1:
            return Scalar(f)
        return Scalar(0, f, s)

    # -- field bookkeeping --------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.d is None

    def as_fraction(self) -> Fraction:
        if self.d is not None:
            raise IncompatibleFieldError(f"{self} is not rational")
        return self.a

    def _join(self, other: "Scalar") -> int | None:
        if self.d is None:
            return other.d
        if other.d is None or other.d == self.d:
            return self.d
        raise IncompatibleFieldError(
            f"cannot mix sqrt({self.d}) and sqrt({other.d}) arithmetically"
        )

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: RationalLike) -> "Scalar":
        other = Scalar.of(other)
        d = self._join(other)
        return Scalar(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b, self.d)

    def __sub__(self, other: RationalLike) -> "Scalar":
        return self + (-Scalar.of(other))

    def __rsub__(self, other: RationalLike) -> "Scalar":
        return Scalar.of(other) + (-self)

    def __mul__(self, other: RationalLike) -> "Scalar":
        other = Scalar.of(other)
        d = self._join(other)
        a = self.a * other.a
        if d is not None:
            a += self.b * other.b * d
        return Scalar(a, self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self.d is None:
            if self.a == 0:
                raise ZeroDivisionError("scalar division by zero")
            return Scalar(1 / self.a)
        nrm = self.a * self.a - self.b * self.b * self.d
        if nrm == 0:
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, other: RationalLike) -> "Scalar":
        return self * Scalar.of(other).inverse()

    def __rtruediv__(self, other: RationalLike) -> "Scalar":
        return Scalar.of(other) * self.inverse()

    def __pow__(self, k: int) -> "Scalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "Scalar":
        """Galois conjugate a - b*sqrt(d)."""
        return Scalar(self.a, -self.b, self.d)

    # -- exact predicates ----------------------------------------------

    def sign(self) -> int:
        if self.b == 0:
            return (self.a > 0) - (self.a < 0)
        if self.a == 0:
            return 1 if self.b > 0 else -1
        sa = 1 if self.a > 0 else -1
        sb = 1 if self.b > 0 else -1
        if sa == sb:
            return sa
        # sign of a + b*sqrt(d) with opposite-sign parts: compare a^2 vs b^2 d
        lhs = self.a * self.a
        rhs = self.b * self.b * self.d
        if lhs == rhs:  # would force sqrt(d) rational; impossible for valid d
            return 0
        return sa if lhs > rhs else sb

    def compare(self, other: RationalLike) -> int:
        """Exact trichotomy, valid even across distinct quadratic fields."""
        other = Scalar.of(other)
        if self.d is None or other.d is None or self.d == other.d:
            return (self - other).sign()
        # self - other = (a1 - a2) + b1 sqrt(d1) - b2 sqrt(d2); split as P - Q
        p = Scalar(self.a - other.a, self.b, self.d)
        q = Scalar(0, other.b, other.d)
        sp, sq = p.sign(), q.sign()
        if sp != sq:
            return 1 if sp > sq else -1
        if sp == 0:
            return 0
        c = (p * p).compare(q * q)
        return c if sp > 0 else -c

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.of(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __abs__(self) -> "Scalar":
        return -self if self.sign() < 0 else self

    # -- conversions ----------------------------------------------------

    def __float__(self) -> float:
        v = float(self.a)
        if self.d is not None:
            v += float(self.b) * math.sqrt(self.d)
        return v

    def floor(self) -> int:
        g = math.floor(float(self))
        while self.compare(g + 1) >= 0:
            g += 1
        while self.compare(g) < 0:
            g -= 1
        return g

    def round_nearest(self) -> int:
        """Nearest integer, ties rounded up."""
        return (self + Fraction(1, 2)).floor()

    def min_poly(self) -> list[int]:
        """Primitive integer minimal polynomial, coefficients low -> high,
        positive leading coefficient."""
        if self.d is None:
            # q x - p for a = p/q reduced
            p, q = self.a.numerator, self.a.denominator
            return [-p, q]
        # (x - a)^2 = b^2 d: x^2 - 2a x + (a^2 - b^2 d)
        c1 = -2 * self.a
        c0 = self.a * self.a - self.b * self.b * self.d
        den = math.lcm(c1.denominator, c0.denominator)
        coeffs = [int(c0 * den), int(c1 * den), den]
        g = math.gcd(*[abs(c) for c in coeffs])
        return [c // g for c in coeffs]

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        if self.d is None:
            return str(self.a)
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt({self.d})"


ZERO = Scalar(0)
ONE = Scalar(1)
