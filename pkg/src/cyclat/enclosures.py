"""Rigorous real and complex enclosures over exact rational endpoints.

Intervals carry Fraction endpoints, so all interval arithmetic here is
exact; width enters only through irrational constants (pi, square roots,
trig values), each of which is enclosed with a caller-chosen precision.
Endpoints are periodically rounded *outward* to a bounded denominator to
keep Fraction sizes under control; this never shrinks an enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .scalars import Scalar

# 60 correct digits; enough for every fixed constant at desk scale
_PI_DIGITS = "3.141592653589793238462643383279502884197169399375105820974944"


def _round_down(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.floor(x * scale), scale)


def _round_up(x: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(math.ceil(x * scale), scale)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @staticmethod
    def point(x) -> "Interval":
        f = Fraction(x)
        return Interval(f, f)

    def __add__(self, other) -> "Interval":
        other = _coerce(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Interval":
        other = _coerce(other)
        ps = (self.lo * other.lo, self.lo * other.hi,
              self.hi * other.lo, self.hi * other.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Interval":
        out = Interval.point(1)
        base = self
        if k < 0:
            raise ValueError("negative interval powers unsupported")
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def reciprocal(self) -> "Interval":
        if self.lo <= 0:
            raise ValueError("reciprocal needs a strictly positive interval")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "Interval":
        return self * _coerce(other).reciprocal()

    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        f = Fraction(x)
        return self.lo <= f <= self.hi

    def shrunk(self, bits: int = 256) -> "Interval":
        """Round endpoints outward to denominator 2**bits."""
        return Interval(_round_down(self.lo, bits), _round_up(self.hi, bits))

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint())

    def __repr__(self):
        return f"Interval[{float(self.lo):.15g}, {float(self.hi):.15g}]"


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(Fraction(x))


@lru_cache(maxsize=None)
def pi_interval() -> Interval:
    whole, frac = _PI_DIGITS.split(".")
    scale = 10 ** len(frac)
    lo = Fraction(int(whole) * scale + int(frac), scale)
    return Interval(lo, lo + Fraction(1, scale))


def sqrt_interval(x, digits: int = 25) -> Interval:
    """Enclosure of sqrt(x) for a nonnegative Fraction, via isqrt scaling."""
    f = Fraction(x)
    if f < 0:
        raise ValueError("sqrt of negative value")
    if f == 0:
        return Interval.point(0)
    scale = 10 ** digits
    # sqrt(p/q) = sqrt(p q)/q
    n = f.numerator * f.denominator
    root = math.isqrt(n * scale * scale)
    lo = Fraction(root, f.denominator * scale)
    hi = Fraction(root + 1, f.denominator * scale)
    return Interval(lo, hi)


def scalar_interval(s: Scalar, digits: int = 25) -> Interval:
    """Enclosure of an exact scalar a + b*sqrt(d)."""
    out = Interval.point(s.a)
    if s.d is not None:
        rt = sqrt_interval(Fraction(s.d), digits)
        out = out + Interval.point(s.b) * rt
    return out


def _cos_point(x: Fraction, digits: int) -> Interval:
    # Taylor series at 0; once terms decrease the tail alternates, so two
    # consecutive partial sums bracket the true value.
    eps = Fraction(1, 10 ** (digits + 2))
    x2 = x * x
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    while True:
        total += term
        nxt = -term * x2 / ((2 * k + 1) * (2 * k + 2))
        k += 1
        if abs(nxt) < abs(term) and abs(nxt) < eps:
            lo, hi = sorted((total, total + nxt))
            return Interval(lo, hi)
        term = nxt


def _sin_point(x: Fraction, digits: int) -> Interval:
    if x == 0:
        return Interval.point(0)
    eps = Fraction(1, 10 ** (digits + 2))
    x2 = x * x
    total = Fraction(0)
    term = Fraction(x)
    k = 0
    while True:
        total += term
        nxt = -term * x2 / ((2 * k + 2) * (2 * k + 3))
        k += 1
        if abs(nxt) < abs(term) and abs(nxt) < eps:
            lo, hi = sorted((total, total + nxt))
            return Interval(lo, hi)
        term = nxt


def cos_interval(x: Interval, digits: int = 25) -> Interval:
    """cos over an interval: series at the midpoint widened by the radius
    (|cos'| <= 1), valid for the narrow arguments used here."""
    mid = x.midpoint()
    rad = x.width() / 2
    c = _cos_point(mid, digits)
    return Interval(c.lo - rad, c.hi + rad).shrunk(8 * digits)


def sin_interval(x: Interval, digits: int = 25) -> Interval:
    mid = x.midpoint()
    rad = x.width() / 2
    s = _sin_point(mid, digits)
    return Interval(s.lo - rad, s.hi + rad).shrunk(8 * digits)


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle enclosing a complex number."""

    re: Interval
    im: Interval

    def __add__(self, other: "Rect") -> "Rect":
        return Rect(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "Rect") -> "Rect":
        return Rect(self.re * other.re - self.im * other.im,
                    self.re * other.im + self.im * other.re)

    def shrunk(self, bits: int) -> "Rect":
        return Rect(self.re.shrunk(bits), self.im.shrunk(bits))

    @staticmethod
    def point(x) -> "Rect":
        return Rect(Interval.point(x), Interval.point(0))


@lru_cache(maxsize=None)
def root_of_unity(n: int, j: int, digits: int = 30) -> Rect:
    """Rigorous rectangle around exp(2 pi i j / n)."""
    theta = pi_interval() * Fraction(2 * (j % n), n)
    return Rect(cos_interval(theta, digits), sin_interval(theta, digits))


def unique_integer(iv: Interval) -> int | None:
    """The single integer in the interval, or None if zero or several."""
    lo = math.ceil(iv.lo)
    hi = math.floor(iv.hi)
    if lo == hi:
        return lo
    return None
