"""Weil heights, bounded-height enumeration, and counting bounds.

Heights are computed through minimal polynomials: for x of degree k with
primitive integer minimal polynomial f, ``h(x)^k`` equals the Mahler
measure ``|lead(f)| * prod max(1, |root|)``.  For rationals this collapses
to max(|p|, |q|); for quadratic surds the measure is an exact element of
Q(sqrt(d)), stored as the square of the height so every comparison stays
exact.  No explicit place decomposition is materialized.

Enumeration of ``{x in K : |x| <= alpha, h(x) <= T}`` over a real quadratic
field sweeps primitive integer quadratics a x^2 + b x + c.  The box
``1 <= a <= T^2, |b| <= 2 T^2, |c| <= T^2`` is complete because the Mahler
measure M = h^2 <= T^2 of a quadratic bounds its coefficients:
a <= M, |c| = a|r1 r2| <= M, and |b| <= a(|r1| + |r2|) <= 2M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .enclosures import Interval, pi_interval, scalar_interval, sqrt_interval
from .errors import UnsupportedFieldError
from .scalars import Scalar, is_squarefree

_X_MAX = Scalar(2, -1, 3)  # right endpoint of the canonical parameter range

DEFAULT_HEIGHT_DIGITS = 16  # enclosure width 10^-16 < the 10^-12 contract


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str  # "rational" | "quadratic"
    d: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.d is not None:
                raise UnsupportedFieldError("rational field carries no radicand")
        elif self.kind == "quadratic":
            if self.d is None or self.d <= 1 or not is_squarefree(self.d):
                raise UnsupportedFieldError(
                    f"real quadratic field needs squarefree d > 1, got {self.d}")
        else:
            raise UnsupportedFieldError(f"unsupported field kind {self.kind!r}")

    @property
    def degree(self) -> int:
        return 1 if self.kind == "rational" else 2

    @property
    def label(self) -> str:
        return "Q" if self.kind == "rational" else f"Q(sqrt({self.d}))"

    @staticmethod
    def rationals() -> "FieldDescriptor":
        return FieldDescriptor("rational")

    @staticmethod
    def real_quadratic(d: int) -> "FieldDescriptor":
        return FieldDescriptor("quadratic", d)


@dataclass(frozen=True)
class HeightValue:
    """Rigorous enclosure of a Weil height, plus the exact value of h^2."""

    lo: Fraction
    hi: Fraction
    h_squared: Scalar

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty height enclosure")

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)


def _height_from_h2(h2: Scalar, digits: int) -> HeightValue:
    if h2.is_rational:
        f = h2.as_fraction()
        # exact square roots of rationals collapse to a point enclosure
        rn, rd = math.isqrt(f.numerator), math.isqrt(f.denominator)
        if rn * rn == f.numerator and rd * rd == f.denominator:
            exact = Fraction(rn, rd)
            return HeightValue(exact, exact, h2)
        iv = sqrt_interval(f, digits)
        return HeightValue(iv.lo, iv.hi, h2)
    enc = scalar_interval(h2, digits + 10)
    lo = sqrt_interval(enc.lo, digits).lo
    hi = sqrt_interval(enc.hi, digits).hi
    return HeightValue(lo, hi, h2)


def _mahler_of_quadratic(a: int, r1: Scalar, r2: Scalar) -> Scalar:
    m = Scalar(a)
    for r in (r1, r2):
        ar = abs(r)
        if ar.compare(1) > 0:
            m = m * ar
    return m


def weil_height(x: Scalar, digits: int = DEFAULT_HEIGHT_DIGITS) -> HeightValue:
    """Absolute multiplicative Weil height h(x) >= 1, exactly via h^2."""
    if x.is_rational:
        f = x.as_fraction()
        h = max(abs(f.numerator), f.denominator)
        return HeightValue(Fraction(h), Fraction(h), Scalar(h * h))
    lead = x.min_poly()[2]
    h2 = _mahler_of_quadratic(lead, x, x.conjugate())
    return _height_from_h2(h2, digits)


def weil_height_via_quadratic(x: Scalar, field: FieldDescriptor,
                              digits: int = DEFAULT_HEIGHT_DIGITS) -> HeightValue:
    """Height computed through the degree-2 pathway of ``field``.

    Uses the characteristic polynomial of x in the quadratic field, whose
    Mahler measure is h(x)^2 regardless of whether x is rational; equality
    with :func:`weil_height` is the absoluteness property.
    """
    if field.degree != 2:
        raise UnsupportedFieldError("quadratic pathway needs a quadratic field")
    if not x.is_rational:
        if x.d != field.d:
            raise UnsupportedFieldError("element lies outside the field")
        return weil_height(x, digits)
    q = x.as_fraction().denominator
    # characteristic polynomial (q X - p)^2, already primitive for gcd(p,q)=1
    h2 = _mahler_of_quadratic(q * q, x, x)
    return _height_from_h2(h2, digits)


# ---------------------------------------------------------------------------
# bounded-height enumeration
# ---------------------------------------------------------------------------

def _rational_stratum(alpha: Scalar, t_floor: int, positive_only: bool):
    for q in range(1, t_floor + 1):
        for p in range(-t_floor, t_floor + 1):
            if math.gcd(p, q) != 1:
                continue
            x = Scalar(Fraction(p, q))
            if positive_only:
                if x.sign() < 0 or x.compare(alpha) > 0:
                    continue
            elif abs(x).compare(alpha) > 0:
                continue
            yield x


def _quadratic_stratum(d: int, alpha: Scalar, t: Fraction, positive_only: bool):
    t2 = t * t
    a_max = math.floor(t2)
    b_max = math.floor(2 * t2)
    c_max = math.floor(t2)
    t2f = float(t2)
    sqrt_d = math.sqrt(d)
    bs = np.arange(-b_max, b_max + 1, dtype=np.int64)
    cs = np.arange(-c_max, c_max + 1, dtype=np.int64)
    bsq = (bs * bs)[:, None]
    for a in range(1, a_max + 1):
        disc = bsq - (4 * a) * cs[None, :]
        mask = (disc > 0) & (disc % d == 0)
        if not mask.any():
            continue
        dd = np.where(mask, disc // d, 0)
        k = np.rint(np.sqrt(dd.astype(np.float64))).astype(np.int64)
        mask &= (k * k == dd) & (k > 0)
        for bi, ci in np.argwhere(mask):
            b = int(bs[bi])
            c = int(cs[ci])
            if math.gcd(a, math.gcd(b, c)) != 1:
                continue
            kk = int(k[bi, ci])
            # cheap float screen on the Mahler measure, then exact accept
            fr1 = (-b + kk * sqrt_d) / (2 * a)
            fr2 = (-b - kk * sqrt_d) / (2 * a)
            mf = a * max(1.0, abs(fr1)) * max(1.0, abs(fr2))
            if mf > t2f * (1 + 1e-9) + 1e-9:
                continue
            r1 = Scalar(Fraction(-b, 2 * a), Fraction(kk, 2 * a), d)
            h2 = _mahler_of_quadratic(a, r1, r1.conjugate())
            if h2.compare(t2) > 0:
                continue
            for x in (r1, r1.conjugate()):
                if positive_only:
                    if x.sign() < 0 or x.compare(alpha) > 0:
                        continue
                elif abs(x).compare(alpha) > 0:
                    continue
                yield x


def bounded_elements(field: FieldDescriptor, alpha: Scalar, max_height,
                     positive_only: bool = False) -> list[Scalar]:
    """All x in the field with |x| <= alpha and h(x) <= max_height.

    With ``positive_only`` the sweep keeps 0 <= x <= alpha; zero is added
    through its own branch.  Output is duplicate-free and sorted by
    (height, value), both compared exactly.
    """
    t = Fraction(max_height)
    if t < 1:
        raise ValueError("height bound must be at least 1")
    if alpha.sign() <= 0:
        raise ValueError("alpha must be positive")
    out = {Scalar(0)} if positive_only else set()
    out.update(_rational_stratum(alpha, math.floor(t), positive_only))
    if field.degree == 2:
        out.update(_quadratic_stratum(field.d, alpha, t, positive_only))

    def key(x: Scalar):
        return (_Cmp(weil_height(x).h_squared), _Cmp(x))

    return sorted(out, key=key)


class _Cmp:
    __slots__ = ("v",)

    def __init__(self, v: Scalar):
        self.v = v

    def __lt__(self, other):
        return self.v.compare(other.v) < 0

    def __eq__(self, other):
        return self.v == other.v


# ---------------------------------------------------------------------------
# counting and rigorous bounds
# ---------------------------------------------------------------------------

def disk_count_bound(degree: int, max_height, h_alpha: Interval) -> Interval:
    """(pi/sqrt(12)) (1 + 4^(2(d+1)) (T h(alpha))^(2d)), outward-rounded."""
    t = Fraction(max_height)
    pi = pi_interval()
    coef = pi / sqrt_interval(12, 40)
    th = (Interval.point(t) * h_alpha) ** (2 * degree)
    return (coef * (1 + 4 ** (2 * (degree + 1)) * th)).shrunk(200)


def similarity_count_bound(degree: int, max_height) -> Interval:
    """(pi/(2 sqrt(12))) (1 + 4^(2(d+1)) (2+sqrt(3))^d T^(2d)), outward."""
    t = Fraction(max_height)
    pi = pi_interval()
    coef = pi / (2 * sqrt_interval(12, 40))
    growth = (Interval.point(2) + sqrt_interval(3, 40)) ** degree
    term = 4 ** (2 * (degree + 1)) * growth * Interval.point(t) ** (2 * degree)
    return (coef * (1 + term)).shrunk(200)


def count_wr_classes(field: FieldDescriptor, max_height) -> tuple[int, Interval]:
    """Number of planar WR similarity classes over the field with class
    height at most T, together with the rigorous upper bound."""
    elems = bounded_elements(field, _X_MAX, max_height, positive_only=True)
    count = len(elems)
    bound = similarity_count_bound(field.degree, max_height)
    if count > bound.hi:
        raise AssertionError("enumerated count exceeded the rigorous bound")
    return count, bound
