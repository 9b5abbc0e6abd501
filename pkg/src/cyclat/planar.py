"""Rank-2 machinery: minimal bases, cyclic approximation, canonical x.

Every well-rounded planar lattice is similar to exactly one lattice of the
form ``M(x) = [[1, x], [x, 1]] Z^2`` with ``0 <= x <= 2 - sqrt(3)``.  The
canonical parameter is extracted from a Lagrange-minimal basis matrix:
x = (off-diagonal sum) / (trace), folded into the fundamental interval by
sign flips and inversion.  The pipeline is deterministic:

    Lagrange-reduce -> x = s/t (0 when s*t = 0) -> |x| -> invert if > 1
    -> assert x <= 2 - sqrt(3).

Because the formula is rational in the basis entries, x lies in whatever
field the entries do; this is what makes the parameter usable for counting
classes defined over a fixed field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotWellRoundedError, RankError, SingularMatrixError
from .heights import HeightValue, weil_height
from .lattice import Lattice, wr_flags
from .linalg import Matrix
from .scalars import Scalar

TWO_MINUS_SQRT3 = Scalar(2, -1, 3)


@dataclass(frozen=True)
class SimilarityClass:
    """Canonical representative of a planar WR similarity class."""

    field: str  # "Q" or "Q(sqrt(d))", the field generated by x
    x: Scalar

    def __post_init__(self):
        if self.x.sign() < 0 or self.x.compare(TWO_MINUS_SQRT3) > 0:
            raise ValueError(f"canonical parameter {self.x} outside [0, 2-sqrt(3)]")


def _field_label(x: Scalar) -> str:
    return "Q" if x.is_rational else f"Q(sqrt({x.d}))"


def lagrange_reduce(lat: Lattice) -> tuple[tuple[Scalar, ...], tuple[Scalar, ...]]:
    """Gauss/Lagrange-minimal basis (a1, a2), ||a1|| <= ||a2||, exact.

    The returned basis generates the lattice, a1 attains the minimum, and
    |<a1, a2>| <= ||a1||^2 / 2.
    """
    if lat.rank != 2:
        raise RankError("lagrange_reduce needs a rank-2 lattice")
    u, v = [list(c) for c in lat.basis_columns]

    def dot(p, q):
        acc = p[0] * q[0]
        for x, y in zip(p[1:], q[1:]):
            acc = acc + x * y
        return acc

    while True:
        if dot(u, u).compare(dot(v, v)) > 0:
            u, v = v, u
        mu = (dot(u, v) / dot(u, u)).round_nearest()
        if mu:
            v = [y - mu * x for x, y in zip(u, v)]
        if dot(v, v).compare(dot(u, u)) >= 0:
            break

    # deterministic signs: leading entry of a1 positive, <a1,a2> >= 0
    if next((x.sign() for x in u if x.sign()), 1) < 0:
        u = [-x for x in u]
    if dot(u, v).sign() < 0:
        v = [-x for x in v]
    return tuple(u), tuple(v)


def cyclic_approximation(basis: Matrix) -> Lattice:
    """Closest-circulant similarity surrogate for a 2x2 basis matrix.

    Returns (1/2) * [[t, s], [s, t]] Z^2 where t is the trace and s the
    off-diagonal sum of the basis matrix.  If that circulant is singular
    the second basis vector's sign is flipped first (one flip always
    suffices for a nonsingular input).
    """
    if basis.rows != 2 or basis.cols != 2:
        raise RankError("cyclic approximation is defined for 2x2 bases")
    if basis.det().sign() == 0:
        raise SingularMatrixError("basis matrix is singular")
    t = basis[0, 0] + basis[1, 1]
    s = basis[0, 1] + basis[1, 0]
    if (t * t) == (s * s):  # covers t = s = 0 and t = +-s
        t = basis[0, 0] - basis[1, 1]
        s = basis[1, 0] - basis[0, 1]
    half = Fraction(1, 2)
    return Lattice([[t * half, s * half], [s * half, t * half]])


def canonical_x(lat: Lattice) -> SimilarityClass:
    """Complete similarity invariant of a well-rounded planar lattice."""
    if lat.rank != 2:
        raise RankError("canonical_x needs a rank-2 lattice")
    if not wr_flags(lat).is_wr:
        raise NotWellRoundedError("lattice is not well-rounded")
    a1, a2 = lagrange_reduce(lat)
    t = a1[0] + a2[1]
    s = a1[1] + a2[0]
    if t.sign() == 0 and s.sign() == 0:
        # degenerate average: flipping one basis vector always resolves it
        a2 = tuple(-c for c in a2)
        t = a1[0] + a2[1]
        s = a1[1] + a2[0]
    if t.sign() == 0 or s.sign() == 0:
        x = Scalar(0)
    else:
        x = abs(s / t)
        if x.compare(1) > 0:
            x = x.inverse()
    if x.compare(TWO_MINUS_SQRT3) > 0:
        raise AssertionError("minimal basis violated |cos| <= 1/2")
    return SimilarityClass(_field_label(x), x)


def similar_wr(lat1: Lattice, lat2: Lattice) -> bool:
    """Exact similarity test for well-rounded planar lattices."""
    return canonical_x(lat1).x == canonical_x(lat2).x


def arithmetic_wr(a: int, b: int) -> tuple[Lattice, Scalar]:
    """The planar WR lattice with basis (1, 0), (a/b, sqrt(b^2-a^2)/b).

    Parameters must be coprime with 0 < a <= b/2, or (a, b) = (0, 1).
    Returns the lattice together with its canonical parameter
    x = a / (sqrt(b^2 - a^2) + b) = (b - sqrt(b^2 - a^2)) / a.
    """
    if (a, b) == (0, 1):
        return Lattice.integers(2), Scalar(0)
    if not (isinstance(a, int) and isinstance(b, int)):
        raise ValueError("integer parameters required")
    if not (0 < a and 2 * a <= b and math.gcd(a, b) == 1):
        raise ValueError("need coprime 0 < a <= b/2, or (a, b) = (0, 1)")
    root = Scalar.sqrt_int(b * b - a * a)
    lat = Lattice([[1, 0], [Fraction(a, b), root / b]])
    x = (Scalar(b) - root) / a
    return lat, x


def class_height(cls: SimilarityClass) -> HeightValue:
    """Weil height of the canonical parameter."""
    return weil_height(cls.x)


__all__ = [
    "SimilarityClass", "TWO_MINUS_SQRT3", "arithmetic_wr", "canonical_x",
    "class_height", "cyclic_approximation", "lagrange_reduce", "similar_wr",
]
