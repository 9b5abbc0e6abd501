"""Rotation-invariant lattices: circulants, ideals of Z[x]/(x^n - 1), and
the bounded census of cyclic sublattices of Z^n.

The coefficient map between Z[x]/(x^n - 1) and Z^n identifies ideals with
cyclic sublattices; multiplication by x corresponds to the rotation shift.
A lattice is *simple cyclic* when the n rotation shifts of a single vector
generate it; the search for such a generator is a bounded semi-decision:
"no generator within the bound" is reported distinctly from a proof of
non-existence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .enclosures import Rect, root_of_unity, unique_integer
from .errors import EnclosureError, NotCyclicError, ScaleLimitError
from .lattice import (Lattice, Membership, enumerate_below, lattices_equal)
from .linalg import Matrix, det_int, hnf_basis
from .polys import poly_gcd_rational, poly_trim
from .scalars import Scalar


def rotate(v: Sequence) -> tuple:
    """Rotation shift (c1, ..., cn) -> (cn, c1, ..., c_{n-1})."""
    v = tuple(v)
    return v[-1:] + v[:-1]


# ---------------------------------------------------------------------------
# circulant matrices and the closest-circulant projection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CirculantMatrix:
    """Circulant with first row c; row k is the k-th rotation shift of c."""

    first_row: tuple[Scalar, ...]

    @property
    def n(self) -> int:
        return len(self.first_row)

    def entry(self, i: int, j: int) -> Scalar:
        return self.first_row[(j - i) % self.n]

    def to_matrix(self) -> Matrix:
        n = self.n
        return Matrix([[self.entry(i, j) for j in range(n)] for i in range(n)])


def circulant_approximation(a: Matrix) -> CirculantMatrix:
    """Frobenius-closest circulant: entry c_k is the average of the k-th
    wrapped diagonal, equivalently (1/n) <A, Pi^(k-1)>."""
    if a.rows != a.cols:
        raise ValueError("square matrix required")
    n = a.rows
    inv_n = Fraction(1, n)
    c = []
    for k in range(n):
        acc = Scalar(0)
        for i in range(n):
            acc = acc + a[i, (i + k) % n]
        c.append(acc * inv_n)
    return CirculantMatrix(tuple(c))


def circulant_int_rows(c: Sequence[int]) -> list[list[int]]:
    n = len(c)
    return [[c[(j - i) % n] for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# determinant of P(c), twice
# ---------------------------------------------------------------------------

def circulant_det_exact(c: Sequence[int]) -> int:
    return det_int(circulant_int_rows(c))


def circulant_det_certified(c: Sequence[int], *, start_digits: int = 30,
                            max_digits: int = 2000) -> int:
    """det P(c) = prod_j c(omega_n^j), evaluated with certified complex
    rectangles tight enough to round to a unique integer.  Precision
    doubles adaptively; a wrong answer is never returned."""
    n = len(c)
    coeffs = list(c)
    digits = start_digits
    while digits <= max_digits:
        prod = Rect.point(1)
        bits = 16 * digits
        ok = True
        for j in range(1, n + 1):
            w = root_of_unity(n, j, digits)
            val = Rect.point(coeffs[-1])
            for coef in reversed(coeffs[:-1]):
                val = (val * w + Rect.point(coef)).shrunk(bits)
            prod = (prod * val).shrunk(bits)
        if not prod.im.contains(0):
            ok = False
        det = unique_integer(prod.re)
        if ok and det is not None:
            return det
        digits *= 2
    raise EnclosureError("could not certify the circulant determinant")


def det_via_roots(c: Sequence[int]) -> int:
    """Certified root-product determinant, cross-checked against the exact
    integer determinant of P(c)."""
    certified = circulant_det_certified(c)
    exact = circulant_det_exact(c)
    if certified != exact:
        raise AssertionError(
            f"certified determinant {certified} != exact {exact}")
    return certified


# ---------------------------------------------------------------------------
# polynomials modulo x^n - 1 and their ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RnPoly:
    """Element of Z[x]/(x^n - 1) as its length-n coefficient vector."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise ValueError("coefficient vector must have length n")

    @staticmethod
    def from_coeffs(n: int, coeffs: Sequence[int]) -> "RnPoly":
        c = list(coeffs)
        if len(c) > n:
            folded = [0] * n
            for i, x in enumerate(c):
                folded[i % n] += x
            c = folded
        return RnPoly(n, tuple(c) + (0,) * (n - len(c)))


@dataclass(frozen=True)
class RnIdeal:
    n: int
    generators: tuple[RnPoly, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("ideal needs at least one generator")
        if any(g.n != self.n for g in self.generators):
            raise ValueError("inconsistent modulus across generators")


def is_zero_divisor(p: RnPoly) -> bool:
    """True when p shares a cyclotomic factor with x^n - 1, i.e. when the
    rotations of its coefficient vector are linearly dependent."""
    poly = poly_trim(list(p.coeffs))
    if not poly:
        return True
    modulus = [-1] + [0] * (p.n - 1) + [1]
    return len(poly_gcd_rational(poly, modulus)) > 1


def simple_cyclic_lattice(c: Sequence[int]) -> Lattice:
    """Lattice generated by all rotation shifts of c (rank may drop)."""
    n = len(c)
    cols = [list(c)]
    for _ in range(n - 1):
        cols.append(list(rotate(cols[-1])))
    basis = hnf_basis(cols)
    return Lattice(basis, ambient_dim=n)


def ideal_to_lattice(ideal: RnIdeal) -> Lattice:
    """Coefficient-vector lattice spanned by all rotations of all
    generators; always cyclic."""
    cols = []
    for g in ideal.generators:
        v = list(g.coeffs)
        for _ in range(ideal.n):
            cols.append(v)
            v = list(rotate(v))
    basis = hnf_basis(cols)
    return Lattice(basis, ambient_dim=ideal.n)


def is_cyclic(lat: Lattice) -> bool:
    """rho(L) = L, decided by exact membership of each rotated basis
    vector (rho is orthogonal, so containment forces equality)."""
    mem = Membership(lat)
    return all(rotate(col) in mem for col in lat.basis_columns)


# ---------------------------------------------------------------------------
# generator search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CyclicCertificate:
    """Verified witness that scale * L equals the rotation span of c."""

    generator: tuple[int, ...]   # integer vector in the scaled lattice
    scale: int                   # denominators cleared by this factor
    det_abs: int                 # |det P(c)| of the scaled generator
    contains: bool
    contained: bool

    def generator_in_lattice(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(g, self.scale) for g in self.generator)


def simple_cyclic_search(lat: Lattice, norm_sq_bound,
                         seeds: Sequence[Sequence[int]] = ()
                         ) -> CyclicCertificate | None:
    """Bounded search for a single-vector rotation generator.

    Candidates are the lattice vectors of squared norm at most the bound
    (measured in the given lattice; denominators are cleared first), taken
    in (norm, lex) order after any caller-provided seeds.  Returns the
    first verified certificate, or None when the bound is exhausted --
    which is *not* a proof that no generator exists.
    """
    if not is_cyclic(lat):
        raise NotCyclicError("generator search requires a cyclic lattice")
    scale = lat.denominator_scale()
    scaled = lat.scaled(scale) if scale != 1 else lat
    bound = Scalar.of(norm_sq_bound) * scale * scale
    n = scaled.ambient_dim
    full_rank = scaled.rank == n
    target_hnf = None
    if full_rank:
        covol = abs(det_int(scaled.hnf_columns()))
    else:
        target_hnf = scaled.hnf_columns()

    mem = Membership(scaled)
    candidates: list[tuple[int, ...]] = []
    for s in seeds:
        vec = tuple(int(x) * scale for x in s)
        if vec in mem:
            candidates.append(vec)
    basis_cols = scaled.int_columns()
    for coords, _ in enumerate_below(scaled.gram(), bound):
        vec = tuple(sum(basis_cols[j][i] * coords[j] for j in range(scaled.rank))
                    for i in range(n))
        candidates.append(vec)

    seen = set()
    for vec in candidates:
        key = min(vec, tuple(-x for x in vec))
        if key in seen:
            continue
        seen.add(key)
        det = det_int(circulant_int_rows(vec))
        if full_rank:
            if abs(det) != covol:
                continue
            lam = simple_cyclic_lattice(vec)
            if lam.rank == n and lattices_equal(lam, scaled):
                return CyclicCertificate(vec, scale, abs(det), True, True)
        else:
            lam = simple_cyclic_lattice(vec)
            if lam.rank == scaled.rank and lam.hnf_columns() == target_hnf:
                return CyclicCertificate(vec, scale, abs(det), True, True)
    return None


# ---------------------------------------------------------------------------
# census of cyclic sublattices of Z^n
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusEntry:
    n: int
    index: int
    hnf_columns: tuple[tuple[int, ...], ...]
    is_simple: bool
    generator: tuple[int, ...] | None

    def lattice(self) -> Lattice:
        return Lattice(self.hnf_columns)


def _hnf_diagonals(n: int, max_index: int):
    """All diagonals (d1..dn) with product <= max_index."""
    def rec(prefix: list[int], budget: int):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for d in range(1, budget + 1):
            yield from rec(prefix + [d], budget // d)

    yield from rec([], max_index)


def _hnf_fill(diag: tuple[int, ...]):
    """All canonical lower-triangular HNF matrices with the given diagonal:
    row i carries i free entries in [0, diag[i])."""
    n = len(diag)

    def rec(rows: list[list[int]], i: int):
        if i == n:
            yield [list(r) for r in rows]
            return
        def fill(j: int, row: list[int]):
            if j == i:
                yield row + [diag[i]] + [0] * (n - i - 1)
                return
            for v in range(diag[i]):
                yield from fill(j + 1, row + [v])
        for row in fill(0, []):
            yield from rec(rows + [row], i + 1)

    yield from rec([], 0)


def cyclic_census(n: int, max_index: int) -> list[CensusEntry]:
    """All rotation-invariant full-rank sublattices of Z^n with index at
    most max_index, via canonical HNF enumeration, in (index, entries)
    order.  Simplicity is decided by a bounded generator search with
    norm^2 bound index^2 * n (a documented heuristic, ample for the desk
    scale this census is restricted to)."""
    if not (1 <= n <= 6) or not (1 <= max_index <= 1000):
        raise ScaleLimitError("census limited to 1 <= n <= 6, 1 <= index <= 1000")
    out = []
    for diag in _hnf_diagonals(n, max_index):
        index = math.prod(diag)
        for rows in _hnf_fill(diag):
            cols = [[rows[i][j] for i in range(n)] for j in range(n)]
            lat = Lattice(cols)
            if not is_cyclic(lat):
                continue
            cert = simple_cyclic_search(lat, index * index * n)
            out.append(CensusEntry(
                n, index,
                tuple(tuple(col) for col in lat.hnf_columns()),
                cert is not None,
                cert.generator if cert else None))
    out.sort(key=lambda e: (e.index, e.hnf_columns))
    return out
