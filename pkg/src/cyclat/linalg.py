"""Exact linear algebra: Scalar matrices, integer HNF and Smith forms.

Integer routines work on plain ``list[list[int]]`` (row-major) for speed;
the :class:`Matrix` wrapper carries :class:`~cyclat.scalars.Scalar` entries
and is used wherever quadratic surds can appear.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import SingularMatrixError
from .scalars import Scalar

IntRows = list[list[int]]


# ---------------------------------------------------------------------------
# integer kernel: column-style Hermite normal form
# ---------------------------------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    return g, x, y


def hnf(rows: Sequence[Sequence[int]], *, trim: bool = True
        ) -> tuple[IntRows, IntRows, int]:
    """Column Hermite normal form.

    Returns ``(H, U, rank)`` with ``H = M @ U``, U unimodular, H lower
    triangular with positive pivots and the entries left of each pivot
    reduced into ``[0, pivot)``.  Zero columns are dropped when ``trim``
    is set, otherwise they trail on the right.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    h = [list(r) for r in rows]
    for r in h:
        if len(r) != n:
            raise ValueError("ragged matrix")
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j0: int, j1: int, a: int, b: int, c: int, e: int) -> None:
        # (col j0, col j1) <- (a*col j0 + b*col j1, c*col j0 + e*col j1)
        for mat in (h, u):
            for row in mat:
                x, y = row[j0], row[j1]
                row[j0] = a * x + b * y
                row[j1] = c * x + e * y

    col = 0
    for row_i in range(m):
        if col == n:
            break
        pivot_j = None
        for j in range(col, n):
            if h[row_i][j] == 0:
                continue
            if pivot_j is None:
                pivot_j = j
                continue
            g, x, y = _xgcd(h[row_i][pivot_j], h[row_i][j])
            colop(pivot_j, j, x, y, -(h[row_i][j] // g), h[row_i][pivot_j] // g)
        if pivot_j is None:
            continue
        if pivot_j != col:
            colop(col, pivot_j, 0, 1, 1, 0)
        if h[row_i][col] < 0:
            for mat in (h, u):
                for row in mat:
                    row[col] = -row[col]
        piv = h[row_i][col]
        for j in range(col):
            q = h[row_i][j] // piv
            if q:
                for mat in (h, u):
                    for row in mat:
                        row[j] -= q * row[col]
        col += 1

    rank = col
    if trim:
        h = [r[:rank] for r in h]
    return h, u, rank


def hnf_basis(columns: Sequence[Sequence[int]]) -> list[list[int]]:
    """Canonical HNF basis (as columns) of the lattice spanned by ``columns``."""
    if not columns:
        return []
    rows = [[c[i] for c in columns] for i in range(len(columns[0]))]
    h, _, rank = hnf(rows)
    return [[h[i][j] for i in range(len(h))] for j in range(rank)]


def kernel_basis(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer basis (as columns) of the kernel of the given integer map."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    h, u, rank = hnf(rows, trim=False)
    return [[u[i][j] for i in range(n)] for j in range(rank, n)]


def det_int(rows: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_invariants(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith invariant factors d1 | d2 | ... of an integer matrix."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    invs: list[int] = []
    top = 0
    while top < min(m, n):
        # find a nonzero entry to act as pivot
        pi, pj = -1, -1
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0:
                    pi, pj = i, j
                    break
            if pi >= 0:
                break
        if pi < 0:
            break
        a[top], a[pi] = a[pi], a[top]
        for r in a:
            r[top], r[pj] = r[pj], r[top]
        while True:
            # clear column with row ops
            for i in range(top + 1, m):
                while a[i][top]:
                    q = a[i][top] // a[top][top]
                    for j in range(top, n):
                        a[i][j] -= q * a[top][j]
                    if a[i][top]:
                        a[top], a[i] = a[i], a[top]
            # clear row with column ops
            dirty = False
            for j in range(top + 1, n):
                while a[top][j]:
                    q = a[top][j] // a[top][top]
                    for i in range(top, m):
                        a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        for i in range(top, m):
                            a[i][top], a[i][j] = a[i][j], a[i][top]
                        dirty = True
            if not dirty:
                break
        invs.append(abs(a[top][top]))
        top += 1
    # enforce divisibility chain
    for i in range(len(invs)):
        for j in range(i + 1, len(invs)):
            g = math.gcd(invs[i], invs[j])
            invs[i], invs[j] = g, invs[i] * invs[j] // g if g else 0
    return invs


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    return hnf(rows)[2]


# ---------------------------------------------------------------------------
# Scalar matrices
# ---------------------------------------------------------------------------

class Matrix:
    """Dense immutable matrix with exact :class:`Scalar` entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable]):
        rows = tuple(tuple(Scalar.of(x) for x in r) for r in data)
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(columns: Sequence[Sequence]) -> "Matrix":
        return Matrix([[c[i] for c in columns] for i in range(len(columns[0]))])

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> list[tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        return self.data[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.data == other.data)

    def __hash__(self):
        return hash(self.data)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.data))
        return Matrix(
            [[_dot(r, c) for c in ot] for r in self.data]
        )

    def __mul__(self, s) -> "Matrix":
        s = Scalar.of(s)
        return Matrix([[x * s for x in r] for r in self.data])

    __rmul__ = __mul__

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[x + y for x, y in zip(r, s)]
                       for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[x - y for x, y in zip(r, s)]
                       for r, s in zip(self.data, other.data)])

    def matvec(self, v: Sequence) -> tuple[Scalar, ...]:
        vv = [Scalar.of(x) for x in v]
        return tuple(_dot(r, vv) for r in self.data)

    def is_symmetric(self) -> bool:
        return all(self.data[i][j] == self.data[j][i]
                   for i in range(self.rows) for j in range(i))

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        a = [list(r) for r in self.data]
        n = self.rows
        det = Scalar(1)
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k].sign() != 0), None)
            if p is None:
                return Scalar(0)
            if p != k:
                a[k], a[p] = a[p], a[k]
                det = -det
            det = det * a[k][k]
            inv = a[k][k].inverse()
            for i in range(k + 1, n):
                f = a[i][k] * inv
                if f.sign() == 0:
                    continue
                for j in range(k, n):
                    a[i][j] = a[i][j] - f * a[k][j]
        return det

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        a = [list(r) + [Scalar.of(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.data)]
        for k in range(n):
            p = next((i for i in range(k, n) if a[i][k].sign() != 0), None)
            if p is None:
                raise SingularMatrixError("matrix is singular")
            a[k], a[p] = a[p], a[k]
            inv = a[k][k].inverse()
            a[k] = [x * inv for x in a[k]]
            for i in range(n):
                if i == k or a[i][k].sign() == 0:
                    continue
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return Matrix([r[n:] for r in a])

    def solve(self, rhs: Sequence) -> tuple[Scalar, ...] | None:
        """Solve ``self @ x = rhs`` exactly; None when inconsistent.

        Works for tall matrices (rows >= cols) of full column rank, which is
        how basis-membership queries arrive.
        """
        m, n = self.rows, self.cols
        a = [list(r) + [Scalar.of(rhs[i])] for i, r in enumerate(self.data)]
        pivots: list[int] = []
        ri = 0
        for cj in range(n):
            p = next((i for i in range(ri, m) if a[i][cj].sign() != 0), None)
            if p is None:
                continue
            a[ri], a[p] = a[p], a[ri]
            inv = a[ri][cj].inverse()
            a[ri] = [x * inv for x in a[ri]]
            for i in range(m):
                if i == ri or a[i][cj].sign() == 0:
                    continue
                f = a[i][cj]
                a[i] = [x - f * y for x, y in zip(a[i], a[ri])]
            pivots.append(cj)
            ri += 1
        if len(pivots) < n:
            raise SingularMatrixError("basis matrix lacks full column rank")
        for i in range(ri, m):
            if a[i][n].sign() != 0:
                return None
        x = [Scalar(0)] * n
        for i, cj in enumerate(pivots):
            x[cj] = a[i][n]
        return tuple(x)

    def all_rational(self) -> bool:
        return all(x.is_rational for r in self.data for x in r)

    def denominator_lcm(self) -> int:
        """lcm of entry denominators; entries must be rational."""
        lcm = 1
        for r in self.data:
            for x in r:
                lcm = math.lcm(lcm, x.as_fraction().denominator)
        return lcm

    def to_int_rows(self) -> IntRows:
        out = []
        for r in self.data:
            row = []
            for x in r:
                f = x.as_fraction()
                if f.denominator != 1:
                    raise ValueError("matrix is not integral")
                row.append(f.numerator)
            out.append(row)
        return out

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix[{body}]"


def _dot(r: Sequence[Scalar], c: Sequence[Scalar]) -> Scalar:
    acc = r[0] * c[0]
    for x, y in zip(r[1:], c[1:]):
        acc = acc + x * y
    return acc


def is_positive_definite(g: Matrix) -> bool:
    """Exact PD test via leading principal minors."""
    if g.rows != g.cols or not g.is_symmetric():
        return False
    for k in range(1, g.rows + 1):
        minor = Matrix([r[:k] for r in g.data[:k]])
        if minor.det().sign() <= 0:
            return False
    return True


def frobenius_norm_sq(m: Matrix) -> Scalar:
    acc = Scalar(0)
    for r in m.data:
        for x in r:
            acc = acc + x * x
    return acc
