"""Lattices with exact bases: duals, membership, minima, roundness flags.

A lattice is stored as an ambient_dim x rank column basis of exact scalars.
Non-full-rank lattices are first class (A_n lives in R^{n+1}), so every
rank-sensitive operation is driven by the Gram matrix rather than by the
ambient coordinates.

Enumeration strategy: a floating-point Cholesky factorization of the Gram
matrix provides Fincke-Pohst search bounds (with a small safety slack), and
every candidate is then accepted or rejected by an exact comparison, so
results do not depend on rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import AmbientDimensionError, RankError, SingularMatrixError
from .linalg import Matrix, hnf, hnf_basis, smith_invariants
from .scalars import Scalar

Vec = tuple[Scalar, ...]
IntVec = tuple[int, ...]


class Lattice:
    """Free Z-module with an exact basis (columns, full column rank)."""

    __slots__ = ("ambient_dim", "rank", "_columns", "_gram")

    def __init__(self, columns: Sequence[Sequence], *, ambient_dim: int | None = None):
        cols = [tuple(Scalar.of(x) for x in c) for c in columns]
        if cols:
            ambient_dim = len(cols[0])
            if any(len(c) != ambient_dim for c in cols):
                raise ValueError("ragged basis")
        elif ambient_dim is None:
            raise ValueError("empty basis needs an explicit ambient dimension")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "rank", len(cols))
        object.__setattr__(self, "_columns", tuple(cols))
        object.__setattr__(self, "_gram", None)
        if cols and self.gram().det().sign() == 0:
            raise SingularMatrixError("basis columns are linearly dependent")

    def __setattr__(self, *_):
        raise AttributeError("Lattice is immutable")

    @staticmethod
    def integers(n: int) -> "Lattice":
        return Lattice([[int(i == j) for i in range(n)] for j in range(n)])

    @property
    def basis_columns(self) -> tuple[Vec, ...]:
        return self._columns

    def basis_matrix(self) -> Matrix:
        return Matrix.from_columns(self._columns)

    def gram(self) -> Matrix:
        if self._gram is None:
            b = self.basis_matrix()
            object.__setattr__(self, "_gram", b.transpose() @ b)
        return self._gram

    def vector(self, coords: Sequence[int]) -> Vec:
        out = [Scalar(0)] * self.ambient_dim
        for c, col in zip(coords, self._columns):
            if c:
                out = [acc + Scalar.of(c) * x for acc, x in zip(out, col)]
        return tuple(out)

    def scaled(self, s) -> "Lattice":
        s = Scalar.of(s)
        return Lattice([[x * s for x in c] for c in self._columns],
                       ambient_dim=self.ambient_dim)

    def denominator_scale(self) -> int:
        """lcm of basis-entry denominators (entries must be rational)."""
        lcm = 1
        for c in self._columns:
            for x in c:
                lcm = math.lcm(lcm, x.as_fraction().denominator)
        return lcm

    def is_integral(self) -> bool:
        return all(x.is_rational and x.as_fraction().denominator == 1
                   for c in self._columns for x in c)

    def int_columns(self) -> list[list[int]]:
        return [[int(x.as_fraction()) for x in c] for c in self._columns]

    def hnf_columns(self) -> list[list[int]]:
        """Canonical integer HNF basis; requires an integral lattice."""
        return hnf_basis(self.int_columns())

    def __repr__(self):
        return f"Lattice(ambient={self.ambient_dim}, rank={self.rank})"


# ---------------------------------------------------------------------------
# membership and containment
# ---------------------------------------------------------------------------

class Membership:
    """Reusable exact membership test for a fixed lattice."""

    def __init__(self, lat: Lattice):
        self.lat = lat
        self._int_mode = False
        if lat.rank and all(x.is_rational for c in lat.basis_columns for x in c):
            self.scale = lat.denominator_scale()
            cols = [[int(x.as_fraction() * self.scale) for x in c]
                    for c in lat.basis_columns]
            rows = [[c[i] for c in cols] for i in range(lat.ambient_dim)]
            h, _, rank = hnf(rows)
            self._h = h
            self._pivots = []
            j = 0
            for i in range(lat.ambient_dim):
                if j < rank and h[i][j] != 0:
                    self._pivots.append(i)
                    j += 1
            self._int_mode = True
        else:
            self._bm = lat.basis_matrix()

    def __contains__(self, vec: Sequence) -> bool:
        v = [Scalar.of(x) for x in vec]
        if len(v) != self.lat.ambient_dim:
            raise AmbientDimensionError("vector has wrong ambient dimension")
        if self._int_mode:
            w = []
            for x in v:
                if not x.is_rational:
                    return False
                f = x.as_fraction() * self.scale
                if f.denominator != 1:
                    return False
                w.append(int(f))
            return self._contains_int(w)
        sol = self._bm.solve(v)
        if sol is None:
            return False
        return all(x.is_rational and x.as_fraction().denominator == 1 for x in sol)

    def _contains_int(self, w: list[int]) -> bool:
        w = list(w)
        for j, pi in enumerate(self._pivots):
            q, r = divmod(w[pi], self._h[pi][j])
            if r:
                return False
            if q:
                for i in range(pi, len(w)):
                    w[i] -= q * self._h[i][j]
        return all(x == 0 for x in w)


def lattice_contains(outer: Lattice, inner: Lattice) -> bool:
    """True when every basis vector of ``inner`` lies in ``outer``."""
    if outer.ambient_dim != inner.ambient_dim:
        raise AmbientDimensionError("lattices live in different ambient spaces")
    mem = Membership(outer)
    return all(col in mem for col in inner.basis_columns)


def lattices_equal(a: Lattice, b: Lattice) -> bool:
    return a.rank == b.rank and lattice_contains(a, b) and lattice_contains(b, a)


def dual_lattice(lat: Lattice) -> Lattice:
    """Dual within the rational span: columns of B (B^T B)^{-1}."""
    b = lat.basis_matrix()
    dual = b @ lat.gram().inverse()
    return Lattice(dual.columns(), ambient_dim=lat.ambient_dim)


# ---------------------------------------------------------------------------
# Fincke-Pohst enumeration under the exact Gram form
# ---------------------------------------------------------------------------

def _float_cholesky_q(g: Matrix) -> tuple[list[float], list[list[float]]]:
    n = g.rows
    c = [[float(g[i, j]) for j in range(n)] for i in range(n)]
    q = [0.0] * n
    mu = [[0.0] * n for _ in range(n)]
    for i in range(n):
        q[i] = c[i][i]
        if q[i] <= 0.0:
            raise ArithmeticError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = c[i][j] / q[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                c[j][k] -= q[i] * mu[i][j] * mu[i][k]
    return q, mu


def _fp_box(q: list[float], mu: list[list[float]], bound: float):
    """Yield all integer vectors x != 0 with Q_float(x) <= bound.

    Both signs of each vector are produced; callers dedup as needed.
    """
    n = len(q)
    x = [0] * n
    budgets = [0.0] * n

    def rec(i: int):
        if i < 0:
            if any(x):
                yield tuple(x)
            return
        center = sum(mu[i][j] * x[j] for j in range(i + 1, n))
        budget = budgets[i + 1] if i + 1 < n else bound
        half = math.sqrt(max(budget, 0.0) / q[i]) if q[i] > 0 else 0.0
        lo = math.ceil(-center - half - 1e-9)
        hi = math.floor(-center + half + 1e-9)
        for xi in range(lo, hi + 1):
            x[i] = xi
            t = xi + center
            budgets[i] = budget - q[i] * t * t
            yield from rec(i - 1)
        x[i] = 0

    # budgets[i] = remaining budget after fixing coordinates i..n-1
    budgets = budgets + [bound]
    yield from rec(n - 1)


class _ExactForm:
    """Exact evaluation x^T G x, specialised to integer Grams when possible."""

    def __init__(self, g: Matrix):
        self.n = g.rows
        self._int = None
        if g.all_rational():
            den = g.denominator_lcm()
            self._int = [[int(g[i, j].as_fraction() * den) for j in range(g.rows)]
                         for i in range(g.rows)]
            self._den = den
        else:
            self._g = g

    def norm_sq(self, x: IntVec) -> Scalar:
        if self._int is not None:
            gi = self._int
            acc = 0
            for i in range(self.n):
                xi = x[i]
                if xi:
                    row = gi[i]
                    acc += xi * sum(row[j] * x[j] for j in range(self.n) if x[j])
            return Scalar(Fraction(acc, self._den))
        acc = Scalar(0)
        for i in range(self.n):
            if x[i]:
                for j in range(self.n):
                    if x[j]:
                        acc = acc + self._g[i, j] * (x[i] * x[j])
        return acc


def enumerate_below(gram: Matrix, bound: Scalar, *, keep_negations: bool = False
                    ) -> list[tuple[IntVec, Scalar]]:
    """All nonzero coordinate vectors with exact norm^2 <= bound.

    Output is sorted by (norm^2, lexicographic coordinates).  By default one
    representative per +-pair is returned (first nonzero coordinate > 0).
    """
    if gram.rows == 0:
        return []
    q, mu = _float_cholesky_q(gram)
    fbound = float(bound) * (1.0 + 1e-9) + 1e-9
    form = _ExactForm(gram)
    seen: dict[IntVec, Scalar] = {}
    for x in _fp_box(q, mu, fbound):
        first = next(v for v in x if v)
        if first < 0:
            continue
        if x in seen:
            continue
        nsq = form.norm_sq(x)
        if nsq.compare(bound) <= 0:
            seen[x] = nsq
    out = sorted(seen.items(), key=lambda kv: (_SortKey(kv[1]), kv[0]))
    if keep_negations:
        full = []
        for v, nsq in out:
            full.append((v, nsq))
            full.append((tuple(-c for c in v), nsq))
        out = sorted(full, key=lambda kv: (_SortKey(kv[1]), kv[0]))
    return out


class _SortKey:
    __slots__ = ("s",)

    def __init__(self, s: Scalar):
        self.s = s

    def __lt__(self, other):
        return self.s.compare(other.s) < 0

    def __eq__(self, other):
        return self.s == other.s


# ---------------------------------------------------------------------------
# minimal vectors and roundness flags
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MinimalVectorSet:
    min_norm_sq: Scalar
    vectors: tuple[IntVec, ...]  # closed under negation, in basis coordinates

    def half(self) -> list[IntVec]:
        return [v for v in self.vectors if next(c for c in v if c) > 0]

    @property
    def kissing_number(self) -> int:
        return len(self.vectors)


def minimal_vectors_of_gram(gram: Matrix) -> MinimalVectorSet:
    if gram.rows < 1:
        raise RankError("minimal vectors of a rank-zero lattice")
    diag_min = min((gram[i, i] for i in range(gram.rows)),
                   key=lambda s: _SortKey(s))
    cands = enumerate_below(gram, diag_min)
    mn = cands[0][1]
    for _, nsq in cands[1:]:
        if nsq.compare(mn) < 0:
            mn = nsq
    vecs = [v for v, nsq in cands if nsq == mn]
    full = sorted(vecs + [tuple(-c for c in v) for v in vecs])
    return MinimalVectorSet(mn, tuple(full))


def minimal_vectors(lat: Lattice) -> MinimalVectorSet:
    if lat.rank < 1:
        raise RankError("minimal vectors of a rank-zero lattice")
    return minimal_vectors_of_gram(lat.gram())


@dataclass(frozen=True)
class WrFlags:
    is_wr: bool
    generated_by_min: bool
    basis_of_min: bool


def _saturated(cols: list[IntVec]) -> bool:
    rows = [[c[i] for c in cols] for i in range(len(cols[0]))]
    invs = smith_invariants(rows)
    return len(invs) == len(cols) and all(v == 1 for v in invs)


def _has_unimodular_subset(half: list[IntVec], n: int) -> bool:
    """Search for n minimal vectors forming a basis.

    Any leading part of a basis generates a saturated sublattice, so the
    DFS may restrict itself to saturated partial selections; reaching depth
    n then certifies index one.
    """
    order = sorted(half)

    def extend(chosen: list[IntVec], start: int) -> bool:
        if len(chosen) == n:
            return True
        for idx in range(start, len(order)):
            cand = chosen + [order[idx]]
            if _saturated(cand) and extend(cand, idx + 1):
                return True
        return False

    return extend([], 0)


def wr_flags_of_gram(gram: Matrix) -> WrFlags:
    n = gram.rows
    mv = minimal_vectors_of_gram(gram)
    half = mv.half()
    rows = [[v[i] for v in half] for i in range(n)]
    h, _, rank = hnf(rows)
    is_wr = rank == n
    generated = is_wr and abs(math.prod(h[i][j] for j, i in _pivot_positions(h))) == 1
    basis = generated and _has_unimodular_subset(half, n)
    return WrFlags(is_wr, generated, basis)


def _pivot_positions(h: list[list[int]]):
    cols = len(h[0]) if h else 0
    j = 0
    for i in range(len(h)):
        if j == cols:
            break
        if h[i][j] != 0:
            yield j, i
            j += 1


def wr_flags(lat: Lattice) -> WrFlags:
    if lat.rank < 1:
        raise RankError("well-roundedness of a rank-zero lattice")
    return wr_flags_of_gram(lat.gram())


def semistable_rank2(lat: Lattice) -> bool:
    """det(L)^(1/2) <= |L| for rank two, decided via det(G) <= min^4."""
    if lat.rank != 2:
        raise RankError("semistable_rank2 needs a rank-2 lattice")
    mn = minimal_vectors(lat).min_norm_sq
    return lat.gram().det().compare(mn * mn) <= 0


def rank1_semistability_necessary(lat: Lattice) -> bool:
    """Necessary condition det(L)^(1/n) <= |v| over rank-1 sublattices."""
    mn = minimal_vectors(lat).min_norm_sq
    return lat.gram().det().compare(mn ** lat.rank) <= 0


# ---------------------------------------------------------------------------
# basis angles
# ---------------------------------------------------------------------------

def angle_profile(columns: Sequence[Sequence]) -> list[Scalar]:
    """Exact sin^2 of the angle between b_{i+1} and span(b_1..b_i).

    Computed from ratios of leading principal minors of the Gram matrix:
    ||b*_k||^2 = det(G_k)/det(G_{k-1}).
    """
    b = Matrix.from_columns(columns)
    g = b.transpose() @ b
    n = g.rows
    minors = [Scalar(1)]
    for k in range(1, n + 1):
        minors.append(Matrix([r[:k] for r in g.data[:k]]).det())
    if any(m.sign() == 0 for m in minors[1:]):
        raise SingularMatrixError("basis vectors are linearly dependent")
    out = []
    for i in range(1, n):
        out.append(minors[i + 1] / minors[i] / g[i, i])
    return out


def is_weakly_nearly_orthogonal(columns: Sequence[Sequence]) -> bool:
    threshold = Fraction(3, 4)
    return all(s.compare(threshold) >= 0 for s in angle_profile(columns))


def is_nearly_orthogonal(lat: Lattice) -> bool:
    """Every ordering of the basis is weakly nearly-orthogonal (rank <= 8).

    The angle contributed by appending v to a prefix depends only on the
    *set* S of earlier vectors: sin^2 = det G(S+v) / (det G(S) ||v||^2).
    So instead of n! orderings it suffices to check every (subset, vector)
    extension, with one Gram minor per subset.
    """
    if lat.rank > 8:
        raise RankError("nearly-orthogonal check limited to rank <= 8")
    n = lat.rank
    g = lat.gram()
    dets: dict[frozenset[int], Scalar] = {frozenset(): Scalar(1)}
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            idx = list(subset)
            sub = Matrix([[g[i, j] for j in idx] for i in idx])
            dets[frozenset(subset)] = sub.det()
    threshold = Fraction(3, 4)
    for subset, det_s in dets.items():
        if len(subset) in (0, n):
            continue
        for v in range(n):
            if v in subset:
                continue
            det_sv = dets[subset | {v}]
            sin_sq = det_sv / (det_s * g[v, v])
            if sin_sq.compare(threshold) < 0:
                return False
    return True
