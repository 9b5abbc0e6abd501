"""Trace-form lattices of Galois number fields (quadratic and cyclotomic).

The ring of integers with the pairing <a, b> = Tr(a * conj(b)) is a
positive definite integer lattice; everything here is driven by that Gram
matrix together with the Galois action written as integer matrices on the
integral basis.  No analytic embedding is ever materialized: cyclicity of
the lattice reduces to cyclicity of the Galois group, the rotation action
corresponding to a generator, and all geometric predicates (minima, WR
flags) are Gram-expressible.

Supported fields: Q(sqrt(D)) for squarefree D != 0, 1 (either sign), with
integral basis {1, sqrt(D)} or {1, (1+sqrt(D))/2} as D mod 4 dictates, and
Q(zeta_n) for n >= 3 on the power basis.  Cyclotomic traces are power sums
of the roots of the n-th cyclotomic polynomial (Newton's identities), with
conjugation acting as zeta -> zeta^{n-1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotCyclicError, ScaleLimitError, UnsupportedFieldError
from .lattice import (MinimalVectorSet, WrFlags, enumerate_below,
                      minimal_vectors_of_gram, wr_flags_of_gram)
from .linalg import Matrix, det_int, is_positive_definite
from .polys import (cyclotomic_polynomial, euler_phi, poly_mod, power_sums)
from .scalars import Scalar, is_squarefree


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "quadratic" | "cyclotomic"
    param: int  # D, or the cyclotomic modulus n

    def __post_init__(self):
        if self.kind == "quadratic":
            if self.param in (0, 1) or not is_squarefree(self.param):
                raise UnsupportedFieldError(
                    f"quadratic field needs squarefree D != 0, 1; got {self.param}")
        elif self.kind == "cyclotomic":
            if self.param < 3:
                raise UnsupportedFieldError("cyclotomic modulus must be >= 3")
        else:
            raise UnsupportedFieldError(f"unsupported field kind {self.kind!r}")

    @property
    def degree(self) -> int:
        return 2 if self.kind == "quadratic" else euler_phi(self.param)

    @property
    def label(self) -> str:
        if self.kind == "quadratic":
            return f"Q(sqrt({self.param}))"
        return f"Q(zeta_{self.param})"

    @property
    def basis_labels(self) -> tuple[str, ...]:
        if self.kind == "quadratic":
            d = self.param
            omega = "(1+sqrt(D))/2" if d % 4 == 1 else "sqrt(D)"
            return ("1", omega.replace("D", str(d)))
        return tuple(f"zeta^{i}" for i in range(self.degree))

    @staticmethod
    def quadratic(d: int) -> "FieldSpec":
        return FieldSpec("quadratic", d)

    @staticmethod
    def cyclotomic(n: int) -> "FieldSpec":
        return FieldSpec("cyclotomic", n)


def field_discriminant(spec: FieldSpec) -> int:
    """Classical discriminant formulas, computed independently of the Gram."""
    if spec.kind == "quadratic":
        d = spec.param
        return d if d % 4 == 1 else 4 * d
    n = spec.param
    phi = spec.degree
    num = n ** phi
    for p in _prime_divisors(n):
        num //= p ** (phi // (p - 1))
    sign = -1 if phi % 4 == 2 else 1  # (-1)^(phi/2)
    return sign * num


def _prime_divisors(n: int) -> list[int]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


@dataclass(frozen=True)
class TraceLattice:
    spec: FieldSpec
    gram: Matrix                      # integer, symmetric, positive definite
    galois: tuple[Matrix, ...]        # regular action on the integral basis

    def __post_init__(self):
        if not self.gram.is_symmetric() or not is_positive_definite(self.gram):
            raise AssertionError("trace form must be symmetric positive definite")
        expected = abs(field_discriminant(self.spec))
        if self.gram.det() != Scalar(expected):
            raise AssertionError(
                f"trace Gram determinant {self.gram.det()} != |disc| {expected}")
        g = self.gram
        for m in self.galois:
            if (m.transpose() @ g) @ m != g:
                raise AssertionError("Galois matrix is not a Gram isometry")


@lru_cache(maxsize=None)
def _cyclotomic_traces(n: int) -> tuple[int, ...]:
    phi = list(cyclotomic_polynomial(n))
    return tuple(power_sums(phi, n))


def trace_gram(spec: FieldSpec) -> TraceLattice:
    """Integer Gram of Tr(a * conj(b)) on the integral basis, bundled with
    the verified Galois matrices."""
    if spec.kind == "quadratic":
        d = spec.param
        if d % 4 == 1:
            tr, nrm = 1, Fraction(1 - d, 4)  # omega = (1 + sqrt(d))/2
        else:
            tr, nrm = 0, Fraction(-d)
        if d > 0:
            g = Matrix([[2, tr], [tr, tr * tr - 2 * nrm]])
        else:
            g = Matrix([[2, tr], [tr, 2 * nrm]])
        return TraceLattice(spec, g, galois_matrices(spec))
    n = spec.param
    dsize = spec.degree
    p = _cyclotomic_traces(n)
    g = Matrix([[p[(a - b) % n] for b in range(dsize)] for a in range(dsize)])
    return TraceLattice(spec, g, galois_matrices(spec))


def _units(n: int) -> list[int]:
    return [a for a in range(1, n) if math.gcd(a, n) == 1]


def galois_matrices(spec: FieldSpec) -> tuple[Matrix, ...]:
    """Regular representation of Gal(K/Q) on the integral basis, identity
    first, then in a deterministic order."""
    if spec.kind == "quadratic":
        ident = Matrix.identity(2)
        if spec.param % 4 == 1:
            sigma = Matrix([[1, 1], [0, -1]])   # omega -> 1 - omega
        else:
            sigma = Matrix([[1, 0], [0, -1]])   # sqrt(D) -> -sqrt(D)
        return (ident, sigma)
    n = spec.param
    d = spec.degree
    phi = list(cyclotomic_polynomial(n))
    mats = []
    for a in _units(n):
        cols = []
        for i in range(d):
            power = [0] * ((a * i) % n) + [1]
            rem = poly_mod(power, phi)
            rem = list(rem) + [0] * (d - len(rem))
            cols.append([int(c) for c in rem])
        mats.append(Matrix.from_columns(cols))
    return tuple(mats)


def _matrix_order(m: Matrix, cap: int) -> int:
    acc = m
    ident = Matrix.identity(m.rows)
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = acc @ m
    raise ArithmeticError("element order exceeds the group order")


def is_galois_cyclic(spec: FieldSpec) -> tuple[bool, int | None]:
    """Group cyclicity from element orders; returns a generator index into
    :func:`galois_matrices` when the group is cyclic."""
    mats = galois_matrices(spec)
    d = spec.degree
    for idx, m in enumerate(mats):
        if _matrix_order(m, d) == d:
            return True, idx
    return False, None


def embedding_exponents(degree: int) -> list[int]:
    """Exponents e_j with sigma_j = sigma^(e_j) in the rotation-compatible
    ordering: e_j = d - j + 1 reduced mod d (so sigma_1 is the identity)."""
    return [(degree - j + 1) % degree for j in range(1, degree + 1)]


def is_tamely_ramified(spec: FieldSpec) -> bool:
    """Quadratic: D = 1 mod 4; cyclotomic: squarefree modulus."""
    if spec.kind == "quadratic":
        return spec.param % 4 == 1
    return is_squarefree(spec.param)


@dataclass(frozen=True)
class NormalBasisCertificate:
    theta: tuple[int, ...]        # coordinates on the integral basis
    orbit_matrix: Matrix          # columns sigma^j(theta); |det| = 1
    generator_index: int


def normal_integral_basis_search(spec: FieldSpec, norm_sq_bound=None
                                 ) -> NormalBasisCertificate | None:
    """Bounded search for theta whose Galois orbit is a Z-basis.

    Canonical candidates (zeta for cyclotomic fields, (1+sqrt(D))/2 for
    D = 1 mod 4) are tried first, then lattice vectors by trace norm.
    Returns None when the bound is exhausted.
    """
    cyclic, gen_idx = is_galois_cyclic(spec)
    if not cyclic:
        raise NotCyclicError("normal-basis search needs a cyclic Galois group")
    lat = trace_gram(spec)
    d = spec.degree
    sigma = lat.galois[gen_idx]
    if norm_sq_bound is None:
        maxdiag = max(int(lat.gram[i, i].as_fraction()) for i in range(d))
        norm_sq_bound = 2 * d * maxdiag

    sigma_rows = sigma.to_int_rows()

    def orbit_det(theta: tuple[int, ...]) -> Matrix | None:
        cols = [theta]
        v = list(theta)
        for _ in range(d - 1):
            v = [sum(row[j] * v[j] for j in range(d) if v[j])
                 for row in sigma_rows]
            cols.append(tuple(v))
        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        if abs(det_int(rows)) == 1:
            return Matrix.from_columns(cols)
        return None

    seeds: list[tuple[int, ...]] = []
    if spec.kind == "cyclotomic":
        seeds.append(tuple(int(i == 1) for i in range(d)))
    elif spec.param % 4 == 1:
        seeds.append((0, 1))

    def candidates():
        # seeds first; the (large) norm-ordered sweep only runs if they fail
        yield from seeds
        for v, _ in enumerate_below(lat.gram, Scalar.of(norm_sq_bound)):
            yield v

    seen = set()
    for theta in candidates():
        key = min(theta, tuple(-x for x in theta))
        if key in seen:
            continue
        seen.add(key)
        orbit = orbit_det(tuple(theta))
        if orbit is not None:
            return NormalBasisCertificate(tuple(theta), orbit, gen_idx)
    return None


@dataclass(frozen=True)
class TraceLatticeReport:
    spec: FieldSpec
    degree: int
    det_gram: int
    cyclic: bool
    generator_index: int | None
    embedding_order: tuple[int, ...] | None
    tame: bool
    simple: bool
    nib: NormalBasisCertificate | None
    wr: WrFlags
    minima: MinimalVectorSet
    semistable_rank2: bool | None  # degree-2 lattices only


MAX_REPORT_DEGREE = 16


def trace_lattice_report(spec: FieldSpec) -> TraceLatticeReport:
    """Classification record for one field; raises a hard error if the
    bounded normal-basis search disagrees with the tame+cyclic criterion."""
    if spec.degree > MAX_REPORT_DEGREE:
        raise ScaleLimitError(
            f"report limited to degree <= {MAX_REPORT_DEGREE}")
    lat = trace_gram(spec)
    cyclic, gen_idx = is_galois_cyclic(spec)
    tame = is_tamely_ramified(spec)
    nib = normal_integral_basis_search(spec) if cyclic else None
    if cyclic and (nib is not None) != (tame and cyclic):
        raise AssertionError(
            f"{spec.label}: normal-basis search ({nib is not None}) "
            f"contradicts the tame-ramification criterion ({tame})")
    mv = minimal_vectors_of_gram(lat.gram)
    flags = wr_flags_of_gram(lat.gram)
    semi = None
    if spec.degree == 2:
        semi = lat.gram.det().compare(mv.min_norm_sq * mv.min_norm_sq) <= 0
    return TraceLatticeReport(
        spec=spec,
        degree=spec.degree,
        det_gram=int(lat.gram.det().as_fraction()),
        cyclic=cyclic,
        generator_index=gen_idx,
        embedding_order=tuple(embedding_exponents(spec.degree)) if cyclic else None,
        tame=tame,
        simple=cyclic and tame,
        nib=nib,
        wr=flags,
        minima=mv,
        semistable_rank2=semi,
    )
