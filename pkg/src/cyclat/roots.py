"""The irreducible root lattices A_n, D_n, E6, E7, E8, their duals, and
machine-checked reports of their cyclic behaviour.

A_n is the zero-sum sublattice of Z^{n+1} (rank n, non-full ambient rank);
D_n is the even-sum sublattice of Z^n; E8 = D8 + Z * (1/2, ..., 1/2); E7
and E6 are the sublattices of E8 orthogonal to e7 + e8 and to the pair
{e7 + e8, e6 + e8}.  Grams and kissing numbers are verified, not assumed.
Half-integer lattices are searched after clearing denominators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclic import CyclicCertificate, is_cyclic, rotate, simple_cyclic_search
from .errors import ScaleLimitError
from .lattice import (Lattice, Membership, dual_lattice, minimal_vectors)
from .linalg import hnf_basis, kernel_basis
from .scalars import Scalar

# generator-search radii used by the report (squared norms, unscaled)
SEARCH_BOUND_DEFAULT = 8
SEARCH_BOUND_E8 = 4


@dataclass(frozen=True)
class RootLatticeId:
    family: str  # "A" | "D" | "E"
    n: int
    dual: bool = False

    def __post_init__(self):
        if self.family in ("A", "D"):
            if self.n < 2:
                raise ValueError(f"{self.family}_n needs n >= 2")
        elif self.family == "E":
            if self.n not in (6, 7, 8):
                raise ValueError("E_n exists for n in {6, 7, 8}")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def label(self) -> str:
        return f"{self.family}{self.n}{'*' if self.dual else ''}"


def _a_n(n: int) -> Lattice:
    cols = [[int(i == j) - int(i == j + 1) for i in range(n + 1)]
            for j in range(n)]
    return Lattice(cols)


def _d_n(n: int) -> Lattice:
    cols = [[int(i == j) - int(i == j + 1) for i in range(n)]
            for j in range(n - 1)]
    cols.append([int(i >= n - 2) for i in range(n)])  # e_{n-1} + e_n
    return Lattice(cols)


def _e8() -> Lattice:
    # work at scale 2: generators of 2*E8 are 2*D8 plus the all-ones vector
    cols = [[2 * int(x.as_fraction()) for x in col]
            for col in _d_n(8).basis_columns]
    cols.append([1] * 8)
    basis = hnf_basis(cols)
    return Lattice(basis).scaled(Fraction(1, 2))


def _orthogonal_sublattice(amb: Lattice, normals: list[list[int]]) -> Lattice:
    """Sublattice of ``amb`` orthogonal to the given ambient vectors."""
    rows = []
    for w in normals:
        row = []
        for col in amb.basis_columns:
            acc = Scalar(0)
            for wi, x in zip(w, col):
                acc = acc + x * wi
            row.append(acc.as_fraction())
        den = math.lcm(*[f.denominator for f in row])
        rows.append([int(f * den) for f in row])
    ker = kernel_basis(rows)
    cols = []
    for k in ker:
        vec = [Scalar(0)] * amb.ambient_dim
        for coef, col in zip(k, amb.basis_columns):
            vec = [acc + coef * x for acc, x in zip(vec, col)]
        cols.append(vec)
    return Lattice(cols, ambient_dim=amb.ambient_dim)


def build(rid: RootLatticeId) -> Lattice:
    if rid.family == "A":
        lat = _a_n(rid.n)
    elif rid.family == "D":
        lat = _d_n(rid.n)
    elif rid.n == 8:
        lat = _e8()
    elif rid.n == 7:
        lat = _orthogonal_sublattice(_e8(), [_e_unit(7)])
    else:
        lat = _orthogonal_sublattice(_e8(), [_e_unit(7), _e_unit(6)])
    return dual_lattice(lat) if rid.dual else lat


def _e_unit(k: int) -> list[int]:
    # e_k + e_8 in 1-based labels
    v = [0] * 8
    v[k - 1] = 1
    v[7] += 1
    return v


EXPECTED_GRAM_DET = {"A": lambda n: n + 1, "D": lambda n: 4,
                     "E": {6: 3, 7: 2, 8: 1}}


def expected_gram_det(rid: RootLatticeId) -> Fraction:
    base = EXPECTED_GRAM_DET[rid.family]
    d = Fraction(base(rid.n) if callable(base) else base[rid.n])
    return 1 / d if rid.dual else d


@dataclass(frozen=True)
class RootReportRow:
    id: RootLatticeId
    det_gram: Scalar
    kissing: int
    min_norm_sq: Scalar
    cyclic: bool
    simple_status: str        # "simple" | "none_within_bound" | "not_cyclic"
    certificate: CyclicCertificate | None
    search_bound: int


_SEEDS = {
    "A": lambda n: [(1, -1) + (0,) * (n - 1)],
    "D": lambda n: [(1, 1) + (0,) * (n - 2)] if n % 2 else [],
}


def report_row(rid: RootLatticeId) -> RootReportRow:
    lat = build(rid)
    det = lat.gram().det()
    if det != Scalar(expected_gram_det(rid)):
        raise AssertionError(f"{rid.label}: unexpected Gram determinant {det}")
    mv = minimal_vectors(lat)
    cyclic = is_cyclic(lat)
    bound = SEARCH_BOUND_E8 if (rid.family, rid.n) == ("E", 8) \
        else SEARCH_BOUND_DEFAULT
    cert = None
    if cyclic:
        seeds = [] if rid.dual else _SEEDS.get(rid.family, lambda n: [])(rid.n)
        cert = simple_cyclic_search(lat, bound, seeds=seeds)
        status = "simple" if cert else "none_within_bound"
    else:
        status = "not_cyclic"
    return RootReportRow(rid, det, mv.kissing_number, mv.min_norm_sq,
                         cyclic, status, cert, bound)


def root_report(max_n: int) -> list[RootReportRow]:
    """Rows for every A_n, D_n (2 <= n <= max_n), the exceptional lattices
    with n <= max_n, and all their duals; deterministic order."""
    if max_n > 8:
        raise ScaleLimitError("root report limited to n <= 8")
    ids = []
    for n in range(2, max_n + 1):
        ids.append(RootLatticeId("A", n))
        ids.append(RootLatticeId("A", n, dual=True))
    for n in range(2, max_n + 1):
        ids.append(RootLatticeId("D", n))
        ids.append(RootLatticeId("D", n, dual=True))
    for n in (6, 7, 8):
        if n <= max_n:
            ids.append(RootLatticeId("E", n))
            ids.append(RootLatticeId("E", n, dual=True))
    return [report_row(rid) for rid in ids]


def e_series_witness() -> dict[str, bool]:
    """The explicit non-cyclicity witness x = e4 + e5: it lies in both E6
    and E7, its rotation leaves E6, and its second rotation leaves E7."""
    e6 = build(RootLatticeId("E", 6))
    e7 = build(RootLatticeId("E", 7))
    x = tuple([0, 0, 0, 1, 1, 0, 0, 0])
    m6, m7 = Membership(e6), Membership(e7)
    return {
        "in_e6": x in m6,
        "in_e7": x in m7,
        "rho_in_e6": rotate(x) in m6,
        "rho2_in_e7": rotate(rotate(x)) in m7,
    }
