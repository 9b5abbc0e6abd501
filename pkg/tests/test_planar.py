import random
from fractions import Fraction

import pytest

from cyclat.errors import NotWellRoundedError, SingularMatrixError
from cyclat.lattice import Lattice, lattices_equal, minimal_vectors
from cyclat.linalg import Matrix
from cyclat.planar import (TWO_MINUS_SQRT3, SimilarityClass, arithmetic_wr,
                           canonical_x, class_height, cyclic_approximation,
                           lagrange_reduce, similar_wr)
from cyclat.scalars import Scalar

HALF = Fraction(1, 2)
HEX = Lattice([[1, 0], [HALF, Scalar(0, HALF, 3)]])


def M(x) -> Lattice:
    return Lattice([[1, x], [x, 1]])


def _norm_sq(v):
    acc = v[0] * v[0]
    for c in v[1:]:
        acc = acc + c * c
    return acc


def test_lagrange_reduce_to_z2():
    a1, a2 = lagrange_reduce(Lattice([[1, 0], [10, 1]]))
    assert _norm_sq(a1) == Scalar(1) and _norm_sq(a2) == Scalar(1)


def test_lagrange_reduce_hexagonal_fixed():
    a1, a2 = lagrange_reduce(HEX)
    assert _norm_sq(a1) == Scalar(1) and _norm_sq(a2) == Scalar(1)


def test_lagrange_reduce_finds_short_vector():
    lat = Lattice([[3, 2], [2, 3]])
    a1, a2 = lagrange_reduce(lat)
    assert _norm_sq(a1) == Scalar(2)  # +-(1, -1)
    assert abs(a1[0]) == Scalar(1) and abs(a1[1]) == Scalar(1)
    assert lattices_equal(lat, Lattice([a1, a2]))


def test_lagrange_invariants_random():
    rng = random.Random(101)
    for _ in range(200):
        while True:
            cols = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                     for _ in range(2)] for _ in range(2)]
            try:
                lat = Lattice(cols)
                break
            except Exception:
                continue
        a1, a2 = lagrange_reduce(lat)
        assert lattices_equal(lat, Lattice([a1, a2]))
        n1, n2 = _norm_sq(a1), _norm_sq(a2)
        assert n1.compare(n2) <= 0
        assert n1 == minimal_vectors(lat).min_norm_sq
        ip = a1[0] * a2[0] + a1[1] * a2[1]
        assert (2 * abs(ip)).compare(n1) <= 0


def test_cyclic_approximation_identity():
    lat = cyclic_approximation(Matrix.identity(2))
    assert lattices_equal(lat, Lattice.integers(2))


def test_cyclic_approximation_sign_flip_case():
    lat = cyclic_approximation(Matrix([[1, 2], [3, 4]]))
    # trace 5 = offsum 5 is singular; after flipping the second column the
    # average circulant is (1/2) [[-3, 1], [1, -3]]
    expect = Lattice([[Fraction(-3, 2), HALF], [HALF, Fraction(-3, 2)]])
    assert lattices_equal(lat, expect)
    with pytest.raises(SingularMatrixError):
        cyclic_approximation(Matrix([[1, 1], [1, 1]]))


def test_cyclic_approximation_similar_for_minimal_basis():
    a1, a2 = lagrange_reduce(HEX)
    approx = cyclic_approximation(Matrix.from_columns([a1, a2]))
    assert similar_wr(approx, HEX)


def test_canonical_x_z2():
    cls = canonical_x(Lattice.integers(2))
    assert cls.x == Scalar(0)
    assert cls.field == "Q"


def test_canonical_x_hexagonal():
    cls = canonical_x(HEX)
    assert cls.x == TWO_MINUS_SQRT3
    assert cls.field == "Q(sqrt(3))"


def test_canonical_x_over_sqrt5():
    s5 = Scalar(0, Fraction(1, 5), 5)  # 1/sqrt(5) = sqrt(5)/5
    lat = Lattice([[1, 0], [s5, 2 * s5]])
    cls = canonical_x(lat)
    assert cls.x == Scalar(-2, 1, 5)  # sqrt(5) - 2 = 1/(2 + sqrt(5))


def test_canonical_x_rejects_non_wr():
    with pytest.raises(NotWellRoundedError):
        canonical_x(Lattice([[1, 0], [0, 2]]))
    with pytest.raises(NotWellRoundedError):
        canonical_x(Lattice([[3, 2], [2, 3]]))  # S(L) = {+-(1,-1)} has rank 1


def test_mx_lattices():
    assert canonical_x(M(Fraction(1, 5))).x == Scalar(Fraction(1, 5))
    assert canonical_x(M(5)).x == Scalar(Fraction(1, 5))
    assert similar_wr(M(Fraction(1, 5)), M(5))
    assert not similar_wr(Lattice.integers(2), HEX)


def test_mx_equivalence_orbit():
    # M(x) ~ M(y) exactly when y in {x, -x, 1/x, -1/x}
    xs = [Fraction(1, 7), Fraction(2, 9), Fraction(1, 4)]
    for x in xs:
        base = canonical_x(M(x)).x
        for y, same in [(x, True), (-x, True), (1 / x, True), (-1 / x, True),
                        (x / 2, False)]:
            try:
                other = canonical_x(M(y)).x
            except NotWellRoundedError:
                assert not same
                continue
            assert (other == base) == same


def test_similarity_invariance_rational_transforms():
    rng = random.Random(103)
    lat = M(Fraction(1, 5))
    base = canonical_x(lat).x
    # positive rational scaling, Pythagorean rotation, unimodular change
    rot = Matrix([[Fraction(3, 5), Fraction(-4, 5)],
                  [Fraction(4, 5), Fraction(3, 5)]])
    cols = (rot @ lat.basis_matrix()).columns()
    assert canonical_x(Lattice(cols)).x == base
    assert canonical_x(lat.scaled(Fraction(7, 3))).x == base
    u = Matrix([[1, 4], [0, 1]])
    assert canonical_x(Lattice((lat.basis_matrix() @ u).columns())).x == base
    refl = Matrix([[1, 0], [0, -1]])
    assert canonical_x(Lattice((refl @ lat.basis_matrix()).columns())).x == base


def test_arithmetic_wr():
    lat, x = arithmetic_wr(0, 1)
    assert x == Scalar(0)
    lat, x = arithmetic_wr(1, 2)
    assert x == TWO_MINUS_SQRT3
    assert canonical_x(lat).x == x
    lat, x = arithmetic_wr(1, 3)
    assert x == Scalar(3, -2, 2)  # 1/(sqrt(8) + 3) = 3 - 2 sqrt(2)
    assert canonical_x(lat).x == x
    lat, x = arithmetic_wr(5, 13)  # 13^2 - 5^2 = 144, rational lattice
    assert x == Scalar(Fraction(1, 5))
    assert canonical_x(lat).x == x
    with pytest.raises(ValueError):
        arithmetic_wr(3, 5)  # violates a <= b/2
    with pytest.raises(ValueError):
        arithmetic_wr(2, 4)  # not coprime


def test_class_height():
    assert class_height(SimilarityClass("Q", Scalar(0))).lo == 1
    hv = class_height(canonical_x(HEX))
    assert hv.h_squared == Scalar(2, 1, 3)
    assert class_height(SimilarityClass("Q", Scalar(Fraction(1, 4)))).lo == 4


def test_similarity_class_range_check():
    with pytest.raises(ValueError):
        SimilarityClass("Q", Scalar(Fraction(1, 2)))  # > 2 - sqrt(3)
    with pytest.raises(ValueError):
        SimilarityClass("Q", Scalar(-1))
