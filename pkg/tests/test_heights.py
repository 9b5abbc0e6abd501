import math
import random
from fractions import Fraction

import numpy as np
import pytest

from cyclat.heights import (FieldDescriptor, bounded_elements,
                            count_wr_classes, disk_count_bound,
                            similarity_count_bound, weil_height,
                            weil_height_via_quadratic)
from cyclat.scalars import Scalar

Q = FieldDescriptor.rationals()
ALPHA = Scalar(2, -1, 3)  # 2 - sqrt(3)


def mahler_oracle(coeffs):
    """Float Mahler measure via numpy roots (independent route)."""
    roots = np.roots(list(reversed(coeffs)))
    m = abs(coeffs[-1])
    for r in roots:
        m *= max(1.0, abs(r))
    return m


def test_rational_heights():
    assert weil_height(Scalar(Fraction(3, 2))).h_squared == Scalar(9)
    assert weil_height(Scalar(Fraction(3, 2))).lo == 3
    assert weil_height(Scalar(0)).lo == 1
    assert weil_height(Scalar(Fraction(1, 4))).lo == 4
    assert weil_height(Scalar(-7)).lo == 7


def test_height_two_minus_sqrt3():
    hv = weil_height(ALPHA)
    assert hv.h_squared == Scalar(2, 1, 3)  # h^2 = 2 + sqrt(3)
    assert hv.hi - hv.lo <= Fraction(1, 10**12)
    assert float(hv) == pytest.approx(math.sqrt(2 + math.sqrt(3)), rel=1e-12)


def test_height_sqrt5_minus_2():
    x = Scalar(-2, 1, 5)  # min poly x^2 + 4x - 1
    assert x.min_poly() == [-1, 4, 1]
    hv = weil_height(x)
    assert hv.h_squared == Scalar(2, 1, 5)
    assert float(hv) == pytest.approx(mahler_oracle([-1, 4, 1]) ** 0.5, rel=1e-9)


def test_height_against_mahler_oracle_random():
    rng = random.Random(41)
    n = 0
    while n < 100:
        a = rng.randint(1, 9)
        b = rng.randint(-9, 9)
        c = rng.randint(-9, 9)
        disc = b * b - 4 * a * c
        if disc <= 0 or math.isqrt(disc) ** 2 == disc:
            continue
        if math.gcd(a, math.gcd(b, c)) != 1:
            continue
        from cyclat.scalars import squarefree_decompose
        d, k = squarefree_decompose(disc)
        if d == 1:
            continue
        x = Scalar(Fraction(-b, 2 * a), Fraction(k, 2 * a), d)
        hv = weil_height(x)
        assert float(hv) ** 2 == pytest.approx(mahler_oracle([c, b, a]), rel=1e-9)
        n += 1


def test_height_symmetries():
    rng = random.Random(43)
    n = 0
    while n < 100:
        d = rng.choice([2, 3, 5, 6, 7, 10])
        x = Scalar(Fraction(rng.randint(-9, 9), rng.randint(1, 6)),
                   Fraction(rng.randint(-9, 9), rng.randint(1, 6)), d)
        if x.sign() == 0 or x.is_rational:
            continue
        h2 = weil_height(x).h_squared
        assert weil_height(-x).h_squared == h2
        assert weil_height(x.inverse()).h_squared == h2
        n += 1


def test_absoluteness_pathways():
    rng = random.Random(47)
    for _ in range(100):
        x = Scalar(Fraction(rng.randint(-30, 30), rng.randint(1, 30)))
        d = rng.choice([2, 3, 5])
        via_q = weil_height(x)
        via_k = weil_height_via_quadratic(x, FieldDescriptor.real_quadratic(d))
        assert via_k.h_squared == via_q.h_squared
        assert via_k.lo == via_q.lo and via_k.hi == via_q.hi


def farey_count_oracle(t):
    """Independent double loop over (p, q): 0 <= p/q <= 2 - sqrt(3),
    max(p, q) <= t, reduced; integer arithmetic only."""
    seen = set()
    for q in range(1, t + 1):
        for p in range(0, t + 1):
            if math.gcd(p, q) != 1:
                continue
            # p/q <= 2 - sqrt(3)  <=>  2q - p >= 0 and (2q - p)^2 >= 3 q^2
            if 2 * q - p < 0 or (2 * q - p) ** 2 < 3 * q * q:
                continue
            seen.add(Fraction(p, q))
    return len(seen)


def test_count_wr_classes_rational_small():
    count, bound = count_wr_classes(Q, 1)
    assert count == 1  # only x = 0
    # independent evaluation of the bound formula
    expect = (math.pi / (2 * math.sqrt(12))) * (1 + 256 * (2 + math.sqrt(3)))
    assert float(bound.lo) <= expect <= float(bound.hi)
    assert count_wr_classes(Q, 4)[0] == 2  # {0, 1/4}
    assert count_wr_classes(Q, 3)[0] == 1  # 1/3 > 2 - sqrt(3)


def test_count_matches_farey_oracle():
    prev = 0
    for t in range(1, 21):
        count, bound = count_wr_classes(Q, t)
        assert count == farey_count_oracle(t)
        assert count <= bound.hi
        assert count >= prev  # non-decreasing in the height bound
        prev = count


def test_count_quadratic_field():
    k2 = FieldDescriptor.real_quadratic(2)
    count, bound = count_wr_classes(k2, 1)
    assert count == 1  # only x = 0 has height 1 in range
    count2, _ = count_wr_classes(k2, 2)
    assert count2 >= count


def test_bounded_elements_examples():
    xs = bounded_elements(Q, ALPHA, 1, positive_only=True)
    assert xs == [Scalar(0)]
    xs = bounded_elements(Q, ALPHA, 4, positive_only=True)
    assert xs == [Scalar(0), Scalar(Fraction(1, 4))]


def test_bounded_elements_completeness_brute_force():
    # independent sweep over (p + q sqrt(d))/r: everything with small data,
    # height <= T and |x| <= alpha must be produced by the sieve
    for d in (2, 5):
        field = FieldDescriptor.real_quadratic(d)
        t = 3
        found = set(bounded_elements(field, ALPHA, t))
        for p in range(-6, 7):
            for q in range(-6, 7):
                for r in range(1, 5):
                    x = Scalar(Fraction(p, r), Fraction(q, r), d)
                    if abs(x).compare(ALPHA) > 0:
                        continue
                    h2 = weil_height(x).h_squared
                    if h2.compare(t * t) <= 0:
                        assert x in found, (p, q, r, d)


def test_bounded_elements_quadratic_contains_known():
    k5 = FieldDescriptor.real_quadratic(5)
    xs = bounded_elements(k5, ALPHA, 3, positive_only=True)
    # sqrt(5) - 2 has h = sqrt(2 + sqrt(5)) ~ 2.058 <= 3 and lies in range
    assert Scalar(-2, 1, 5) in xs
    assert Scalar(0) in xs


def test_lemma_bound_respected():
    for field in (Q, FieldDescriptor.real_quadratic(2),
                  FieldDescriptor.real_quadratic(5)):
        for t in (1, 2, 4):
            xs = bounded_elements(field, ALPHA, t, positive_only=False)
            halpha = weil_height(ALPHA).interval
            bound = disk_count_bound(field.degree, t, halpha)
            assert len(xs) <= bound.hi


def test_similarity_count_bound_scaling():
    b1 = similarity_count_bound(1, 1)
    b2 = similarity_count_bound(1, 2)
    # the T-dependent term scales by T^2 = 4
    t1 = float(b1.hi) - math.pi / (2 * math.sqrt(12))
    t2 = float(b2.hi) - math.pi / (2 * math.sqrt(12))
    assert t2 == pytest.approx(4 * t1, rel=1e-9)
    d2 = similarity_count_bound(2, 1)
    expect = (math.pi / (2 * math.sqrt(12))) * (1 + 4**6 * (2 + math.sqrt(3))**2)
    assert float(d2.lo) <= expect <= float(d2.hi)
