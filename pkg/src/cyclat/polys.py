"""Integer polynomial helpers: cyclotomics, gcds, power sums.

Polynomials are coefficient lists, low degree first.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_divmod_exact(p: list[int], q: list[int]) -> tuple[list[int], list[int]]:
    """Division with remainder over Q, asserting integer quotient steps are
    not required; used where q is monic (or divides exactly)."""
    p = [Fraction(c) for c in poly_trim(list(p))]
    q = [Fraction(c) for c in poly_trim(list(q))]
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        factor = p[-1] / q[-1]
        quot[shift] = factor
        for i, c in enumerate(q):
            p[i + shift] -= factor * c
        p = poly_trim(p)
    return ([_as_int(c) for c in quot], [_as_int(c) for c in p])


def _as_int(c: Fraction):
    return int(c) if c.denominator == 1 else c


def poly_mod(p: list, q: list) -> list:
    return poly_divmod_exact(p, q)[1]


def content(p: list[int]) -> int:
    return math.gcd(*[abs(c) for c in p]) if p else 0


def primitive(p: list[int]) -> list[int]:
    c = content(p)
    return [x // c for x in p] if c else list(p)


def poly_gcd_rational(p: list[int], q: list[int]) -> list[int]:
    """Primitive gcd over Q[x] (monic-normalized then made integral)."""
    a = [Fraction(c) for c in poly_trim(list(p))]
    b = [Fraction(c) for c in poly_trim(list(q))]
    while b:
        _, r = _frac_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    a = [c / lead for c in a]
    den = math.lcm(*[c.denominator for c in a])
    return primitive([int(c * den) for c in a])


def _frac_divmod(p: list[Fraction], q: list[Fraction]):
    p = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(p) >= len(q) and poly_trim(p):
        p = poly_trim(p)
        if len(p) < len(q):
            break
        shift = len(p) - len(q)
        factor = p[-1] / q[-1]
        quot[shift] = factor
        for i, c in enumerate(q):
            p[i + shift] -= factor * c
        p[-1] = Fraction(0)
    return quot, poly_trim(p)


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def moebius(n: int) -> int:
    if n == 1:
        return 1
    m = n
    k = 0
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            k += 1
        p += 1
    if m > 1:
        k += 1
    return -1 if k % 2 else 1


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, low degree first, by exact division of
    x^n - 1 by the smaller cyclotomic factors."""
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        quot, rem = poly_divmod_exact(num, list(cyclotomic_polynomial(d)))
        if rem:
            raise ArithmeticError("cyclotomic division left a remainder")
        num = quot
    return tuple(int(c) for c in num)


def power_sums(monic: list[int], count: int) -> list[int]:
    """Power sums p_k = sum(root^k) of a monic integer polynomial via
    Newton's identities, for k = 0..count-1."""
    d = len(monic) - 1
    if monic[-1] != 1:
        raise ValueError("monic polynomial required")
    # e[i] holds the coefficient of x^(d-i), i.e. (-1)^i * elementary symmetric
    a = [monic[d - i] for i in range(d + 1)]
    p = [d]
    for k in range(1, count):
        if k <= d:
            acc = -k * a[k]
            for i in range(1, k):
                acc -= a[i] * p[k - i]
        else:
            acc = 0
            for i in range(1, d + 1):
                acc -= a[i] * p[k - i]
        p.append(acc)
    return p
