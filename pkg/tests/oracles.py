"""Slow, independent reference implementations used to check the library.

Nothing here imports twistrank; each routine is the most literal version of
its definition.
"""
from __future__ import annotations

import cmath
import math


def trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, math.isqrt(n) + 1))


def euler_legendre(a: int, p: int) -> int:
    """(a/p) for an odd prime p by Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def kronecker_literal(D: int, n: int) -> int:
    """Kronecker symbol from its definition: multiplicative over the factors of n."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    out = 1
    if n < 0:
        n = -n
        if D < 0:
            out = -out
    for p, e in trial_factor(n):
        if p == 2:
            if D % 2 == 0:
                v = 0
            else:
                v = 1 if D % 8 in (1, 7) else -1
        else:
            v = euler_legendre(D, p)
        out *= v**e
    return out


def phi_count(n: int) -> int:
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def squarefree(n: int) -> bool:
    return all(e == 1 for _, e in trial_factor(abs(n)))


def field_discriminant(m: int) -> int:
    s = 1 if m > 0 else -1
    for p, e in trial_factor(abs(m)):
        if e % 2:
            s *= p
    return s if s % 4 == 1 else 4 * s


def reduced_forms(d: int) -> list[tuple[int, int, int]]:
    """Every reduced primitive form of discriminant d < 0, by scanning a, b."""
    out = []
    a = 1
    while 3 * a * a <= -d:
        for b in range(-a + 1, a + 1):
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                out.append((a, b, c))
        a += 1
    return out


def gauss_sum_direct(values, f: int) -> complex:
    return sum(values[a % f] * cmath.exp(2j * math.pi * a / f) for a in range(f))


def projective_points(a: int, b: int, p: int) -> int:
    squares = {}
    for y in range(p):
        squares[y * y % p] = squares.get(y * y % p, 0) + 1
    return 1 + sum(squares.get((x**3 + a * x + b) % p, 0) for x in range(p))


def leibniz(terms: int = 2_000_000) -> float:
    # L(1, chi_{-4}) with the alternating tail averaged
    s = 0.0
    for k in range(terms):
        s += (-1) ** k / (2 * k + 1)
    return s + (-1) ** terms / (4 * terms)


def omega_literal(n: int) -> int:
    return len(trial_factor(n))
