"""Dirichlet L-values and derivatives at s = 0 and s = 1.

L(s, chi) = f^{-s} sum_a chi(a) zeta(s, a/f) with the Hurwitz zeta function
evaluated by Euler-Maclaurin summation.  At s = 1 the pole of zeta(s, x)
cancels in the character sum, so its finite part -digamma(x) is used there.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .characters import Character, bernoulli1, gauss_sum, g_normalized, is_primitive

EM_TERMS = 8
EM_CUTOFF = 32
FD_STEP = 1e-4


@lru_cache(maxsize=1)
def _bernoulli_even() -> tuple[float, ...]:
    # B_2, B_4, ..., B_{2*EM_TERMS} divided by (2k)!
    B = [Fraction(1)]
    out = []
    for m in range(1, 2 * EM_TERMS + 1):
        B.append(-sum(math.comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    for k in range(1, EM_TERMS + 1):
        out.append(float(B[2 * k] / math.factorial(2 * k)))
    return tuple(out)


def hurwitz_zeta(s: float, x: float) -> float:
    """zeta(s, x) for real s != 1 and x > 0; at s = 1 returns -digamma(x)."""
    if x <= 0:
        raise ValueError(f"hurwitz_zeta: x={x} must be positive")
    N = EM_CUTOFF
    n = np.arange(N, dtype=float) + x
    y = N + x
    if s == 1:
        head = float(np.sum(1.0 / n)) - math.log(y)
    else:
        head = float(np.sum(n ** (-s))) + y ** (1 - s) / (s - 1)
    total = head + 0.5 * y ** (-s)
    # sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * y^{-s-2k+1}
    rising = s
    for k, b in enumerate(_bernoulli_even(), start=1):
        total += b * rising * y ** (-s - 2 * k + 1)
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return total


def hurwitz_zeta_special(x: float) -> tuple[float, float]:
    """(zeta(0, x), d/ds zeta(s, x) at s = 0) from Lerch's formula."""
    if not 0 < x <= 1:
        raise ValueError(f"hurwitz_zeta_special: x={x} outside (0, 1]")
    return 0.5 - x, math.lgamma(x) - 0.5 * math.log(2 * math.pi)


def l_value(chi: Character, s: float) -> complex:
    """L(s, chi) for real s (analytically continued; modulus <= 100)."""
    f = chi.modulus
    if f > 100:
        raise ValueError(f"l_value: modulus {f} > 100")
    if s == 1 and chi.is_trivial:
        raise ValueError("l_value: pole of L(s, trivial) at s = 1")
    total = 0j
    for a in range(1, f + 1):
        v = chi(a)
        if v:
            total += v * hurwitz_zeta(s, a / f)
    return total * f ** (-s)


def l_derivative_fd(chi: Character, s: float = 0.0, h: float = FD_STEP) -> complex:
    """Central difference for L'(s, chi), one Richardson step."""
    d1 = (l_value(chi, s + h) - l_value(chi, s - h)) / (2 * h)
    d2 = (l_value(chi, s + h / 2) - l_value(chi, s - h / 2)) / h
    return (4 * d2 - d1) / 3


def _check_even_nontrivial(chi: Character, primitive: bool = True) -> None:
    if not chi.is_even:
        raise ValueError(f"{chi!r} is odd")
    if chi.is_trivial:
        raise ValueError("the trivial character is excluded")
    if primitive and not is_primitive(chi):
        raise ValueError(f"{chi!r} is not primitive")


def l_prime_at_0(chi: Character) -> complex:
    """L'(0, chi) = sum_a chi(a) log Gamma(a/f) for even nontrivial primitive chi."""
    _check_even_nontrivial(chi)
    f = chi.modulus
    return complex(sum(chi(a) * math.lgamma(a / f) for a in range(1, f) if math.gcd(a, f) == 1))


def c_plus(f: int, a: int) -> float:
    """C+(a) = (1 - zeta^a)(1 - zeta^-a) = 2 - 2 cos(2 pi a / f)."""
    if f < 3 or math.gcd(a, f) != 1:
        raise ValueError(f"c_plus: need f >= 3 and gcd(a, f) = 1, got f={f}, a={a}")
    a %= f
    a = min(a, f - a)
    # 4 sin^2 avoids the cancellation in 2 - 2cos for small a/f
    return 4.0 * math.sin(math.pi * a / f) ** 2


def _half_units(f: int) -> list[int]:
    # representatives of (Z/f)^x / {+-1}
    return [a for a in range(1, (f + 1) // 2) if math.gcd(a, f) == 1]


def l1_from_log_sum(chi: Character) -> complex:
    """-(tau(chi)/f) * sum over (Z/f)^x/+-1 of conj(chi)(a) log C+(a)."""
    f = chi.modulus
    s = sum(complex(chi(a)).conjugate() * math.log(c_plus(f, a)) for a in _half_units(f))
    return -gauss_sum(chi) / f * s


def verify_l1_log_sum(chi: Character) -> float:
    _check_even_nontrivial(chi)
    return abs(l_value(chi, 1.0) - l1_from_log_sum(chi))


def verify_l_prime_g_form(chi: Character) -> float:
    """|L'(0, chi) + (g(chi)/2) L(1, conj chi)| with g(chi) = tau(chi)/f."""
    _check_even_nontrivial(chi)
    return abs(l_prime_at_0(chi) + g_normalized(chi) / 2 * l_value(chi.conj(), 1.0))


def verify_l_prime_tau_form(chi: Character) -> float:
    """|L'(0, chi) - (tau(chi)/2) L(1, conj chi)|, the functional-equation form."""
    _check_even_nontrivial(chi)
    return abs(l_prime_at_0(chi) - gauss_sum(chi) / 2 * l_value(chi.conj(), 1.0))


def verify_l_prime_log_sum(chi: Character) -> float:
    """|L'(0, chi) + (1/2) sum over (Z/f)^x/+-1 of chi(a) log C+(a)|."""
    _check_even_nontrivial(chi)
    f = chi.modulus
    s = sum(chi(a) * math.log(c_plus(f, a)) for a in _half_units(f))
    return abs(l_prime_at_0(chi) + 0.5 * s)


def verify_product_derivative(chi: Character, eps: Character) -> float:
    """Residual of d/ds[L(s, chi*eps) L(s, chi)] at 0 against L(0, chi*eps) L'(0, chi).

    The left side is a finite difference of the product; the right side uses
    the closed Lerch form for L'(0, chi).
    """
    if math.gcd(chi.modulus, eps.modulus) != 1:
        raise ValueError(f"verify_product_derivative: moduli {chi.modulus} and {eps.modulus} are not coprime")
    _check_even_nontrivial(chi)
    prod = chi * eps
    if not is_primitive(prod):
        raise ValueError("verify_product_derivative: chi*eps is not primitive")

    # L(s, chi_K) is the product of the two Dirichlet L-functions
    def lk(s):
        return l_value(prod, s) * l_value(chi, s)

    h = FD_STEP
    d1 = (lk(h) - lk(-h)) / (2 * h)
    d2 = (lk(h / 2) - lk(-h / 2)) / h
    lhs = (4 * d2 - d1) / 3
    rhs = l_value(prod, 0.0) * l_prime_at_0(chi)
    return abs(lhs - rhs)


def l_zero_explicit(chi: Character) -> complex:
    """-B_{1,chi}, the value L(0, chi) for nontrivial chi."""
    b = bernoulli1(chi)
    return complex(-b) if not isinstance(b, Fraction) else complex(-float(b))
