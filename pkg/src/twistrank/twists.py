"""Quadratic, cubic and sextic twists, twisted conductors and root-number signs."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import factorize, fundamental_discriminant, is_squarefree, kronecker, valuation
from .curves import CurveModel, QSeries, an_coefficients, congruence_check


@dataclass(frozen=True)
class MordellCurve:
    """y^2 = x^3 + c."""

    c: int

    def __post_init__(self):
        if self.c == 0:
            raise ValueError("MordellCurve: c must be nonzero")

    @property
    def model(self) -> CurveModel:
        return CurveModel(0, self.c)

    @property
    def j_invariant(self) -> int:
        return 0


def _check_twist_param(D: int) -> None:
    if D in (0, 1) or not is_squarefree(D):
        raise ValueError(f"twist parameter D={D} must be squarefree and not 0 or 1")


def quadratic_twist(cu: CurveModel, D: int) -> CurveModel:
    """Integral model y^2 = x^3 + a D^2 x + b D^3 of D y^2 = x^3 + a x + b."""
    _check_twist_param(D)
    return CurveModel(cu.a * D**2, cu.b * D**3)


def twist_disc(D: int) -> int:
    """Fundamental discriminant of Q(sqrt(D)); 1 for D = 1."""
    return 1 if D == 1 else fundamental_discriminant(D)


def twist_qexp(s: QSeries, D: int) -> QSeries:
    """Multiply coefficient n by chi_{disc(D)}(n)."""
    d = twist_disc(D)
    f = abs(d)
    row = np.array([kronecker(d, a) for a in range(f)], dtype=np.int64)
    n = np.arange(1, s.bound + 1)
    return QSeries(s.bound, s.coeffs * row[n % f], s.constant)


def twisted_conductor(N: int, D: int) -> int:
    """N D^2 under gcd(N, D) = 1, 2 not dividing N D, 3 not dividing D."""
    if N < 1:
        raise ValueError(f"twisted_conductor: N={N} must be positive")
    if D == 0 or not is_squarefree(D):
        raise ValueError(f"twisted_conductor: D={D} must be squarefree and nonzero")
    if math.gcd(N, D) != 1:
        raise ValueError(f"twisted_conductor: gcd(N, D) = {math.gcd(N, D)} != 1 for N={N}, D={D}")
    if (N * D) % 2 == 0:
        raise ValueError(f"twisted_conductor: N*D = {N * D} is even")
    if D % 3 == 0:
        raise ValueError(f"twisted_conductor: 3 divides D={D}")
    return N * D * D


def _nonzero(D: int) -> None:
    if D == 0:
        raise ValueError("twist parameter D must be nonzero")


def g2(m: MordellCurve, D: int) -> MordellCurve:
    _nonzero(D)
    return MordellCurve(m.c * D**3)


def g3(m: MordellCurve, D: int) -> MordellCurve:
    _nonzero(D)
    return MordellCurve(m.c * D**2)


def g6(m: MordellCurve, D: int) -> MordellCurve:
    _nonzero(D)
    return MordellCurve(m.c * D**7)


def cubic_twist_alt(m: MordellCurve, d: int) -> MordellCurve:
    """The other cubic-twist parametrization, y^2 = x^3 + d c."""
    _nonzero(d)
    return MordellCurve(m.c * d)


def _support_conductor(c: int, N: int | None) -> int:
    # bad-prime support only: primes of 6c, squared so that they read as additive
    if N is not None:
        return N
    out = 1
    for p in factorize(6 * abs(c)).primes:
        out *= p * p
    return out


def cubic_twist_congruence_check(c: int, d: int, N: int | None = None, B: int = 2000) -> int | None:
    """Compare C_c with g3(C_c, d) = C_{c d^2} mod 3 away from 3 N d.

    Only the prime support of the conductors matters here, so the twisted
    curve is expanded with its discriminant support as the level.  Returns the
    first failing index or None.
    """
    base = MordellCurve(c)
    tw = g3(base, d)
    n_base = _support_conductor(c, N)
    s1 = an_coefficients(base.model, n_base, B)
    s2 = an_coefficients(tw.model, _support_conductor(tw.c, None), B)
    excluded = set(factorize(3 * n_base * abs(d)).primes) | set(factorize(6 * abs(tw.c)).primes)
    return congruence_check(s1, s2, 3, sorted(excluded), B)


def minus_symbol(D: int, N: int) -> int:
    """(D / -N) by the sign case split: (D/N) for D > 0, -(D/N) for D < 0."""
    return kronecker(D, N) if D > 0 else -kronecker(D, N)


def root_number_twist(w: int, D: int, N: int) -> int:
    """w_{E_D} = (D / -N) w_E."""
    if w not in (1, -1):
        raise ValueError(f"root_number_twist: w={w} must be +1 or -1")
    if D == 0 or N < 1:
        raise ValueError(f"root_number_twist: need D != 0 and N >= 1, got D={D}, N={N}")
    if math.gcd(D, N) != 1:
        raise ValueError(f"root_number_twist: gcd(D, N) != 1 for D={D}, N={N}")
    if math.gcd(N, 6) != 1:
        raise ValueError(f"root_number_twist: gcd(N, 6) != 1 for N={N}")
    s = minus_symbol(D, N)
    if s != kronecker(D, -N):
        raise AssertionError(f"sign split disagrees with the Kronecker extension at D={D}, N={N}")
    return s * w


def predicted_rank_Q(w: int) -> int:
    if w not in (1, -1):
        raise ValueError(f"predicted_rank_Q: w={w} must be +1 or -1")
    return (1 - w) // 2


def v3_free_part(n: int) -> int:
    """n with every factor 3 removed."""
    return n // 3 ** valuation(3, n)
