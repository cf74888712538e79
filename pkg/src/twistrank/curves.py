"""Short Weierstrass curves, Frobenius traces, q-expansions and the mod-3
Eisenstein congruence machinery.

Traces at good primes come from Legendre-symbol sums, the Hecke recursion
extends them to all coefficients, and `QSeries` carries the truncated
expansions through depletion, the V operator and bad-prime stabilization.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize, is_fundamental, is_prime, kronecker, primes_upto, smallest_prime_factor

log = logging.getLogger(__name__)

QEXP_LIMIT = 10**5
_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class CurveModel:
    """y^2 = x^3 + a x + b over the integers."""

    a: int
    b: int

    def __post_init__(self):
        if 4 * self.a**3 + 27 * self.b**2 == 0:
            raise ValueError(f"singular curve: a={self.a}, b={self.b} gives discriminant 0")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    @property
    def c4(self) -> int:
        return -48 * self.a

    @property
    def j_invariant(self) -> Fraction:
        return Fraction(-1728 * (4 * self.a) ** 3, self.discriminant)

    def __str__(self):
        return f"y^2 = x^3 + {self.a}x + {self.b}"


def discriminant(c: CurveModel) -> int:
    return c.discriminant


def j_invariant(c: CurveModel) -> Fraction:
    return c.j_invariant


@dataclass(frozen=True)
class QSeries:
    """sum_{n=0}^{bound} c_n q^n with an exact rational constant term and
    int64 coefficients for q^1..q^bound."""

    bound: int
    coeffs: np.ndarray
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.int64)
        if arr.shape != (self.bound,):
            raise ValueError(f"QSeries: expected {self.bound} coefficients, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "constant", Fraction(self.constant))

    def __getitem__(self, n: int):
        if n == 0:
            return self.constant
        if not 1 <= n <= self.bound:
            raise IndexError(f"coefficient {n} beyond truncation bound {self.bound}")
        return int(self.coeffs[n - 1])

    def truncate(self, B: int) -> "QSeries":
        if B > self.bound:
            raise ValueError(f"cannot extend a series of bound {self.bound} to {B}")
        return QSeries(B, self.coeffs[:B], self.constant)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.bound == other.bound and self.constant == other.constant and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.bound, self.constant, self.coeffs.tobytes()))

    def __repr__(self):
        head = ", ".join(str(int(v)) for v in self.coeffs[:8])
        return f"QSeries(bound={self.bound}, constant={self.constant}, [{head}{', ...' if self.bound > 8 else ''}])"


def _checked(values) -> np.ndarray:
    # python ints in, int64 out; refuse anything that would wrap
    for v in values:
        if abs(v) > _INT64_MAX:
            raise OverflowError(f"q-expansion coefficient {v} exceeds 64 bits")
    return np.array(values, dtype=np.int64)


# -- Frobenius traces ---------------------------------------------------------


def _legendre_table(p: int) -> np.ndarray:
    # (v/p) for v = 0..p-1
    x = np.arange(p, dtype=np.int64)
    table = -np.ones(p, dtype=np.int64)
    table[(x * x) % p] = 1
    table[0] = 0
    return table


def ap_good(c: CurveModel, ell: int) -> int:
    """a_ell = -sum_x ((x^3 + a x + b) / ell) for a prime ell > 3 of good reduction."""
    if ell <= 3 or not is_prime(ell):
        raise ValueError(f"ap_good: ell={ell} must be a prime > 3")
    if c.discriminant % ell == 0:
        raise ValueError(f"ap_good: ell={ell} divides the discriminant of {c}")
    x = np.arange(ell, dtype=np.int64)
    v = ((x * x % ell) * x + (c.a % ell) * x + c.b % ell) % ell
    return -int(_legendre_table(ell)[v].sum())


def naive_point_count(c: CurveModel, ell: int) -> int:
    """Projective points of y^2 = x^3 + a x + b over F_ell by brute force."""
    count = 1  # point at infinity
    for x in range(ell):
        rhs = (x**3 + c.a * x + c.b) % ell
        count += sum(1 for y in range(ell) if (y * y - rhs) % ell == 0)
    return count


def ap_naive(c: CurveModel, ell: int) -> int:
    return ell + 1 - naive_point_count(c, ell)


def ap_multiplicative(c: CurveModel, ell: int) -> int:
    """+1 for split, -1 for non-split multiplicative reduction at ell > 3.

    The reduction has a node at x0 = -3b/(2a); the tangent slopes there
    satisfy t^2 = 3 x0, so the node is split iff 3 x0 is a square mod ell.
    """
    if ell <= 3 or not is_prime(ell):
        raise ValueError(f"ap_multiplicative: ell={ell} must be a prime > 3")
    if c.discriminant % ell:
        raise ValueError(f"ap_multiplicative: {c} has good reduction at {ell}")
    if c.a % ell == 0:
        raise ValueError(f"ap_multiplicative: {c} has additive reduction at {ell}")
    x0 = (-3 * c.b * pow(2 * c.a, -1, ell)) % ell
    return 1 if kronecker(3 * x0, ell) == 1 else -1


def minimal_at(c: CurveModel, ell: int) -> CurveModel:
    """Divide out ell^4, ell^6 from (a, b) while possible (ell > 3)."""
    a, b = c.a, c.b
    while a % ell**4 == 0 and b % ell**6 == 0:
        a //= ell**4
        b //= ell**6
    return CurveModel(a, b)


def conductor_flags(c: CurveModel, N: int) -> list[str]:
    """Diagnostics comparing a supplied conductor with the discriminant."""
    flags = []
    disc = c.discriminant
    for p, _ in factorize(N):
        if disc % p:
            flags.append(f"prime {p} divides N={N} but not the discriminant {disc}")
    for p, _ in factorize(abs(disc)):
        if N % p == 0:
            continue
        if p <= 3:
            flags.append(f"prime {p} divides the discriminant but not N={N}; the short model is never good at {p}")
        elif minimal_at(c, p).discriminant % p == 0:
            flags.append(f"prime {p} divides the minimal discriminant but not N={N}")
    return flags


def _validate_conductor(c: CurveModel, N: int) -> None:
    if N < 1:
        raise ValueError(f"conductor N={N} must be positive")
    for p, _ in factorize(N):
        if c.discriminant % p:
            raise ValueError(f"inconsistent conductor: prime {p} divides N={N} but not the discriminant {c.discriminant}")


def prime_traces(c: CurveModel, N: int, B: int, ap_small: dict[int, int] | None = None) -> dict[int, int]:
    """a_ell for every prime ell <= B.

    Primes dividing N exactly once get +-1 from the node test, higher powers
    give 0.  Traces at 2 and 3 off N cannot be read from a short model in
    characteristic 2 (or 3 when 3 | a) and come from `ap_small`.
    """
    _validate_conductor(c, N)
    ap_small = dict(ap_small or {})
    out = {}
    for ell in primes_upto(B):
        ell = int(ell)
        if ell in ap_small:
            out[ell] = ap_small[ell]
        elif N % ell == 0:
            if N % (ell * ell) == 0:
                out[ell] = 0
            elif ell <= 3:
                raise ValueError(f"multiplicative trace at ell={ell} needs an explicit ap_small entry")
            else:
                out[ell] = ap_multiplicative(c, ell)
        elif ell == 2:
            raise ValueError("prime 2 is good for the given N; supply its trace via ap_small")
        elif ell == 3:
            if c.a % 3 == 0:
                raise ValueError("prime 3 is good for the given N but the short model is singular mod 3; use ap_small")
            out[ell] = ap_naive(c, 3)
        elif c.discriminant % ell:
            out[ell] = ap_good(c, ell)
        else:
            m = minimal_at(c, ell)
            if m.discriminant % ell == 0:
                raise ValueError(f"inconsistent conductor: {c} has bad reduction at {ell} but {ell} does not divide N={N}")
            out[ell] = ap_good(m, ell)
    return out


def an_coefficients(c: CurveModel, N: int, B: int, ap_small: dict[int, int] | None = None) -> QSeries:
    """a_1..a_B from the Euler product via the Hecke recursion."""
    if not 1 <= B <= QEXP_LIMIT:
        raise ValueError(f"an_coefficients: bound B={B} outside [1, {QEXP_LIMIT}]")
    traces = prime_traces(c, N, B, ap_small)
    return QSeries(B, _checked(_multiplicative_extend(traces, N, B)))


def _multiplicative_extend(traces: dict[int, int], N: int, B: int) -> list[int]:
    a = [0] * (B + 1)
    a[1] = 1
    spf = smallest_prime_factor(max(B, 2))
    for n in range(2, B + 1):
        p = int(spf[n])
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        if m > 1:
            a[n] = a[n // m] * a[m]
            continue
        # prime power p^k
        ap = traces[p]
        if k == 1:
            a[n] = ap
        elif N % p == 0:
            a[n] = ap * a[n // p]
        else:
            a[n] = ap * a[n // p] - p * a[n // (p * p)]
    return a[1:]


# -- Eisenstein series and operators -------------------------------------------


def eisenstein_constant(M: int) -> Fraction:
    """L(-1, chi_M) = -B_{2,chi_M}/2, with M = 1 the Riemann zeta value -1/12."""
    f = abs(M)
    b2 = sum(kronecker(M, a) * (Fraction(a, f) ** 2 - Fraction(a, f) + Fraction(1, 6)) for a in range(1, f + 1))
    return -f * b2 / 2


def _check_eisenstein_disc(M: int) -> None:
    if M != 1 and not is_fundamental(M):
        raise ValueError(f"character label M={M} is neither 1 nor a fundamental discriminant")


def eisenstein_qexp(chi, B: int) -> QSeries:
    """E_2 with both characters chi: coefficient sum_{d | n} chi(n/d) chi(d) d.

    `chi` is a Kronecker character or an integer label (1 for trivial).
    """
    M = chi if isinstance(chi, int) else chi.disc
    if M is None:
        raise ValueError("eisenstein_qexp: needs a Kronecker character")
    _check_eisenstein_disc(M)
    if not 1 <= B <= QEXP_LIMIT:
        raise ValueError(f"eisenstein_qexp: bound B={B} outside [1, {QEXP_LIMIT}]")
    f = abs(M)
    row = np.array([kronecker(M, a) for a in range(f)], dtype=np.int64) if f > 1 else np.ones(1, dtype=np.int64)
    sigma = np.zeros(B + 1, dtype=np.int64)
    for d in range(1, B + 1):
        cd = row[d % f]
        if cd == 0:
            continue
        n = np.arange(d, B + 1, d)
        sigma[n] += row[(n // d) % f] * cd * d
    return QSeries(B, sigma[1:], eisenstein_constant(M))


def depletion(s: QSeries, ell: int) -> QSeries:
    """Zero every coefficient whose index is divisible by ell."""
    coeffs = s.coeffs.copy()
    coeffs[ell - 1 :: ell] = 0
    return QSeries(s.bound, coeffs, s.constant)


def v_operator(s: QSeries, ell: int) -> QSeries:
    """f(q) -> f(q^ell), truncated at the same bound."""
    coeffs = np.zeros(s.bound, dtype=np.int64)
    m = s.bound // ell
    coeffs[ell - 1 :: ell] = s.coeffs[:m]
    return QSeries(s.bound, coeffs, s.constant)


def stabilize_bad(s: QSeries, ell: int, a_ell: int) -> QSeries:
    """(1 - a_ell V) s for a bad prime with a_ell = +-1."""
    if a_ell not in (1, -1):
        raise ValueError(f"stabilize_bad: a_ell={a_ell} must be +1 or -1")
    vs = v_operator(s, ell)
    return QSeries(s.bound, s.coeffs - a_ell * vs.coeffs, s.constant - a_ell * vs.constant)


def euler_factor_unit(ell: int, p: int) -> tuple[int, bool]:
    """(1 - ell^{-1}) mod p, and whether it is nonzero (ell != 1 mod p)."""
    if ell == p:
        raise ValueError(f"euler_factor_unit: ell={ell} equals p")
    if not is_prime(ell) or not is_prime(p):
        raise ValueError(f"euler_factor_unit: ell={ell} and p={p} must be prime")
    value = (1 - pow(ell, -1, p)) % p
    return value, value != 0


def congruence_check(s1: QSeries, s2: QSeries, m: int, excluded=(), B: int | None = None) -> int | None:
    """First n <= B coprime to every excluded prime with s1[n] != s2[n] mod m.

    None means the series agree there.
    """
    B = min(s1.bound, s2.bound) if B is None else B
    if B > s1.bound or B > s2.bound:
        raise ValueError(f"congruence_check: B={B} exceeds a series bound ({s1.bound}, {s2.bound})")
    mask = np.ones(B, dtype=bool)
    for p in excluded:
        mask[p - 1 :: p] = False
    diff = (s1.coeffs[:B] - s2.coeffs[:B]) % m
    bad = np.flatnonzero(mask & (diff != 0))
    return int(bad[0]) + 1 if bad.size else None


def _candidate_labels(primes: list[int]) -> list[int]:
    # fundamental discriminants (and 1) built from the given primes
    out = {1}
    odd = [p for p in primes if p != 2]
    for mask in range(1 << len(odd)):
        core = 1
        for i, p in enumerate(odd):
            if mask >> i & 1:
                core *= p
        for s in (core, -core):
            for m in (s, 4 * s, 8 * s, -8 * s) if 2 in primes else (s,):
                if m != 1 and is_fundamental(m):
                    out.add(m)
    return sorted(out, key=lambda m: (abs(m), m))


def find_residual_character(c: CurveModel, B: int = 1000) -> int | None:
    """Smallest |M| (ties to the negative label) with a_ell = chi_M(ell)(1 + ell) mod 3
    at every good ell <= B; None when no candidate fits."""
    if B < 100:
        raise ValueError(f"find_residual_character: bound B={B} < 100")
    disc = c.discriminant
    primes = sorted(set(factorize(6 * abs(disc)).primes))
    good = [int(p) for p in primes_upto(B) if p > 3 and disc % p]
    traces = {ell: ap_good(c, ell) for ell in good}
    for M in _candidate_labels(primes):
        if all((traces[ell] - kronecker(M, ell) * (1 + ell)) % 3 == 0 for ell in good):
            return M
    return None
