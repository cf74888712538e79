"""Exact integer utilities: factorization, omega, valuations, Kronecker symbol,
fundamental discriminants and a segmented omega sieve."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_INT = 2**63 - 1
TRIAL_LIMIT = 10**6
SIEVE_LIMIT = 10**8


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


@lru_cache(maxsize=8)
def primes_upto(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (plain Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_upto(TRIAL_LIMIT))


# Deterministic for n < 3.3e24 with these bases.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int) -> int:
    # Brent's variant; seeded so that results are reproducible.
    if n % 2 == 0:
        return 2
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _rho(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> Factorization:
    """Prime factorization of 1 <= n <= 2**63 - 1.

    Trial division by primes below 10**6, then Pollard rho on the cofactor.
    """
    n = int(n)
    if n < 1 or n > MAX_INT:
        raise ValueError(f"factorize: n={n} outside [1, 2**63-1]")
    found: dict[int, int] = {}
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m < TRIAL_LIMIT**2:
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n))


def valuation(ell: int, n: int) -> int:
    if not is_prime(ell):
        raise ValueError(f"valuation: ell={ell} is not prime")
    if n == 0:
        raise ValueError("valuation: n must be nonzero")
    n = abs(n)
    e = 0
    while n % ell == 0:
        n //= ell
        e += 1
    return e


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n > 0."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"jacobi: n={n} must be odd and positive")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n), including even and negative n."""
    if D == 0 and n == 0:
        raise ValueError("kronecker(0, 0) is undefined")
    if n == 0:
        return 1 if D in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 and D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi(D, n)


def squarefree_kernel(m: int) -> int:
    """The squarefree s with m = s * k**2 (sign kept)."""
    if m == 0:
        raise ValueError("squarefree_kernel(0)")
    s = 1
    for p, e in factorize(abs(m)):
        if e % 2:
            s *= p
    return s if m > 0 else -s


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(abs(n)))


def is_fundamental(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminant(m: int) -> int:
    """Discriminant of the quadratic field Q(sqrt(m))."""
    if m == 0:
        raise ValueError("fundamental_discriminant: m must be nonzero")
    if m > 0 and math.isqrt(m) ** 2 == m:
        raise ValueError(f"fundamental_discriminant: m={m} is a perfect square")
    s = squarefree_kernel(m)
    return s if s % 4 == 1 else 4 * s


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi: n={n} must be positive")
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def _omega_segment(lo: int, hi: int, small: np.ndarray) -> np.ndarray:
    # omega(n) for lo <= n < hi; at most one prime factor of n exceeds sqrt(hi).
    rem = np.arange(lo, hi, dtype=np.int64)
    out = np.zeros(hi - lo, dtype=np.int8)
    for p in small:
        p = int(p)
        start = (-lo) % p
        if start >= hi - lo:
            continue
        out[start::p] += 1
        pk = p
        while True:
            s = (-lo) % pk
            if s >= hi - lo:
                break
            rem[s::pk] //= p
            if pk > hi // p:
                break
            pk *= p
    out += (rem > 1).astype(np.int8)
    return out


def _omega_task(args):
    lo, hi, root = args
    return _omega_segment(lo, hi, primes_upto(root))


def sieve_omega(X: int, workers: int = 1, segment: int = 1 << 22) -> np.ndarray:
    """Array whose entry i is omega(i + 1), for 1 <= i + 1 <= X."""
    if X < 1 or X > SIEVE_LIMIT:
        raise ValueError(f"sieve_omega: X={X} outside [1, 10**8]")
    from .parallel import map_ordered

    root = math.isqrt(X) + 1
    tasks = [(lo, min(lo + segment, X + 1), root) for lo in range(1, X + 1, segment)]
    parts = map_ordered(_omega_task, tasks, workers)
    return np.concatenate(parts)


@lru_cache(maxsize=4)
def smallest_prime_factor(n: int) -> np.ndarray:
    """spf[k] for 0 <= k <= n (spf[0] = spf[1] = 0)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in primes_upto(math.isqrt(n)):
        p = int(p)
        block = spf[p * p :: p]
        block[block == 0] = p
    idx = np.arange(n + 1)
    mask = (spf == 0) & (idx >= 2)
    spf[mask] = idx[mask]
    return spf
