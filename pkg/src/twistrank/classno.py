"""Class numbers of imaginary quadratic fields.

Two independent routes: counting reduced binary quadratic forms, and the
analytic formula h(d) = (w/2) |B_{1,chi_d}|.  `ClassNumberTable` sieves the
form count for every discriminant up to a bound at once, which is what the
density scans use.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction

import numpy as np

from .arith import fundamental_discriminant, is_fundamental, is_squarefree, primes_upto
from .parallel import map_ordered, split_range

log = logging.getLogger(__name__)

FORMS_LIMIT = 10**8
SCAN_LIMIT = 10**6


class EmptyScanError(ValueError):
    """A scan whose denominator class contains no discriminants."""


def _check_disc(d: int) -> None:
    if d >= 0:
        raise ValueError(f"discriminant d={d} must be negative (real quadratic fields are not supported)")
    if d <= -FORMS_LIMIT:
        raise ValueError(f"discriminant d={d} outside (-10**8, 0)")
    if not is_fundamental(d):
        raise ValueError(f"discriminant d={d} is not fundamental")


def class_number_forms(d: int) -> int:
    """Number of reduced forms (a, b, c) with b^2 - 4ac = d.

    Reduced: |b| <= a <= c, and b >= 0 whenever |b| = a or a = c.
    """
    _check_disc(d)
    D = -d
    h = 0
    b = D % 2
    bmax = math.isqrt(D // 3)
    while b <= bmax:
        n = (b * b + D) // 4  # = a*c
        a = max(b, 1)
        while a * a <= n:
            if n % a == 0:
                c = n // a
                # b and -b are both reduced unless b = 0, b = a or a = c
                h += 1 if (b == 0 or b == a or a == c) else 2
            a += 1
        b += 2
    return h


def units_count(d: int) -> int:
    return 6 if d == -3 else 4 if d == -4 else 2


def _kronecker_row(d: int) -> np.ndarray:
    """chi_d(a) for a = 0..|d|-1, built multiplicatively from prime values."""
    from .arith import kronecker

    f = abs(d)
    vals = np.ones(f, dtype=np.int64)
    vals[0] = 0 if f > 1 else 1
    for p in primes_upto(f - 1):
        p = int(p)
        cp = kronecker(d, p)
        if cp == 1:
            continue
        if cp == 0:
            vals[p::p] = 0
            continue
        pk = p
        while pk < f:
            vals[pk::pk] *= -1
            pk *= p
    return vals


def bernoulli1_kronecker(d: int) -> Fraction:
    """B_{1,chi_d} = (1/|d|) sum_{a=1}^{|d|} a chi_d(a) for fundamental d < 0."""
    f = abs(d)
    vals = _kronecker_row(d)
    return Fraction(int(np.dot(np.arange(f, dtype=np.int64), vals)), f)


def class_number_analytic(d: int) -> int:
    """h(d) = (w/2) |B_{1,chi_d}|."""
    _check_disc(d)
    h = Fraction(units_count(d), 2) * abs(bernoulli1_kronecker(d))
    if h.denominator != 1:
        raise ArithmeticError(f"class_number_analytic: non-integral value {h} at d={d}")
    return int(h)


def h3_indivisible(d: int, h: int | None = None) -> bool:
    return (class_number_forms(d) if h is None else h) % 3 != 0


def _forms_count_task(args):
    a_lo, a_hi, X = args
    counts = np.zeros(X + 1, dtype=np.int64)
    for a in range(a_lo, a_hi):
        cmax = (X + a * a) // (4 * a)
        if cmax < a:
            continue
        b = np.arange(-a + 1, a + 1, dtype=np.int64)
        c = np.arange(a, cmax + 1, dtype=np.int64)
        D = 4 * a * c[None, :] - (b * b)[:, None]
        keep = D <= X
        # a = c requires b >= 0
        keep[:, 0] &= b >= 0
        counts += np.bincount(D[keep], minlength=X + 1)
    return counts


class ClassNumberTable:
    """Reduced-form counts for every 0 < |d| <= limit, sieved in one pass.

    Entries are class numbers only at fundamental discriminants (where every
    form is primitive); lookups at other d are rejected.
    """

    def __init__(self, limit: int, workers: int = 1):
        if limit < 3 or limit > 2 * 10**7:
            raise ValueError(f"ClassNumberTable: limit={limit} outside [3, 2*10**7]")
        self.limit = limit
        amax = math.isqrt(limit // 3) + 1
        # balance the a-ranges: work for each a is about limit/2
        tasks = [(lo, hi, limit) for lo, hi in split_range(1, amax + 1, max(1, workers) * 4)]
        parts = map_ordered(_forms_count_task, tasks, workers)
        counts = np.zeros(limit + 1, dtype=np.int64)
        for part in parts:
            counts += part
        self._counts = counts

    def __getitem__(self, d: int) -> int:
        if d >= 0 or -d > self.limit:
            raise KeyError(f"d={d} outside table range (-{self.limit}, 0)")
        return int(self._counts[-d])

    def h(self, d: int) -> int:
        if not is_fundamental(d):
            raise ValueError(f"discriminant d={d} is not fundamental")
        return self[d]


class ClassNumberOracle:
    """Class-number lookups for scans, backed by an optional cache mapping and
    a lazily grown sieve table."""

    def __init__(self, cache=None, workers: int = 1):
        self.cache = cache
        self.workers = workers
        self._table: ClassNumberTable | None = None
        self._memo: dict[int, int] = {}

    def ensure(self, bound: int) -> None:
        """Make every |d| <= bound answerable without further sieving."""
        if self._table is None or self._table.limit < bound:
            log.info("sieving class numbers up to %d", bound)
            self._table = ClassNumberTable(max(bound, 3), self.workers)

    def prefetch(self, discs) -> None:
        missing = [d for d in discs if d not in self._memo and not (self.cache is not None and d in self.cache)]
        if len(missing) > 200:
            self.ensure(max(-d for d in missing))

    def __call__(self, d: int) -> int:
        h = self._memo.get(d)
        if h is not None:
            return h
        if self.cache is not None and d in self.cache:
            h = self.cache[d]
        elif self._table is not None and -d <= self._table.limit:
            h = self._table[d]
        else:
            h = class_number_forms(d)
        self._memo[d] = h
        if self.cache is not None and d not in self.cache:
            self.cache[d] = h
        return h


def fundamental_negative_discriminants(X: int, lo: int = 0) -> list[int]:
    """Fundamental d with -X < d < -lo, in decreasing order (-3, -4, -7, ...)."""
    n = np.arange(0, X, dtype=np.int64)
    sqfree = np.ones(X, dtype=bool)
    for p in primes_upto(math.isqrt(X) + 1):
        p = int(p)
        sqfree[:: p * p] = False
    sqfree[0] = False
    # d = -n; d = 1 mod 4  <=>  n = 3 mod 4
    ok = (n % 4 == 3) & sqfree
    m = n // 4
    ok |= (n % 4 == 0) & ((-m) % 4 >= 2) & sqfree[np.minimum(m, X - 1)] & (m > 0)
    ok &= n > lo
    return [-int(k) for k in np.flatnonzero(ok)]


def nakagawa_horie_ratio(X: int, m: int, M: int, sign: str = "-", oracle=None):
    """Proportion of discriminants in a residue class with 3 not dividing h.

    sign "-": fundamental d with -X < d < 0 and d = m (mod M), testing h(d).
    sign "+": squarefree 0 < D < X with D = m (mod M), testing h(fund(-3D)).
    """
    from .density import ScanReport, _timer

    if X > SCAN_LIMIT:
        raise ValueError(f"nakagawa_horie_ratio: X={X} > 10**6")
    if M < 1:
        raise ValueError(f"nakagawa_horie_ratio: modulus M={M} must be positive")
    oracle = oracle or ClassNumberOracle()
    t = _timer()
    if sign == "-":
        discs = [d for d in fundamental_negative_discriminants(X) if (d - m) % M == 0]
    elif sign == "+":
        discs = [fundamental_discriminant(-3 * D) for D in range(1, X) if (D - m) % M == 0 and is_squarefree(D)]
    else:
        raise ValueError(f"nakagawa_horie_ratio: sign={sign!r} must be '+' or '-'")
    if not discs:
        raise EmptyScanError(f"nakagawa_horie_ratio: no discriminants with X={X}, class {m} mod {M}, sign {sign}")
    oracle.prefetch(discs)
    num = sum(1 for d in discs if oracle(d) % 3)
    return ScanReport.make(
        label=f"nakagawa-horie sign={sign} m={m} M={M}",
        lo=-X if sign == "-" else 1,
        hi=0 if sign == "-" else X,
        numerator=num,
        denominator=len(discs),
        bound=0.5,
        bound_kind="lower",
        runtime_ms=t(),
    )
