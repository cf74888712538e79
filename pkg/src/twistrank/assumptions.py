"""Checkable hypotheses on (N, D, Delta_K) and the one-sided rank-1 prediction
assembled from 3-indivisibility of class numbers."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .arith import factorize, fundamental_discriminant, is_fundamental, is_squarefree, valuation


class Status(enum.Enum):
    RANK1_PREDICTED = "rank1-predicted"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Evidence:
    name: str
    passed: bool
    witness: object = None


@dataclass(frozen=True)
class Prediction:
    status: Status
    evidence: tuple[Evidence, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.status is Status.RANK1_PREDICTED and not all(e.passed for e in self.evidence):
            raise ValueError("a rank-1 prediction needs every condition to pass")

    @property
    def failed(self) -> list[Evidence]:
        return [e for e in self.evidence if not e.passed]


def heegner_check(N: int, dk: int, exclude3: bool = True) -> bool:
    """Delta_K is a nonzero square mod every prime of N (3 skipped if exclude3)."""
    from .arith import kronecker

    if N < 1:
        raise ValueError(f"heegner_check: N={N} must be positive")
    for p in factorize(N).primes:
        if exclude3 and p == 3:
            continue
        if kronecker(dk, p) != 1:
            return False
    return True


def heegner_witness(N: int, dk: int, exclude3: bool = True) -> int | None:
    """First prime of N where the Heegner condition fails, or None."""
    from .arith import kronecker

    for p in factorize(N).primes:
        if exclude3 and p == 3:
            continue
        if kronecker(dk, p) != 1:
            return p
    return None


def star_conditions(N: int, D: int) -> list[Evidence]:
    if N == 0 or D == 0:
        raise ValueError(f"star_check: N={N} and D={D} must be nonzero")
    N, Da = abs(N), abs(D)
    bad = [p for p, e in factorize(N) if p > 3 and e == 1 and p % 3 != 2]
    from math import gcd

    return [
        Evidence("exact-primes-2-mod-3", not bad, bad[0] if bad else None),
        Evidence("coprime", gcd(N, Da) == 1, gcd(N, Da)),
        Evidence("odd", (N * Da) % 2 == 1, N * Da),
        Evidence("v3-not-1", valuation(3, N) != 1, valuation(3, N)),
    ]


def star_check(N: int, D: int) -> bool:
    return all(e.passed for e in star_conditions(N, D))


def class_number_queries(D: int, dk: int) -> tuple[int, int]:
    """The two fundamental discriminants whose class numbers decide the criterion."""
    if D > 0:
        pair = (fundamental_discriminant(-3 * D), fundamental_discriminant(D * dk))
    else:
        pair = (fundamental_discriminant(D), fundamental_discriminant(-3 * D * dk))
    # both fields are imaginary in either branch
    assert pair[0] < 0 and pair[1] < 0, f"non-negative discriminant in {pair} for D={D}, dk={dk}"
    return pair


def rank1_criterion(N: int, D: int, dk: int, exclude3: bool = True, h=None) -> Prediction:
    """Rank-1 prediction for E_D over K = Q(sqrt(dk)); Unknown never claims rank != 1.

    `h` maps a fundamental discriminant to its class number (defaults to form
    counting).
    """
    from .classno import class_number_forms

    if not (dk < 0 and is_fundamental(dk)):
        raise ValueError(f"rank1_criterion: dk={dk} must be a negative fundamental discriminant")
    if D in (0, 1) or not is_squarefree(D):
        raise ValueError(f"rank1_criterion: D={D} must be squarefree and not 0 or 1")
    h = h or class_number_forms
    ev = list(star_conditions(N, D))
    w = heegner_witness(N * D * D, dk, exclude3)
    ev.append(Evidence("heegner", w is None, w))
    d1, d2 = class_number_queries(D, dk)
    h1, h2 = h(d1), h(d2)
    ev.append(Evidence(f"3-free h({d1})", h1 % 3 != 0, h1))
    ev.append(Evidence(f"3-free h({d2})", h2 % 3 != 0, h2))
    ok = all(e.passed for e in ev)
    return Prediction(Status.RANK1_PREDICTED if ok else Status.UNKNOWN, tuple(ev))
