"""Density scans over discriminants and twists, plus the Gaussian model for
the distribution of omega(n) and its tail bounds.

Scans count with exact integers and only divide at the end, so a report does
not depend on how the work was split across processes.
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import integrate, special

from .arith import euler_phi, factorize, is_squarefree, omega, primes_upto, sieve_omega, valuation
from .assumptions import Status, heegner_check, rank1_criterion, star_conditions
from .classno import ClassNumberOracle, fundamental_negative_discriminants
from .parallel import map_ordered
from .twists import predicted_rank_Q, root_number_twist

SCHEMA_VERSION = 1
LOG2 = math.log(2)
KAPPA = LOG2 - LOG2**2 / 2
MODEL_GRID = (10**3, 10**4, 10**5, 10**6)
QUAD_ABS_TOL = 1e-12
UNDERFLOW_FLOOR = 1e-300


def _timer():
    t0 = time.perf_counter()
    return lambda: int(round((time.perf_counter() - t0) * 1000))


@dataclass(frozen=True)
class ScanReport:
    label: str
    lo: int
    hi: int
    numerator: int
    denominator: int
    proportion: float
    bound: float
    bound_kind: str
    passed: bool
    runtime_ms: int = 0
    extras: dict = field(default_factory=dict, compare=False)

    FIELDS = ("schema_version", "label", "lo", "hi", "numerator", "denominator", "proportion", "bound", "bound_kind", "pass", "extras")

    @classmethod
    def make(cls, label, lo, hi, numerator, denominator, bound, bound_kind, runtime_ms=0, extras=None, proportion=None):
        if proportion is None:
            proportion = numerator / denominator if denominator else 0.0
        if bound_kind == "lower":
            ok = proportion >= bound
        elif bound_kind == "upper":
            ok = proportion < bound
        elif bound_kind == "shape":
            ok = abs(proportion - 1) < bound
        else:
            raise ValueError(f"unknown bound_kind {bound_kind!r}")
        return cls(label, lo, hi, numerator, denominator, float(proportion), float(bound), bound_kind, bool(ok), runtime_ms, dict(extras or {}))

    @property
    def asserting(self) -> bool:
        return self.extras.get("asserting", True)

    def as_dict(self, timing: bool = False) -> dict:
        d = {
            "schema_version": SCHEMA_VERSION,
            "label": self.label,
            "lo": self.lo,
            "hi": self.hi,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "proportion": self.proportion,
            "bound": self.bound,
            "bound_kind": self.bound_kind,
            "pass": self.passed,
            "extras": self.extras,
        }
        if timing:
            d["runtime_ms"] = self.runtime_ms
        return d

    def summary(self) -> str:
        rel = {"lower": ">=", "upper": "<", "shape": "|.-1| <"}[self.bound_kind]
        tag = "PASS" if self.passed else "FAIL"
        note = "" if self.asserting else " (diagnostic)"
        return f"[{tag}] {self.label}: {self.proportion:.6g} {rel} {self.bound:.6g}{note}"


def rank1_share_bound(N: int, D: int) -> float:
    """2^(-1 - omega(N D / 3^v3(N D)))."""
    nd = abs(N * D)
    return 2.0 ** (-1 - omega(nd // 3 ** valuation(3, nd)))


def _require_star(N: int, D: int) -> None:
    failed = [e for e in star_conditions(N, D) if not e.passed]
    if failed:
        names = ", ".join(f"{e.name} (witness {e.witness})" for e in failed)
        raise ValueError(f"hypotheses fail for N={N}, D={D}: {names}")


def _scan_pairs(N, D, X, oracle, exclude3, label, bound, dk_max=0):
    t = _timer()
    if X > 10**6:
        raise ValueError(f"discriminant scan bound X={X} > 10**6")
    if D in (0, 1) or not is_squarefree(D):
        raise ValueError(f"twist parameter D={D} must be squarefree and not 0 or 1")
    _require_star(N, D)
    oracle = oracle or ClassNumberOracle()
    discs = fundamental_negative_discriminants(X, -dk_max)
    level = N * D * D
    candidates = [dk for dk in discs if heegner_check(level, dk, exclude3)]
    from .assumptions import class_number_queries

    oracle.prefetch([d for dk in candidates for d in class_number_queries(D, dk)])
    num = sum(1 for dk in candidates if rank1_criterion(N, D, dk, exclude3, h=oracle).status is Status.RANK1_PREDICTED)
    return ScanReport.make(
        label=label,
        lo=-X,
        hi=dk_max,
        numerator=num,
        denominator=len(discs),
        bound=bound,
        bound_kind="lower",
        runtime_ms=t(),
        extras={"heegner": len(candidates)},
    )


def scan_discriminants(N: int, D: int, X: int, oracle=None, exclude3: bool = True, dk_max: int = 0) -> ScanReport:
    """Share of fundamental dk in (-X, dk_max) with a rank-1 prediction for E_D/K."""
    return _scan_pairs(N, D, X, oracle, exclude3, f"rank1 over dk N={N} D={D}", rank1_share_bound(N, D), dk_max)


def scan_sextic(c: int, D: int, X: int, N: int, oracle=None, exclude3: bool = True, dk_max: int = 0) -> ScanReport:
    """The same scan for the sextic twist g6(C_c, D), using the conductor N of C_c.

    Only the prime support of the twisted conductor enters, through N D^2.
    """
    return _scan_pairs(N, D, X, oracle, exclude3, f"sextic c={c} D={D} N={N}", rank1_share_bound(N, D), dk_max)


# -- varying D ----------------------------------------------------------------


def _admissible_row(dk: int) -> np.ndarray:
    from .arith import kronecker

    f = abs(dk)
    return np.array([kronecker(dk, a) == 1 for a in range(f)], dtype=bool)


def _heegner_segment(args):
    lo, hi, dk, root = args
    f = abs(dk)
    row = _admissible_row(dk)
    rem = np.arange(lo, hi, dtype=np.int64)
    ok = np.ones(hi - lo, dtype=bool)
    for p in primes_upto(root):
        p = int(p)
        start = (-lo) % p
        if start >= hi - lo:
            continue
        if not row[p % f]:
            ok[start::p] = False
        pk = p
        while True:
            s = (-lo) % pk
            if s >= hi - lo:
                break
            rem[s::pk] //= p
            if pk > hi // p:
                break
            pk *= p
    # what is left is 1 or a single prime above root
    ok &= (rem == 1) | row[rem % f]
    return ok


def admissible_mask(dk: int, X: int, workers: int = 1, segment: int = 1 << 21) -> np.ndarray:
    """mask[i] says whether every prime of i + 1 has (dk / ell) = 1, for 1 <= i + 1 < X."""
    root = math.isqrt(X) + 1
    tasks = [(lo, min(lo + segment, X), dk, root) for lo in range(1, X, segment)]
    return np.concatenate(map_ordered(_heegner_segment, tasks, workers)) if tasks else np.zeros(0, dtype=bool)


def scan_d_heegner(dk: int, N: int, X: int, workers: int = 1) -> ScanReport:
    """Count 0 < D < X built only from primes ell with (dk / ell) = 1 and test the
    X/(log X)^(1/2) growth through c(X) = count sqrt(log X) / X at X and X/2."""
    from .arith import is_fundamental

    if not (dk < 0 and is_fundamental(dk)):
        raise ValueError(f"scan_d_heegner: dk={dk} must be a negative fundamental discriminant")
    if not 4 <= X <= 10**7:
        raise ValueError(f"scan_d_heegner: X={X} outside [4, 10**7]")
    if N < 1:
        raise ValueError(f"scan_d_heegner: N={N} must be positive")
    t = _timer()
    mask = admissible_mask(dk, X, workers)
    half = X // 2
    count = int(mask.sum())
    count_half = int(mask[: half - 1].sum())
    c_full = count * math.sqrt(math.log(X)) / X
    c_half = count_half * math.sqrt(math.log(half)) / half
    ratio = c_full / c_half
    return ScanReport.make(
        label=f"heegner D-count dk={dk}",
        lo=1,
        hi=X,
        numerator=count,
        denominator=X - 1,
        bound=0.10,
        bound_kind="shape",
        runtime_ms=t(),
        extras={"count_half": count_half, "c_X": c_full, "c_half": c_half, "ratio": ratio},
        proportion=ratio,
    )


def f_of_x(X: int, workers: int = 1) -> tuple[Fraction, float, float | None]:
    """F(X) = (1/X) sum_{D <= X} 2^-omega(D), exactly, with (log X)^-kappa beside it."""
    om = sieve_omega(X, workers)
    hist = np.bincount(om.astype(np.int64))
    K = len(hist) - 1
    num = sum(int(c) << (K - k) for k, c in enumerate(hist))
    F = Fraction(num, X << K)
    ref = math.log(X) ** -KAPPA if X > 1 else None
    return F, float(F), ref


# -- Gaussian model -------------------------------------------------------------


def gaussian_moment_closed(mu: float, sigma: float) -> float:
    """E[2^-x] for x ~ Normal(mu, sigma^2)."""
    return math.exp(-LOG2 * mu + LOG2**2 * sigma**2 / 2)


def _model(X: float) -> tuple[float, float]:
    if X < 16:
        raise ValueError(f"Gaussian model needs X >= 16, got X={X}")
    n = math.log(math.log(X))
    return n, math.sqrt(n)


def _integrand(mu, sigma):
    c = 1 / (sigma * math.sqrt(2 * math.pi))
    return lambda x: math.exp(-LOG2 * x - 0.5 * ((x - mu) / sigma) ** 2) * c


def moment_quadrature(mu: float, sigma: float) -> float:
    """E[2^-x] by quadrature over the whole line."""
    val, _ = integrate.quad(_integrand(mu, sigma), -np.inf, np.inf, epsabs=QUAD_ABS_TOL, epsrel=1e-12, limit=200)
    return val


def s_of_x(X: float) -> float:
    """Integral of 2^-x times the Normal(N, N) density over [0, 2X]."""
    mu, sigma = _model(X)
    center = mu - sigma**2 * LOG2  # the weighted integrand is a shifted Gaussian
    # past center + 60 sigma the integrand is below 1e-780
    top = min(2 * X, center + 60 * sigma)
    val, _ = integrate.quad(_integrand(mu, sigma), 0, top, points=[center] if 0 < center < top else None, epsabs=QUAD_ABS_TOL, epsrel=1e-12, limit=200)
    return val


def a_of_x(X: float) -> float:
    """Integral over (-inf, 0]."""
    mu, sigma = _model(X)
    val, _ = integrate.quad(_integrand(mu, sigma), -np.inf, 0, epsabs=QUAD_ABS_TOL, epsrel=1e-12, limit=200)
    return val


def b_of_x(X: float) -> float:
    """Integral over [2X, inf), floored at 1e-300 when it underflows."""
    mu, sigma = _model(X)
    val, _ = integrate.quad(_integrand(mu, sigma), 2 * X, np.inf, epsabs=QUAD_ABS_TOL, epsrel=1e-12, limit=200)
    return max(val, UNDERFLOW_FLOOR)


def log_b_of_x(X: float) -> float:
    """log of the upper tail integral, computed through log_ndtr so it never underflows."""
    mu, sigma = _model(X)
    center = mu - sigma**2 * LOG2
    return math.log(gaussian_moment_closed(mu, sigma)) + float(special.log_ndtr(-(2 * X - center) / sigma))


def _upper(label, value, bound, X, asserting=True, log_space=False, **extras):
    ex = {"X": X, "asserting": asserting, **extras}
    if log_space:
        ex["log_space"] = True
    return ScanReport.make(label=label, lo=0, hi=X, numerator=0, denominator=0, bound=bound, bound_kind="upper", proportion=value, extras=ex)


def verify_model_bounds(X: int) -> list[ScanReport]:
    """Tail bounds and the S(X) sandwich at one X.

    Asserted: the proof-form bounds A < e^(-N/2)/sqrt(N) and B < e^(-2X^2/N)
    (compared as logs), and closed - A_bound - B_bound < S < closed.  The
    Gaussian-tail bound on log B that precedes the last simplification is
    reported alongside.  Reported only: the statement-form bound on A and
    its sandwich.
    """
    if X not in MODEL_GRID:
        raise ValueError(f"verify_model_bounds: X={X} not in {MODEL_GRID}")
    n, sigma = _model(X)
    closed = gaussian_moment_closed(n, sigma)
    S, A, B = s_of_x(X), a_of_x(X), b_of_x(X)
    logB = log_b_of_x(X)
    a_proof = math.exp(-n / 2) / math.sqrt(n)
    a_stmt = 1 / (math.sqrt(math.log(X)) * math.sqrt(X))
    log_b_bound = -2 * X * X / n
    # the bound before the final simplification, which drops +2X(1 - log 2) - N/2
    log_b_mid = -n / 2 * (1 - (1 - LOG2) ** 2) - (2 * X - (1 - LOG2) * n) ** 2 / (2 * n)
    b_bound = math.exp(log_b_bound)
    out = [
        _upper("A(X) proof-form bound", A, a_proof, X),
        _upper("log B(X) bound", logB, log_b_bound, X, log_space=True, quadrature_B=B),
        _upper("log B(X) intermediate bound", logB, log_b_mid, X, log_space=True),
        # S < closed; reported as S - closed < 0
        _upper("S(X) below closed form", S - closed, 0.0, X, S=S, closed=closed),
        # closed - A_bound - B_bound < S, reported as (lower - S) < 0
        _upper("S(X) above proof-form lower", closed - a_proof - b_bound - S, 0.0, X),
        _upper("A(X) statement-form bound", A, a_stmt, X, asserting=False),
        _upper("S(X) above statement-form lower", closed - a_stmt - b_bound - S, 0.0, X, asserting=False),
    ]
    return out


def partition_residual(X: float) -> float:
    n, sigma = _model(X)
    return abs(s_of_x(X) + a_of_x(X) + b_of_x(X) - gaussian_moment_closed(n, sigma))


# -- twists over Q -----------------------------------------------------------------


def _squarefree_mask(X: int) -> np.ndarray:
    sf = np.ones(X, dtype=bool)
    for p in primes_upto(math.isqrt(X) + 1):
        p = int(p)
        sf[:: p * p] = False
    return sf


def twist_parameters(N: int, X: int) -> list[int]:
    """Squarefree D with 0 < |D| < X and gcd(D, 6N) = 1, ordered 1, -1, 5, -5, ..."""
    sf = _squarefree_mask(X)
    bad = set(factorize(6 * N).primes)
    out = []
    for m in np.flatnonzero(sf):
        m = int(m)
        if m == 0 or any(m % p == 0 for p in bad):
            continue
        out.extend((m, -m))
    return out


def scan_rank_proportions_Q(N: int, w: int, X: int, oracle=None) -> tuple[ScanReport, ScanReport]:
    """Predicted rank 0 and rank 1 shares among twists E_D, |D| < X."""
    from .arith import fundamental_discriminant

    if math.gcd(N, 6) != 1:
        raise ValueError(f"scan_rank_proportions_Q: gcd(N, 6) != 1 for N={N}")
    if X > 10**6:
        raise ValueError(f"scan_rank_proportions_Q: X={X} > 10**6")
    t = _timer()
    oracle = oracle or ClassNumberOracle()
    Ds = twist_parameters(N, X)
    queries = [fundamental_discriminant(-3 * D) if D > 0 else fundamental_discriminant(D) for D in Ds]
    oracle.prefetch(queries)
    counts = [0, 0]
    for D, d in zip(Ds, queries):
        if oracle(d) % 3 == 0:
            continue
        counts[predicted_rank_Q(root_number_twist(w, D, N))] += 1
    bound = euler_phi(N) / (4 * N)
    ms = t()
    return tuple(
        ScanReport.make(
            label=f"rank{r} twists over Q N={N} w={w}",
            lo=-X,
            hi=X,
            numerator=counts[r],
            denominator=len(Ds),
            bound=bound,
            bound_kind="lower",
            runtime_ms=ms,
        )
        for r in (0, 1)
    )


def reports_to_json(reports) -> str:
    return "\n".join(json.dumps(r.as_dict(), sort_keys=False) for r in reports)
