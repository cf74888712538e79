"""Invariant suites run by the `verify` command.

Each check is a ScanReport: residual checks are "upper" rows (value < tol),
count checks put the number of mismatches in `proportion` against 0.5.
Rows marked non-asserting are printed but never change the exit code unless
strict mode asks for it.
"""
from __future__ import annotations

import dataclasses
import math
import random

from .arith import primes_upto
from .characters import all_characters, bernoulli1, gauss_sum, g_normalized, is_primitive, quadratic_character
from .classno import class_number_analytic, class_number_forms, fundamental_negative_discriminants
from .curves import CurveModel, an_coefficients, ap_good, ap_naive, congruence_check, eisenstein_qexp, euler_factor_unit, find_residual_character
from .density import MODEL_GRID, ScanReport, gaussian_moment_closed, moment_quadrature, partition_residual, verify_model_bounds
from .lfunc import (
    l_value,
    verify_l1_log_sum,
    verify_l_prime_tau_form,
    verify_l_prime_g_form,
    verify_product_derivative,
    verify_l_prime_log_sum,
)
from .twists import MordellCurve, cubic_twist_congruence_check, g2, g3, g6

# statements that the numerics contradict; reported, asserted only in strict mode
KNOWN_FALSE = ("L'(0) = -(g/2) L(1, conj)", "log B(X) bound")


def _residual(label, value, tol, **extras):
    return ScanReport.make(label=label, lo=0, hi=0, numerator=0, denominator=0, bound=tol, bound_kind="upper", proportion=value, extras=extras)


def _mismatches(label, bad, total, lo=0, hi=0, **extras):
    return ScanReport.make(label=label, lo=lo, hi=hi, numerator=bad, denominator=total, bound=0.5, bound_kind="upper", proportion=float(bad), extras=extras)


def even_primitive(fmax: int = 20):
    for f in range(3, fmax + 1):
        for chi in all_characters(f):
            if chi.is_even and not chi.is_trivial and is_primitive(chi):
                yield chi


def character_checks(fmax: int = 20) -> list[ScanReport]:
    r1 = r2 = r3 = r4 = 0.0
    for f in range(2, fmax + 1):
        for chi in all_characters(f):
            if not is_primitive(chi):
                continue
            t, tb = gauss_sum(chi), gauss_sum(chi.conj())
            gt = g_normalized(chi) * tb
            r1 = max(r1, abs(abs(t) ** 2 - f))
            r2 = max(r2, abs(t * tb - chi(-1) * f))
            r3 = max(r3, abs(gt - chi(-1)))
            if chi.is_even:
                r4 = max(r4, abs(gt - 1))
    return [
        _residual("|tau|^2 = f", r1, 1e-9, fmax=fmax),
        _residual("tau(chi) tau(conj) = chi(-1) f", r2, 1e-9, fmax=fmax),
        _residual("g(chi) tau(conj) = chi(-1)", r3, 1e-10, fmax=fmax),
        _residual("g(chi) tau(conj) = 1 for even chi", r4, 1e-10, fmax=fmax),
    ]


PRODUCT_DERIVATIVE_PAIRS = ((5, -4), (8, -3), (12, -7))


def lfunc_checks(fmax: int = 20) -> list[ScanReport]:
    chis = list(even_primitive(fmax))
    odd = [c for f in range(3, fmax + 1) for c in all_characters(f) if not c.is_even and is_primitive(c)]
    l0 = max(abs(l_value(c, 0.0) + complex(bernoulli1(c))) for c in odd)
    rows = [
        _residual("L'(0) = (tau/2) L(1, conj)", max(map(verify_l_prime_tau_form, chis)), 1e-8, count=len(chis)),
        _residual("L'(0) = -(g/2) L(1, conj)", max(map(verify_l_prime_g_form, chis)), 1e-8, count=len(chis)),
        _residual("L'(0) = -(1/2) sum chi log C+", max(map(verify_l_prime_log_sum, chis)), 1e-8, count=len(chis)),
        _residual("L(1) = -(tau/f) sum conj(chi) log C+", max(map(verify_l1_log_sum, chis)), 1e-8, count=len(chis)),
        _residual("L(0, odd chi) = -B1", l0, 1e-10, count=len(odd)),
    ]
    for f, e in PRODUCT_DERIVATIVE_PAIRS:
        res = verify_product_derivative(quadratic_character(f), quadratic_character(e))
        rows.append(_residual(f"derivative of L(s,chi eps) L(s,chi) chi={f} eps={e}", res, 1e-6))
    return rows


def classno_checks(limit: int = 10**3) -> list[ScanReport]:
    ds = fundamental_negative_discriminants(limit)
    bad = sum(1 for d in ds if class_number_forms(d) != class_number_analytic(d))
    return [_mismatches("forms = analytic class numbers", bad, len(ds), lo=-limit)]


def random_curves(count: int, seed: int, height: int = 10**4):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a, b = rng.randint(-height, height), rng.randint(-height, height)
        if 4 * a**3 + 27 * b**2:
            out.append(CurveModel(a, b))
    return out


def hasse_checks(seed: int = 0, count: int = 100, lmax: int = 200, naive_max: int = 50) -> list[ScanReport]:
    over = naive_bad = tested = 0
    for c in random_curves(count, seed):
        for ell in primes_upto(lmax):
            ell = int(ell)
            if ell < 5 or c.discriminant % ell == 0:
                continue
            a = ap_good(c, ell)
            tested += 1
            over += a * a > 4 * ell
            if ell <= naive_max:
                naive_bad += a != ap_naive(c, ell)
    return [
        _mismatches("Hasse bound |a_l| <= 2 sqrt(l)", over, tested, seed=seed),
        _mismatches("Legendre trace = naive count", naive_bad, tested, seed=seed),
    ]


def congruence_checks(B: int = 1000, cubic_B: int = 2000) -> list[ScanReport]:
    c = CurveModel(0, 1)
    m_small, m_big = find_residual_character(c, 100), find_residual_character(c, B)
    rows = [_mismatches("residual character stable (B=100 vs B=1000)", int(m_small != m_big or m_big is None), 1, M=m_big)]
    if m_big is not None:
        fail = congruence_check(an_coefficients(c, 36, B), eisenstein_qexp(m_big, B), 3, [2, 3], B)
        rows.append(_mismatches(f"y^2=x^3+1 = E2(chi_{m_big}) mod 3", int(fail is not None), 1, first_failure=fail))
    for d in (2, 5, 7):
        fail = cubic_twist_congruence_check(1, d, 36, cubic_B)
        rows.append(_mismatches(f"cubic twist c=1 d={d} mod 3", int(fail is not None), 1, first_failure=fail))
    return rows


def composition_checks(height: int = 100) -> list[ScanReport]:
    bad = total = 0
    for c in range(-height, height + 1):
        if c == 0:
            continue
        m = MordellCurve(c)
        for D in range(-height, height + 1):
            if D == 0:
                continue
            total += 1
            x = g6(m, D)
            bad += not (x == g2(g3(g3(m, D), D), D) == g3(g2(m, D), D * D))
    return [_mismatches("g6 = g2 g3 g3 = g3(D^2) g2", bad, total)]


def euler_checks(limit: int = 10**4) -> list[ScanReport]:
    bad = total = 0
    for ell in primes_upto(limit):
        ell = int(ell)
        if ell == 3:
            continue
        total += 1
        bad += euler_factor_unit(ell, 3)[1] != (ell % 3 != 1)
    return [_mismatches("Euler factor vanishes mod 3 iff l = 1 mod 3", bad, total)]


def gaussian_checks(grid=MODEL_GRID) -> list[ScanReport]:
    rows = []
    for X in grid:
        n = math.log(math.log(X))
        closed = gaussian_moment_closed(n, math.sqrt(n))
        rows.append(_residual("closed moment vs quadrature (relative)", abs(closed - moment_quadrature(n, math.sqrt(n))) / closed, 1e-8, X=X))
        rows.append(_residual("S + A + B = closed", partition_residual(X), 1e-8, X=X))
        rows.extend(verify_model_bounds(X))
    return rows


def mark_known_false(rows, strict: bool = False) -> list[ScanReport]:
    """Demote KNOWN_FALSE rows to diagnostics; strict mode asserts every row."""
    if strict:
        return [dataclasses.replace(r, extras={**r.extras, "asserting": True}) for r in rows]
    return [
        dataclasses.replace(r, extras={**r.extras, "asserting": False}) if r.label in KNOWN_FALSE else r
        for r in rows
    ]


def default_suite(seed: int = 0, strict: bool = False) -> list[ScanReport]:
    rows = []
    for part in (
        character_checks(),
        lfunc_checks(),
        classno_checks(),
        hasse_checks(seed),
        congruence_checks(),
        composition_checks(),
        euler_checks(),
        gaussian_checks(),
    ):
        rows.extend(part)
    return mark_known_false(rows, strict)


def failures(rows) -> list[ScanReport]:
    return [r for r in rows if not r.passed and r.asserting]

