from __future__ import annotations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from twistrank.arith import is_squarefree, kronecker, primes_upto
from twistrank.curves import CurveModel, an_coefficients, ap_good, depletion
from twistrank.twists import (
    MordellCurve,
    cubic_twist_alt,
    cubic_twist_congruence_check,
    g2,
    g3,
    g6,
    minus_symbol,
    predicted_rank_Q,
    quadratic_twist,
    root_number_twist,
    twist_disc,
    twist_qexp,
    twisted_conductor,
    v3_free_part,
)

squarefree_params = st.integers(-200, 200).filter(lambda D: D not in (0, 1) and is_squarefree(D))
curves = st.tuples(st.integers(-500, 500), st.integers(-500, 500)).filter(lambda t: 4 * t[0] ** 3 + 27 * t[1] ** 2 != 0)


def test_mordell_curve():
    assert MordellCurve(5).model == CurveModel(0, 5)
    assert MordellCurve(5).j_invariant == 0
    with pytest.raises(ValueError):
        MordellCurve(0)


def test_quadratic_twist_examples():
    assert quadratic_twist(CurveModel(0, 1), -1) == CurveModel(0, -1)
    assert quadratic_twist(CurveModel(1, 1), 5) == CurveModel(25, 125)
    for bad in (0, 1, 12):
        with pytest.raises(ValueError):
            quadratic_twist(CurveModel(1, 1), bad)


@given(curves, squarefree_params, squarefree_params)
def test_twist_preserves_j(ab, D, E):
    c = CurveModel(*ab)
    assert quadratic_twist(c, D).j_invariant == c.j_invariant
    assert quadratic_twist(quadratic_twist(c, D), E).j_invariant == c.j_invariant


@given(curves, squarefree_params, st.sampled_from([int(p) for p in primes_upto(200) if p > 3]))
def test_twisted_trace_is_character_times_trace(ab, D, ell):
    c = CurveModel(*ab)
    t = quadratic_twist(c, D)
    assume(c.discriminant % ell and D % ell)
    assert ap_good(t, ell) == kronecker(twist_disc(D), ell) * ap_good(c, ell)
    if ell <= 50:
        assert ap_good(t, ell) == ell + 1 - oracles.projective_points(t.a, t.b, ell)


def test_twist_qexp_examples():
    s = an_coefficients(CurveModel(0, 1), 36, 200)
    tw = twist_qexp(s, 5)
    assert tw[7] == s[7] * kronecker(5, 7)
    assert tw[10] == 0 and tw[35] == 0
    assert twist_qexp(s, 1) == s


def test_twist_qexp_matches_twisted_curve():
    s = an_coefficients(CurveModel(0, 1), 36, 500)
    t = an_coefficients(quadratic_twist(CurveModel(0, 1), 5), 900, 500)
    tw = twist_qexp(s, 5)
    for n in range(1, 501):
        if n % 2 and n % 3 and n % 5:
            assert tw[n] == t[n]


@pytest.mark.parametrize("ell", [5, 7, 11])
def test_twist_commutes_with_depletion(ell):
    s = an_coefficients(CurveModel(0, 1), 36, 400)
    D = 13
    assert twist_qexp(depletion(s, ell), D) == depletion(twist_qexp(s, D), ell)


def test_twisted_conductor():
    assert twisted_conductor(11, 7) == 539
    assert twisted_conductor(17, 1) == 17
    assert twisted_conductor(17, 5) == 425
    with pytest.raises(ValueError, match="gcd"):
        twisted_conductor(35, 7)
    with pytest.raises(ValueError, match="even"):
        twisted_conductor(11, 2)
    with pytest.raises(ValueError, match="3 divides"):
        twisted_conductor(11, 3)


def test_composition_examples():
    m = MordellCurve(1)
    assert g6(m, 2) == g2(g3(g3(m, 2), 2), 2) == MordellCurve(2**7)
    m = MordellCurve(3)
    assert g6(m, 5) == g3(g2(m, 5), 25) == MordellCurve(3 * 5**7)
    assert g3(MordellCurve(7), 1) == MordellCurve(7)
    with pytest.raises(ValueError):
        g2(m, 0)


@given(st.integers(-100, 100).filter(bool), st.integers(-100, 100).filter(bool))
def test_composition_laws(c, D):
    m = MordellCurve(c)
    assert g6(m, D) == g2(g3(g3(m, D), D), D) == g3(g2(m, D), D * D)


def test_alternate_cubic_convention():
    assert cubic_twist_alt(MordellCurve(2), 5) == MordellCurve(10)


@pytest.mark.parametrize("d", [1, 2, 5, 7])
def test_cubic_twist_congruence(d):
    assert cubic_twist_congruence_check(1, d, 36, 2000) is None


def test_root_number_examples():
    assert root_number_twist(-1, 1, 11) == -1
    # 5 is a square mod 11, so the sign survives for D > 0
    assert kronecker(5, 11) == 1
    assert root_number_twist(-1, 5, 11) == -1
    assert root_number_twist(-1, -7, 11) == -(-kronecker(-7, 11))
    for bad in ((-1, 11, 11), (-1, 5, 15), (2, 5, 11)):
        with pytest.raises(ValueError):
            root_number_twist(*bad)


@given(st.integers(-2000, 2000).filter(bool), st.sampled_from([5, 7, 11, 13, 17, 35, 77, 143]))
def test_minus_symbol_is_kronecker_at_minus_n(D, N):
    assume(D % 5 and D % 7 and D % 11 and D % 13 and D % 17)
    assert minus_symbol(D, N) == kronecker(D, -N) == oracles.kronecker_literal(D, -N)


def test_predicted_rank():
    assert predicted_rank_Q(1) == 0 and predicted_rank_Q(-1) == 1
    for w in (1, -1):
        assert predicted_rank_Q(root_number_twist(w, 1, 17)) == (1 - w) // 2
    with pytest.raises(ValueError):
        predicted_rank_Q(0)


def test_v3_free_part():
    assert v3_free_part(54) == 2 and v3_free_part(85) == 85
