from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from twistrank.arith import euler_phi, is_fundamental
from twistrank.characters import (
    all_characters,
    bernoulli1,
    conductor,
    g_normalized,
    gauss_sum,
    is_primitive,
    quadratic_character,
    trivial_character,
)

fundamentals = st.integers(-10**4, 10**4).filter(lambda d: d != 1 and is_fundamental(d))


def test_quadratic_character_examples():
    assert quadratic_character(-4)(3) == -1 == oracles.euler_legendre(-4, 3)
    assert quadratic_character(5)(-1) == 1
    assert quadratic_character(-3)(2) == -1
    with pytest.raises(ValueError):
        quadratic_character(12 * 4)


@given(fundamentals, st.integers(-10**4, 10**4))
def test_quadratic_character_is_kronecker(d, n):
    chi = quadratic_character(d)
    assert chi.modulus == abs(d)
    assert chi(n) == oracles.kronecker_literal(d, n)
    assert chi.is_even == (d > 0)


def test_all_characters_counts():
    chars = all_characters(1)
    assert len(chars) == 1 and chars[0](1) == 1
    assert len(all_characters(5)) == 4
    eights = all_characters(8)
    assert len(eights) == 4
    assert all(abs(c(a) ** 2 - 1) < 1e-12 for c in eights for a in (1, 3, 5, 7))
    with pytest.raises(ValueError):
        all_characters(101)


@pytest.mark.parametrize("f", range(1, 31))
def test_characters_form_group(f):
    chars = all_characters(f)
    assert len(chars) == euler_phi(f)
    assert len(set(chars)) == len(chars)
    group = set(chars)
    for a in chars:
        assert a.conj() in group
        for b in chars[:6]:
            assert a * b in group


@pytest.mark.parametrize("f", [5, 7, 9, 12, 13, 16, 21])
def test_character_axioms(f):
    for chi in all_characters(f):
        for a in range(f):
            v = chi(a)
            if math.gcd(a, f) > 1:
                assert v == 0
            else:
                assert abs(abs(v) - 1) < 1e-12
                for b in range(1, f):
                    if math.gcd(b, f) == 1:
                        assert abs(chi(a * b) - v * chi(b)) < 1e-12


def test_conductor_examples():
    assert conductor(trivial_character(6)) == 1
    assert conductor(quadratic_character(-4)) == 4
    induced = quadratic_character(-3) * trivial_character(9)
    assert induced.modulus == 9
    assert conductor(induced) == 3
    assert not is_primitive(induced)


def test_bernoulli_examples():
    assert bernoulli1(quadratic_character(-4)) == Fraction(-1, 2)
    assert bernoulli1(quadratic_character(-3)) == Fraction(-1, 3)
    assert bernoulli1(trivial_character(1)) == Fraction(1, 2)


@given(fundamentals.filter(lambda d: d > 1))
def test_bernoulli_vanishes_for_even_kronecker(d):
    assert bernoulli1(quadratic_character(d)) == 0


@given(fundamentals.filter(lambda d: d < -4))
def test_bernoulli_is_class_number(d):
    h = len(oracles.reduced_forms(d))
    assert abs(bernoulli1(quadratic_character(d))) == h


def test_bernoulli_table_matches_kronecker():
    for d in (-4, -3, 5, 8, -7, 12):
        chi = quadratic_character(d)
        assert abs(bernoulli1(chi.as_table()) - float(bernoulli1(chi))) < 1e-12


def test_gauss_sum_examples():
    assert abs(gauss_sum(quadratic_character(-4)) - 2j) < 1e-12
    assert abs(gauss_sum(quadratic_character(5)) - math.sqrt(5)) < 1e-12
    assert abs(g_normalized(quadratic_character(-4)) - 0.5j) < 1e-12
    assert abs(g_normalized(quadratic_character(5)) - 1 / math.sqrt(5)) < 1e-12


def test_gauss_sum_rejects_imprimitive():
    with pytest.raises(ValueError):
        gauss_sum(trivial_character(6))


def _primitive(fmax=20):
    for f in range(2, fmax + 1):
        for chi in all_characters(f):
            if is_primitive(chi):
                yield chi


def test_gauss_sum_against_direct_sum():
    for chi in _primitive():
        direct = oracles.gauss_sum_direct(chi.values, chi.modulus)
        t = gauss_sum(chi)
        assert abs(t - direct) < 1e-9
        assert abs(abs(t) ** 2 - chi.modulus) < 1e-9


def test_gauss_sum_pairing():
    # tau(chi) tau(conj) = chi(-1) f, hence g(chi) tau(conj) = chi(-1)
    for chi in _primitive():
        tb = gauss_sum(chi.conj())
        assert abs(gauss_sum(chi) * tb - chi(-1) * chi.modulus) < 1e-9
        assert abs(g_normalized(chi) * tb - chi(-1)) < 1e-10
        if chi.is_even:
            assert abs(g_normalized(chi) * tb - 1) < 1e-10


def test_values_array():
    chi = quadratic_character(-4)
    assert np.allclose(chi.values, [0, 1, 0, -1])
    assert cmath.isclose(chi.as_table()(3), -1)
