from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from twistrank.arith import (
    Factorization,
    euler_phi,
    factorize,
    fundamental_discriminant,
    is_fundamental,
    is_prime,
    kronecker,
    omega,
    sieve_omega,
    squarefree_kernel,
    valuation,
)


@pytest.mark.parametrize(
    "n, expected",
    [(1, []), (12, [(2, 2), (3, 1)]), (539, [(7, 2), (11, 1)])],
)
def test_factorize_examples(n, expected):
    assert list(factorize(n)) == expected
    assert list(factorize(n)) == oracles.trial_factor(n)


def test_factorize_large_semiprime():
    p, q = 1_000_000_007, 998_244_353
    assert list(factorize(p * q)) == [(q, 1), (p, 1)]
    big = 2**61 - 1  # Mersenne prime
    assert list(factorize(big)) == [(big, 1)]
    assert list(factorize(2**63 - 1)) == [(7, 2), (73, 1), (127, 1), (337, 1), (92737, 1), (649657, 1)]


def test_factorize_rejects_out_of_range():
    for bad in (0, -5, 2**63):
        with pytest.raises(ValueError):
            factorize(bad)


def test_factorization_invariants_enforced():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        Factorization(12, ((2, 1), (3, 1)))


@given(st.integers(1, 10**12))
def test_factorize_product_and_order(n):
    f = factorize(n)
    prod = 1
    for p, e in f:
        assert is_prime(p) and e >= 1
        prod *= p**e
    assert prod == n
    assert list(f.primes) == sorted(set(f.primes))


@pytest.mark.parametrize("n, expected", [(1, 0), (12, 2), (30, 3)])
def test_omega_examples(n, expected):
    assert omega(n) == expected == oracles.omega_literal(n)


@pytest.mark.parametrize("ell, n, expected", [(3, 54, 3), (5, 12, 0), (2, 8, 3)])
def test_valuation_examples(ell, n, expected):
    assert valuation(ell, n) == expected


def test_valuation_rejects_composite():
    with pytest.raises(ValueError):
        valuation(4, 16)


def test_kronecker_examples():
    assert kronecker(-4, 7) == -1 == oracles.euler_legendre(-4, 7)
    assert kronecker(12, 3) == 0
    for D in (-7, 0, 5, 12):
        assert kronecker(D, 1) == 1
    with pytest.raises(ValueError):
        kronecker(0, 0)


def test_kronecker_matches_literal_definition():
    for D in range(-60, 61):
        for n in range(-60, 61):
            if D == 0 and n == 0:
                continue
            assert kronecker(D, n) == oracles.kronecker_literal(D, n), (D, n)


small = st.integers(-500, 500)


@given(small, small.filter(bool), small.filter(bool))
def test_kronecker_multiplicative(D, m, n):
    assert kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n)


@given(st.integers(-2000, 2000).filter(is_fundamental), st.integers(1, 5000))
def test_kronecker_periodic_in_fundamental_discriminant(d, n):
    assert kronecker(d, n) == kronecker(d, n + abs(d))


@pytest.mark.parametrize("m, d", [(-1, -4), (5, 5), (-3, -3), (2, 8), (12, 12), (-75, -3), (18, 8)])
def test_fundamental_discriminant_examples(m, d):
    assert fundamental_discriminant(m) == d == oracles.field_discriminant(m)


def test_fundamental_discriminant_rejects_squares():
    for m in (0, 1, 4, 49):
        with pytest.raises(ValueError):
            fundamental_discriminant(m)


@given(st.integers(-10**6, 10**6).filter(lambda m: m != 0 and not (m > 0 and int(m**0.5) ** 2 == m)))
def test_fundamental_discriminant_idempotent(m):
    d = fundamental_discriminant(m)
    assert is_fundamental(d)
    assert d % 4 in (0, 1)
    assert fundamental_discriminant(d) == d
    # same field: m / d is a rational square
    assert squarefree_kernel(m) == squarefree_kernel(d)


@pytest.mark.parametrize("n", [1, 11, 12, 97, 360])
def test_euler_phi(n):
    assert euler_phi(n) == oracles.phi_count(n)


def test_sieve_omega_examples():
    assert sieve_omega(1).tolist() == [0]
    assert sieve_omega(6).tolist() == [0, 1, 1, 1, 1, 2]
    assert sieve_omega(10)[9] == 2


def test_sieve_omega_matches_oracle():
    om = sieve_omega(10**4)
    assert all(om[n - 1] == oracles.omega_literal(n) for n in range(1, 10**4 + 1))


def test_sieve_omega_segments_and_workers_agree():
    a = sieve_omega(200_000)
    b = sieve_omega(200_000, workers=3, segment=7_777)
    assert np.array_equal(a, b)


def test_sieve_omega_range():
    for bad in (0, 10**8 + 1):
        with pytest.raises(ValueError):
            sieve_omega(bad)


def test_is_prime_against_trial_division():
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if oracles.is_prime(n)]
