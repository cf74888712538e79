"""Dirichlet characters, generalized Bernoulli numbers B_{1,chi} and Gauss sums.

Two representations share one class:

* Kronecker kind: chi_d(n) = (d/n) for a fundamental discriminant d, exact
  values in {-1, 0, 1}.
* Table kind: chi(a) = exp(2*pi*i * k_a / order) with integer exponents k_a,
  available for moduli up to 100.  Values are exact until converted to complex.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .arith import euler_phi, factorize, is_fundamental, kronecker

TABLE_LIMIT = 100


@dataclass(frozen=True)
class Character:
    """A Dirichlet character modulo `modulus`.

    For the Kronecker kind `disc` is set and `modulus == abs(disc)`; for the
    table kind `exps[a]` is the exponent of chi(a) (None off the units).
    """

    modulus: int
    disc: int | None = None
    order: int = 1
    exps: tuple[int | None, ...] | None = None

    @property
    def kind(self) -> str:
        return "kronecker" if self.disc is not None else "table"

    def __call__(self, n: int):
        if self.disc is not None:
            return kronecker(self.disc, n)
        k = self.exps[n % self.modulus]
        if k is None:
            return 0
        return _root_of_unity(k, self.order)

    def exponent(self, n: int) -> int | None:
        """k with chi(n) = exp(2 pi i k / order), or None when chi(n) = 0."""
        if self.disc is not None:
            v = kronecker(self.disc, n)
            return None if v == 0 else (0 if v == 1 else 1)
        return self.exps[n % self.modulus]

    @property
    def exponent_order(self) -> int:
        return 2 if self.disc is not None else self.order

    @cached_property
    def values(self) -> np.ndarray:
        """chi(a) for a = 0..modulus-1 as complex128."""
        return np.array([complex(self(a)) for a in range(self.modulus)])

    @cached_property
    def int_values(self) -> tuple[int, ...]:
        if self.disc is None:
            raise TypeError("int_values is only defined for Kronecker characters")
        return tuple(kronecker(self.disc, a) for a in range(self.modulus))

    @property
    def is_even(self) -> bool:
        if self.disc is not None:
            return self.disc > 0
        return self.modulus <= 2 or self.exps[self.modulus - 1] == 0

    @property
    def parity(self) -> str:
        return "even" if self.is_even else "odd"

    @property
    def is_trivial(self) -> bool:
        return all(k in (None, 0) for k in self._exps())

    def _exps(self) -> tuple[int | None, ...]:
        if self.exps is not None:
            return self.exps
        return tuple(self.exponent(a) for a in range(self.modulus))

    def conj(self) -> "Character":
        if self.disc is not None:
            return self
        return _make_table(
            self.modulus, self.order, tuple(None if k is None else (-k) % self.order for k in self.exps)
        )

    def as_table(self) -> "Character":
        if self.disc is None:
            return self
        return _make_table(self.modulus, 2, self._exps())

    def __mul__(self, other: "Character") -> "Character":
        if self.disc is not None and other.disc is not None and math.gcd(self.disc, other.disc) == 1:
            return quadratic_character(self.disc * other.disc)
        f = self.modulus * other.modulus // math.gcd(self.modulus, other.modulus)
        e = math.lcm(self.exponent_order, other.exponent_order)
        ua, ub = e // self.exponent_order, e // other.exponent_order
        exps = []
        for a in range(f):
            ka, kb = self.exponent(a), other.exponent(a)
            exps.append(None if ka is None or kb is None else (ka * ua + kb * ub) % e)
        return _make_table(f, e, tuple(exps))

    def __eq__(self, other):
        if not isinstance(other, Character) or self.modulus != other.modulus:
            return NotImplemented if not isinstance(other, Character) else False
        ea, eb = self.exponent_order, other.exponent_order
        e = math.lcm(ea, eb)
        for a in range(self.modulus):
            ka, kb = self.exponent(a), other.exponent(a)
            if (ka is None) != (kb is None):
                return False
            if ka is not None and (ka * (e // ea) - kb * (e // eb)) % e:
                return False
        return True

    def __hash__(self):
        e = self.exponent_order
        # normalize to lowest common order so equal characters hash equally
        ks = self._exps()
        g = e
        for k in ks:
            if k is not None:
                g = math.gcd(g, k)
        return hash((self.modulus, tuple(None if k is None else k // g for k in ks), e // g))

    def __repr__(self):
        if self.disc is not None:
            return f"Character(kronecker d={self.disc})"
        return f"Character(table f={self.modulus}, order={self.order}, exps={self.exps})"


def _root_of_unity(k: int, n: int) -> complex:
    k %= n
    if k == 0:
        return 1 + 0j
    if 2 * k == n:
        return -1 + 0j
    if 4 * k == n:
        return 1j
    if 4 * k == 3 * n:
        return -1j
    return cmath.exp(2j * math.pi * k / n)


def _make_table(f: int, order: int, exps: tuple[int | None, ...]) -> Character:
    # reduce the exponent order to the true order of the character
    g = order
    for k in exps:
        if k is not None:
            g = math.gcd(g, k)
    if g > 1:
        order //= g
        exps = tuple(None if k is None else k // g for k in exps)
    return Character(modulus=f, order=order, exps=exps)


def quadratic_character(d: int) -> Character:
    """chi_d(n) = (d/n) for a fundamental discriminant d."""
    if not is_fundamental(d):
        raise ValueError(f"quadratic_character: d={d} is not a fundamental discriminant")
    return Character(modulus=abs(d), disc=d)


def trivial_character(f: int = 1) -> Character:
    return _make_table(f, 1, tuple(0 if math.gcd(a, f) == 1 else None for a in range(f)))


def _unit_generators(f: int) -> list[tuple[int, int]]:
    """Generators of (Z/f)^x with their orders, as a direct product of cyclic groups."""
    gens = []
    for p, e in factorize(f):
        q = p**e
        rest = f // q
        local: list[tuple[int, int]] = []
        if p == 2:
            if e == 2:
                local = [(q - 1, 2)]
            elif e >= 3:
                local = [(q - 1, 2), (5, 2 ** (e - 2))]
        else:
            phi = q - q // p
            for g in range(2, q):
                if g % p and all(pow(g, phi // r, q) != 1 for r, _ in factorize(phi)):
                    local = [(g, phi)]
                    break
        for g, order in local:
            # lift: g mod q, 1 mod rest
            lifted = g if rest == 1 else (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % f
            gens.append((lifted, order))
    return gens


@lru_cache(maxsize=128)
def all_characters(f: int) -> tuple[Character, ...]:
    """Every Dirichlet character modulo f (f <= 100), in a fixed order."""
    if f < 1 or f > TABLE_LIMIT:
        raise ValueError(f"all_characters: modulus f={f} outside [1, {TABLE_LIMIT}]")
    gens = _unit_generators(f)
    orders = [o for _, o in gens]
    e = math.lcm(*orders) if orders else 1
    logs: dict[int, tuple[int, ...]] = {}
    for combo in itertools.product(*(range(o) for o in orders)):
        a = 1
        for (g, _), k in zip(gens, combo):
            a = a * pow(g, k, f) % f
        logs[a % f] = combo
    if f == 1:
        logs = {0: ()}
    assert len(logs) == euler_phi(f)
    chars = []
    for ks in itertools.product(*(range(o) for o in orders)):
        exps = []
        for a in range(f):
            lg = logs.get(a)
            if lg is None:
                exps.append(None)
            else:
                exps.append(sum(k * l * (e // o) for k, l, o in zip(ks, lg, orders)) % e)
        chars.append(_make_table(f, e, tuple(exps)))
    return tuple(chars)


def conductor(chi: Character) -> int:
    """Smallest f' | f such that chi(a) = 1 for every unit a = 1 mod f'."""
    if chi.disc is not None:
        return abs(chi.disc)
    f = chi.modulus
    for fp in sorted(d for d in range(1, f + 1) if f % d == 0):
        if all(chi.exps[a] == 0 for a in range(1, f, fp) if chi.exps[a] is not None):
            return fp
    return f


def is_primitive(chi: Character) -> bool:
    return conductor(chi) == chi.modulus


def primitive_characters(f: int) -> list[Character]:
    return [chi for chi in all_characters(f) if is_primitive(chi)]


def bernoulli1(chi: Character):
    """B_{1,chi} = sum_a chi(a) (a/f - 1/2) over a = 1..f.

    Equal to (1/f) sum a chi(a) for every nontrivial chi; the trivial
    character modulo 1 gives 1/2.  Exact Fraction for Kronecker characters,
    complex for table characters.
    """
    f = chi.modulus
    if chi.disc is not None:
        total = sum(a * v for a, v in enumerate(chi.int_values) if a)
        total += f * chi.int_values[0]  # a = f term
        s = sum(chi.int_values)
        return Fraction(total, f) - Fraction(s, 2)
    vals = chi.values
    a = np.arange(1, f + 1)
    v = vals[a % f]
    return complex(np.sum(v * (a / f - 0.5)))


def gauss_sum(chi: Character) -> complex:
    """tau(chi) = sum_{a mod f} chi(a) exp(2 pi i a / f), chi primitive."""
    if not is_primitive(chi):
        raise ValueError(f"gauss_sum: {chi!r} is not primitive")
    f = chi.modulus
    e = chi.exponent_order
    total = 0j
    # combine chi(a) * zeta_f^a into one root of unity of order e*f
    for a in range(f):
        k = chi.exponent(a)
        if k is None:
            continue
        total += _root_of_unity(k * f + a * e, e * f)
    return total


def g_normalized(chi: Character) -> complex:
    """g(chi) = tau(chi) / f."""
    return gauss_sum(chi) / chi.modulus
