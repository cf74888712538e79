"""
Point counts, q-expansions and a mod 3 Eisenstein congruence
============================================================

y^2 = x^3 + 1 has a rational 3-torsion point, so its coefficients agree
mod 3 with an Eisenstein series away from 2 and 3.
"""
from __future__ import annotations

import numpy as np

from twistrank.curves import CurveModel, an_coefficients, ap_good, congruence_check, depletion, eisenstein_qexp, find_residual_character

E = CurveModel(0, 1)
print(E, " discriminant", E.discriminant, " j =", E.j_invariant)

s = an_coefficients(E, 36, 60)
print("a_1..a_30:", [s[n] for n in range(1, 31)])

M = find_residual_character(E, 1000)
print("residual character label:", M)
B = 5000
f = an_coefficients(E, 36, B)
e = eisenstein_qexp(M, B)
print("first failure of f = E2 mod 3 away from 2, 3:", congruence_check(f, e, 3, [2, 3]))

# a curve with no such congruence
F = CurveModel(-1, 1)
print(F, "residual character:", find_residual_character(F, 1000))

# Hasse bound across many primes
ratios = np.array([abs(ap_good(F, p)) / (2 * p**0.5) for p in range(5, 2000) if all(p % q for q in range(2, int(p**0.5) + 1)) and F.discriminant % p])
print(f"max |a_p| / 2 sqrt(p) over p < 2000: {ratios.max():.3f}")

# depletion at 5 wipes every multiple of 5
d = depletion(f, 5)
print("nonzero depleted coefficients at multiples of 5:", int(np.count_nonzero(d.coeffs[4::5])))
