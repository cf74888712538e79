"""
Dirichlet characters and L-values at 0 and 1
=============================================

Gauss sums, B_1, and the functional-equation identity
L'(0, chi) = (tau(chi)/2) L(1, conj chi) for even primitive chi.
"""
from __future__ import annotations

import math

from twistrank.characters import all_characters, bernoulli1, conductor, gauss_sum, is_primitive, quadratic_character
from twistrank.lfunc import c_plus, l_prime_at_0, l_value, verify_l1_log_sum, verify_l_prime_tau_form, verify_l_prime_g_form

chi = quadratic_character(-4)
print("L(1, chi_-4) =", l_value(chi, 1.0).real, " pi/4 =", math.pi / 4)
print("B_1(chi_-4) =", bernoulli1(chi), " tau =", gauss_sum(chi))

# characters modulo 13: orders, parities, conductors
for i, c in enumerate(all_characters(13)):
    print(f"  #{i:2d} order {c.order:2d} {c.parity:4s} conductor {conductor(c)}")

# the identities over every even primitive character up to 20
evens = [c for f in range(3, 21) for c in all_characters(f) if c.is_even and not c.is_trivial and is_primitive(c)]
print(f"\n{len(evens)} even primitive characters")
print("  max |L'(0) - (tau/2) L(1, conj)|        =", max(map(verify_l_prime_tau_form, evens)))
print("  max |L(1) + (tau/f) sum conj log C+|     =", max(map(verify_l1_log_sum, evens)))
print("  max |L'(0) + (g/2) L(1, conj)|, g=tau/f  =", max(map(verify_l_prime_g_form, evens)))

# the normalized-g form misses by the factor -f; here is the ratio for chi_5
c5 = quadratic_character(5)
ratio = l_prime_at_0(c5) / (-(gauss_sum(c5) / 5) / 2 * l_value(c5, 1.0))
print(f"\nchi_5: L'(0) / (-(g/2) L(1)) = {ratio.real:.6f}  (that is -f)")
print("C+(1) mod 5 =", c_plus(5, 1))
