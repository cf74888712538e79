"""
Class numbers two ways
======================

Reduced binary quadratic forms on one side, the character sum B_1 on the
other.  They have to agree exactly.
"""
from __future__ import annotations

from collections import Counter

from twistrank.classno import (
    ClassNumberTable,
    class_number_analytic,
    class_number_forms,
    fundamental_negative_discriminants,
    nakagawa_horie_ratio,
)

# a few small fields
for d in (-3, -4, -7, -23, -47, -71):
    print(f"h({d}) = {class_number_forms(d)}  (analytic: {class_number_analytic(d)})")

# every imaginary quadratic field with |d| < 10^4
ds = fundamental_negative_discriminants(10**4)
ones = [d for d in ds if class_number_forms(d) == 1]
print("\nclass number one:", ones)

# the same numbers from a single vectorized sieve
table = ClassNumberTable(10**5)
hs = [table.h(d) for d in fundamental_negative_discriminants(10**5)]
mods = Counter(h % 3 for h in hs)
print(f"\n|d| < 10^5: {len(hs)} fields, h mod 3 distribution {dict(sorted(mods.items()))}")

# share of fields with 3 not dividing h, split by residue class
for m, M in ((1, 1), (1, 3), (2, 3), (2, 5)):
    r = nakagawa_horie_ratio(10**4, m, M)
    print(f"d = {m} mod {M}: {r.numerator}/{r.denominator} = {r.proportion:.3f}")
