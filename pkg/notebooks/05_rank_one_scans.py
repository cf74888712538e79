"""
How often is a rank-1 twist predicted?
======================================

Scan imaginary quadratic fields K for the twist E_5 of a conductor-17
curve, then scan twists over Q.  Counts are exact; only the final ratio is
a float.
"""
from __future__ import annotations

from twistrank.assumptions import rank1_criterion
from twistrank.classno import ClassNumberOracle
from twistrank.density import scan_d_heegner, scan_discriminants, scan_rank_proportions_Q, scan_sextic

oracle = ClassNumberOracle(workers=2)

p = rank1_criterion(17, 5, -4, h=oracle)
print("N=17, D=5, dk=-4:", p.status.value)
for e in p.evidence:
    print(f"   {e.name:26s} {'pass' if e.passed else 'FAIL'}  ({e.witness})")

print("\nshare of dk with a rank-1 prediction, bound 1/8:")
for X in (10**3, 10**4, 5 * 10**4):
    r = scan_discriminants(17, 5, X, oracle)
    print(f"  X={X:>6}: {r.numerator:5d}/{r.denominator:5d} = {r.proportion:.4f}  {'>=' if r.passed else '<'} {r.bound}")

r = scan_sextic(1, 5, 10**4, 27, oracle)
print(f"\nsextic twist of y^2=x^3+1 by 5: {r.proportion:.4f} vs {r.bound}")

r0, r1 = scan_rank_proportions_Q(17, -1, 10**4, oracle)
print(f"\ntwists over Q, |D| < 10^4: rank 0 {r0.proportion:.4f}, rank 1 {r1.proportion:.4f}, bound {r0.bound:.4f}")

r = scan_d_heegner(-4, 1, 10**6, workers=2)
print(f"\nD built from primes 1 mod 4 up to 10^6: {r.numerator}, c(X)/c(X/2) = {r.proportion:.4f}")
