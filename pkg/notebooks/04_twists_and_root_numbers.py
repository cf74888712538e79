"""
Twists of y^2 = x^3 + c
=======================

Quadratic, cubic and sextic twists act on c by D^3, D^2 and D^7.  Cubic
twists keep the coefficients mod 3 away from 3Nd.
"""
from __future__ import annotations

from twistrank.arith import kronecker
from twistrank.curves import CurveModel, an_coefficients, ap_good
from twistrank.twists import (
    MordellCurve,
    cubic_twist_congruence_check,
    g2,
    g3,
    g6,
    quadratic_twist,
    root_number_twist,
    twist_disc,
    twisted_conductor,
)

m = MordellCurve(1)
for D in (2, 5, -7):
    print(f"D={D:3d}: g2 -> c={g2(m, D).c}, g3 -> c={g3(m, D).c}, g6 -> c={g6(m, D).c}")

# quadratic twist multiplies a_p by the character of Q(sqrt D)
E = CurveModel(0, 1)
T = quadratic_twist(E, 5)
for p in (7, 11, 13, 17, 19):
    print(f"p={p}: a_p(E)={ap_good(E, p):3d}  a_p(E_5)={ap_good(T, p):3d}  chi_5(p)={kronecker(twist_disc(5), p):2d}")

print("\ncubic twists of y^2 = x^3 + 1, mod 3 agreement up to 2000:")
for d in (2, 5, 7, 11):
    print(f"  d={d}: {'ok' if cubic_twist_congruence_check(1, d, 36, 2000) is None else 'fails'}")

print("\nconductor of E_D for N=11, D=7:", twisted_conductor(11, 7))
N, w = 17, -1
signs = {D: root_number_twist(w, D, N) for D in (1, -1, 5, -5, 7, -7, 13)}
print(f"root numbers of twists of a conductor-{N} curve with w={w}:", signs)
print("a_n of y^2=x^3+1 twisted by 5 (first 12):", [an_coefficients(T, 900, 12)[n] for n in range(1, 13)])
