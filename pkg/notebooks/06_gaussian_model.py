"""
The Gaussian model for omega(D)
===============================

F(X) averages 2^-omega(D).  Modelling omega as Normal(N, N) with
N = log log X gives (log X)^-kappa; the integral splits into a body S and
two tails A and B.
"""
from __future__ import annotations

import math

from twistrank.density import KAPPA, MODEL_GRID, a_of_x, f_of_x, gaussian_moment_closed, log_b_of_x, s_of_x, verify_model_bounds

print(f"kappa = {KAPPA:.6f}")
for X in MODEL_GRID:
    F, Ff, ref = f_of_x(X)
    print(f"X=1e{round(math.log10(X))}: F(X) = {Ff:.5f}   (log X)^-kappa = {ref:.5f}")

print("\nbody and tails:")
for X in MODEL_GRID:
    n = math.log(math.log(X))
    closed = gaussian_moment_closed(n, math.sqrt(n))
    print(f"X=1e{round(math.log10(X))}: S={s_of_x(X):.6f} A={a_of_x(X):.3e} log B={log_b_of_x(X):.1f}  closed={closed:.6f}")

print("\nbound rows at X = 10^4:")
for r in verify_model_bounds(10**4):
    print("  ", r.summary())
