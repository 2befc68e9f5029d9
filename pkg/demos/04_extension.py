# %% [markdown]
# # Evaluating the extension outside the domain
#
# The point (0.5, 0.25) lies outside the Hartogs triangle but inside its
# envelope. We pick a torus inside the triangle that dominates the point,
# read Taylor coefficients off the FFT and sum them, with a rigorous bound on
# the dropped tail.
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from reinhardt import contains_modulus, multi_torus_extend, taylor_tail_bound
from reinhardt.corpus import builtin_function, hartogs_triangle

H = hartogs_triangle()
f = builtin_function("exp_linear(1,2)").function  # exp(z1 + 2 z2)
z = (0.5, 0.25)
print("inside the triangle:", contains_modulus(H, np.abs(z)))

res = multi_torus_extend(f, H, z, N=128, K=40)
print("torus:", res.torus.w)
print("value:", res.value, " exact:", math.e, " error:", abs(res.value - math.e))
print("tail bound:", res.tail_bound, " ratios |z|/w:", res.ratios)

# %% accuracy against degree
for K in (5, 10, 20, 30, 40, 60):
    r = multi_torus_extend(f, H, z, N=128, K=K)
    print(f"K={K:3d}  error={abs(r.value - math.e):.2e}  bound={r.tail_bound:.2e}")

# %% the tail bound is exact in rationals
print(taylor_tail_bound(1, [Fraction(1, 2)], 1))
print(taylor_tail_bound(Fraction(3), [Fraction(1, 3), Fraction(1, 4)], 4))
