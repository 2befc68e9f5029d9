# %% [markdown]
# # Reading obstructions off Laurent coefficients
#
# A function holomorphic on the Hartogs triangle has a Laurent expansion
# there. If it extends across the origin, every coefficient with a negative
# index vanishes. We sample on tori marching toward the origin, take the FFT
# and look at the negative part.
from __future__ import annotations

import numpy as np

from reinhardt import derivative_bound_scan, negative_part_report
from reinhardt.corpus import builtin_function, hartogs_triangle
from reinhardt.laurent import TorusSpec, auto_tori, window_for, windows_for

H = hartogs_triangle()
tori = auto_tori(H, 64)
print("tori:", [tuple(round(w, 5) for w in t.w) for t in tori])

# %% three functions: entire, a pole at z2 = 0, and a geometric series in z1/z2
for name in ["exp_linear(1,2)", "ratio", "geom"]:
    f = builtin_function(name).function
    report = negative_part_report(windows_for(f, tori), 1e-9)
    print(f"{name:16s} {report.verdict:10s} max|d| = {report.max_negative_magnitude:.2e} at {report.worst_alpha}")

# %% how fast does the worst coefficient of z1/z2 blow up as the torus shrinks?
ratio = builtin_function("ratio").function
shrinking = [TorusSpec((w2 / 2, w2), 64) for w2 in (0.6, 0.06, 0.006, 0.0006)]
scan = derivative_bound_scan(ratio, (1, -1), shrinking)
for spec, t in zip(shrinking, scan.values):
    print(f"w2 = {spec.w[1]:<7g} t = {t:12.4f}   t * w2 = {t * spec.w[1]:.6f}")
print("growth factors:", np.round(scan.growth_factors(), 3))

# %% the coefficients themselves: geom = sum (z1/z2)^m / z2
geom = builtin_function("geom")
win = window_for(geom.function, geom.reference_torus)
print([round(abs(win.c((m, -m - 1))), 12) for m in range(6)])
