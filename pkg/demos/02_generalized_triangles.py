# %% [markdown]
# # Mixed-sign generalized triangles
#
# H(alpha) = {|z1|^a1 |z2|^a2 < 1} inside the bidisc, with one exponent
# negative. Each one is a wedge in log space whose envelope is again the
# quadrant, computed here in exact rationals and then checked against a
# brute-force grid.
from __future__ import annotations

import numpy as np

from reinhardt import contains_modulus, envelope, is_log_convex
from reinhardt.corpus import generalized_hartogs, polydisc

BIDISC = polydisc(2)
xs = np.linspace(-6, 0, 241)[1:-1]
X1, X2 = np.meshgrid(xs, xs, indexing="ij")
R = np.exp(np.stack([X1.ravel(), X2.ravel()]))  # moduli along the first axis

for alpha in [(2, -1), (1, -2), (3, -2), (5, -3)]:
    d = generalized_hartogs(alpha)
    env = envelope(d).hull
    inside = contains_modulus(d, R).mean()
    print(f"H{alpha}: log-convex={is_log_convex(d).status:10s} "
          f"area fraction of the [-6,0]^2 box={inside:.3f}  envelope=bidisc: {env.same_set(BIDISC)}")

# %% the wedge opens toward -infinity, so the down-closure already fills the quadrant
d = generalized_hartogs((3, -2))
for normal, bound in d.shadows[0].canonical():
    print(f"  <{normal}, x> < {bound}")
