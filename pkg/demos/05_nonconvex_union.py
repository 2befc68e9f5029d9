# %% [markdown]
# # A union that is not log-convex
#
# Two slabs {|z1| < e^-2} and {|z2| < e^-2} inside the bidisc. The complete
# hull is still the union (both slabs are already complete), but the envelope
# fills in the corner between them with the facet |z1 z2| < e^-2.
from __future__ import annotations

from pathlib import Path

import numpy as np

from reinhardt import complete_hull, contains_modulus, domain_subset, envelope, is_log_convex
from reinhardt.corpus import nonconvex_union
from reinhardt.svg import render_svg

U = nonconvex_union()
verdict = is_log_convex(U, samples=400, seed=0)
print("log-convex:", verdict.status, "witness:", verdict.witness)

c = complete_hull(U).hull
e = envelope(U).hull
print("complete hull pieces:", len(c.pieces))
print("envelope multi-indices:", [q.multi_index for q in e.pieces[0]], "bounds:", [str(q.log_bound) for q in e.pieces[0]])

# %% the log-midpoint of the two lobes is in the envelope only
mid = np.exp([-1.5, -1.5])
print("midpoint in U:", contains_modulus(U, mid), " in envelope:", contains_modulus(e, mid))
print("envelope inside U?", domain_subset(e, U, probes=500, seed=2).status)

out = Path(__file__).with_name("nonconvex_union.svg")
out.write_text(render_svg(U, c, e, title="two slabs"))
print("wrote", out)
