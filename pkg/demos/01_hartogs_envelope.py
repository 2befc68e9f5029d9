# %% [markdown]
# # The Hartogs triangle and its envelope
#
# The triangle {|z1| < |z2| < 1} is not log-convex near the origin, and every
# function holomorphic on it extends to the whole bidisc. In log coordinates
# x = log|z| the triangle is the wedge {x1 < x2 < 0}; adding the directions
# -e1 and -e2 and taking the convex hull gives the quadrant {x1 < 0, x2 < 0}.
from __future__ import annotations

from pathlib import Path

from reinhardt import complete_hull, envelope, origin_on_boundary
from reinhardt.corpus import hartogs_triangle, polydisc
from reinhardt.laurent import auto_tori
from reinhardt.svg import render_svg

H = hartogs_triangle()
print("pieces:", [[q.multi_index for q in piece] for piece in H.pieces])
print("origin on the boundary:", origin_on_boundary(H))

# %%
c = complete_hull(H)
e = envelope(H)
print("complete hull equals the bidisc:", c.hull.same_set(polydisc(2)))
print("envelope equals the bidisc:", e.hull.same_set(polydisc(2)))
for facet in e.provenance[0]:
    print("facet", facet)

# %% the log shadow, exactly
for h in e.hull.shadows[0].canonical():
    print("  <%s, x> < %s" % h)

# %% picture: modulus space on the left, log space on the right
tori = [t.w for t in auto_tori(H, 64)]
out = Path(__file__).with_name("hartogs.svg")
out.write_text(render_svg(H, c.hull, e.hull, tori, title="Hartogs triangle"))
print("wrote", out)
