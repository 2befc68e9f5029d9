"""Hand-written SVG figures of two-dimensional Reinhardt domains.

Left panel: the modulus shadow ``(|z_1|, |z_2|)`` on linear axes, shaded
cell by cell from membership at cell centres. Right panel: the log shadow
with exact polygon outlines of the pieces and hulls. Output is a pure
function of the inputs, so repeated runs are byte-identical.
"""

from __future__ import annotations

import html
import math
from typing import Sequence

import numpy as np

from .domain import ReinhardtDomain, contains_modulus
from .geometry import LogPolyhedron

WIDTH = HEIGHT = 800
PANEL = 320
LEFT = (60, 140)
RIGHT = (440, 140)
CELLS = 64

DOMAIN_FILL = "#2b5d9b"
COMPLETE_FILL = "#8fb3de"
ENVELOPE_FILL = "#dde8f5"


def _f(v: float) -> str:
    return f"{v:.2f}"


def _clip(poly: list[tuple[float, float]], a: tuple[float, float], b: float) -> list[tuple[float, float]]:
    """Sutherland-Hodgman clip against ``a . x <= b``."""
    out = []
    for i, p in enumerate(poly):
        q = poly[(i + 1) % len(poly)]
        fp = a[0] * p[0] + a[1] * p[1] - b
        fq = a[0] * q[0] + a[1] * q[1] - b
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def shadow_polygon(shadow: LogPolyhedron, lo: float, hi: float) -> list[tuple[float, float]]:
    poly = [(lo, lo), (hi, lo), (hi, hi), (lo, hi)]
    for h in shadow.halfspaces:
        poly = _clip(poly, (float(h.normal[0]), float(h.normal[1])), float(h.bound))
        if not poly:
            break
    return poly


class _Panel:
    def __init__(self, origin, lo, hi):
        self.x0, self.y0 = origin
        self.lo, self.hi = lo, hi

    def px(self, u: float, v: float) -> tuple[float, float]:
        s = PANEL / (self.hi - self.lo)
        return self.x0 + (u - self.lo) * s, self.y0 + PANEL - (v - self.lo) * s

    def frame(self, xlabel: str, ylabel: str) -> list[str]:
        x0, y0 = self.x0, self.y0
        return [
            f'<rect x="{x0}" y="{y0}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#000"/>',
            f'<text x="{x0 + PANEL / 2}" y="{y0 + PANEL + 36}" text-anchor="middle" font-size="14">{xlabel}</text>',
            f'<text x="{x0 - 40}" y="{y0 + PANEL / 2}" text-anchor="middle" font-size="14" '
            f'transform="rotate(-90 {x0 - 40} {y0 + PANEL / 2})">{ylabel}</text>',
            f'<text x="{x0}" y="{y0 + PANEL + 16}" text-anchor="middle" font-size="11">{_f(self.lo)}</text>',
            f'<text x="{x0 + PANEL}" y="{y0 + PANEL + 16}" text-anchor="middle" font-size="11">{_f(self.hi)}</text>',
            f'<text x="{x0 - 6}" y="{y0 + PANEL}" text-anchor="end" font-size="11">{_f(self.lo)}</text>',
            f'<text x="{x0 - 6}" y="{y0 + 4}" text-anchor="end" font-size="11">{_f(self.hi)}</text>',
        ]

    def polygon(self, pts, **attrs) -> str:
        if len(pts) < 3:
            return ""
        coords = " ".join(f"{_f(a)},{_f(b)}" for a, b in (self.px(*p) for p in pts))
        extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
        return f'<polygon points="{coords}" {extra}/>'

    def dot(self, u: float, v: float, color: str) -> str:
        x, y = self.px(u, v)
        return f'<circle cx="{_f(x)}" cy="{_f(y)}" r="4" fill="{color}"/>'


def render_svg(
    domain: ReinhardtDomain,
    complete: ReinhardtDomain | None = None,
    envelope: ReinhardtDomain | None = None,
    tori: Sequence[Sequence[float]] = (),
    title: str = "",
) -> str:
    if domain.dimension != 2:
        raise ValueError("plots are only available for n = 2")
    top = float(domain.box_log_radius)
    rmax = math.exp(top) * 1.05
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#fff"/>',
        f'<text x="{WIDTH / 2}" y="60" text-anchor="middle" font-size="20">{html.escape(title)}</text>',
    ]

    # modulus panel: cell-centre membership, innermost set drawn last
    mod = _Panel(LEFT, 0.0, rmax)
    centres = (np.arange(CELLS) + 0.5) * rmax / CELLS
    R1, R2 = np.meshgrid(centres, centres, indexing="ij")
    grid = np.stack([R1, R2])
    layers = [(envelope, ENVELOPE_FILL), (complete, COMPLETE_FILL), (domain, DOMAIN_FILL)]
    step = PANEL / CELLS
    for dom, color in layers:
        if dom is None:
            continue
        mask = contains_modulus(dom, grid)
        for i, j in zip(*np.nonzero(mask)):
            x = mod.x0 + i * step
            y = mod.y0 + PANEL - (j + 1) * step
            lines.append(f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(step)}" height="{_f(step)}" fill="{color}"/>')
    lines += mod.frame("|z1|", "|z2|")

    # log panel: exact polygons clipped to the view
    lows = [top - 4.0]
    for shadow in domain.shadows:
        verts, _ = shadow.generators
        lows += [float(min(v)) - 2.0 for v in verts]
    log_panel = _Panel(RIGHT, min(lows), top + 0.5)
    lo, hi = log_panel.lo, log_panel.hi
    if envelope is not None:
        for s in envelope.shadows:
            lines.append(log_panel.polygon(shadow_polygon(s, lo, hi), fill=ENVELOPE_FILL, stroke="#333", stroke_width="1.5"))
    if complete is not None:
        for s in complete.shadows:
            lines.append(log_panel.polygon(shadow_polygon(s, lo, hi), fill=COMPLETE_FILL, stroke="#333", stroke_dasharray="6 4"))
    for s in domain.shadows:
        lines.append(log_panel.polygon(shadow_polygon(s, lo, hi), fill=DOMAIN_FILL, fill_opacity="0.85", stroke="#123"))
    lines += log_panel.frame("log|z1|", "log|z2|")

    for w in tori:
        lines.append(mod.dot(w[0], w[1], "#c0392b"))
        lines.append(log_panel.dot(math.log(w[0]), math.log(w[1]), "#c0392b"))

    legend = [("domain", DOMAIN_FILL), ("complete hull", COMPLETE_FILL), ("log-convex hull", ENVELOPE_FILL)]
    for k, (label, color) in enumerate(legend):
        y = 540 + 26 * k
        lines.append(f'<rect x="60" y="{y}" width="18" height="18" fill="{color}" stroke="#333"/>')
        lines.append(f'<text x="86" y="{y + 14}" font-size="14">{label}</text>')
    if tori:
        lines.append('<circle cx="69" cy="627" r="4" fill="#c0392b"/>')
        lines.append('<text x="86" y="632" font-size="14">sampled tori</text>')
    lines.append("</svg>")
    return "\n".join(line for line in lines if line) + "\n"
