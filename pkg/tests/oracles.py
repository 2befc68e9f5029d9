"""Independent oracles used by the test suite.

None of these reuse the package's LP or enumeration code: feasibility is
decided by Fourier-Motzkin elimination, hull membership by brute-force
down-closure on a grid, and truncation errors by direct summation of known
coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np

from reinhardt.domain import MonomialInequality, build_domain, contains_modulus
from reinhardt.errors import EmptyPiece
from reinhardt.geometry import interior_point


# ---------------------------------------------------------------- Fourier-Motzkin

def fm_feasible(rows, n: int) -> bool:
    """Nonemptiness of ``{x : a.x < b (strict) or a.x <= b}`` by elimination.

    ``rows`` holds ``(a, b, strict)`` with rational entries. Combining two
    rows yields a strict row iff either parent is strict, so strictness is
    tracked exactly.
    """
    rows = [(tuple(Fraction(v) for v in a), Fraction(b), bool(s)) for a, b, s in rows]
    for k in range(n):
        pos, neg, rest = [], [], []
        for a, b, s in rows:
            (pos if a[k] > 0 else neg if a[k] < 0 else rest).append((a, b, s))
        new = list(rest)
        for ap, bp, sp in pos:
            for an, bn, sn in neg:
                lp, ln = -an[k], ap[k]
                a = tuple(lp * x + ln * y for x, y in zip(ap, an))
                new.append((a, lp * bp + ln * bn, sp or sn))
        rows = _dedupe(new)
    for _, b, s in rows:
        if (s and not b > 0) or (not s and b < 0):
            return False
    return True


def _dedupe(rows):
    seen = {}
    for a, b, s in rows:
        g = max((abs(v) for v in a), default=0)
        if g:
            a = tuple(v / g for v in a)
            b = b / g
        key = (a, b)
        seen[key] = seen.get(key, False) or s
    return [(a, b, s) for (a, b), s in seen.items()]


# ---------------------------------------------------------------- random domains

def random_piece(rng, n: int = 2, max_ineq: int = 3, box=0):
    """A random list of monomial inequalities whose shadow contains a fat ball."""
    while True:
        k = int(rng.integers(1, max_ineq + 1))
        piece = []
        for _ in range(k):
            alpha = tuple(int(v) for v in rng.integers(-3, 4, size=n))
            if not any(alpha):
                continue
            rho = Fraction(int(rng.integers(-8, 3)), int(rng.integers(1, 3)))
            piece.append(MonomialInequality.from_multi_index(alpha, rho))
        try:
            d = build_domain([piece], box, dimension=n)
        except EmptyPiece:
            continue
        shadow = d.shadows[0]
        x, s = interior_point(shadow)
        width = max(math.hypot(*[float(a) for a in h.normal]) for h in shadow.halfspaces)
        if float(s) / width >= 0.25:
            return piece


def random_domain(seed: int, n: int = 2, max_pieces: int = 2, box=0):
    rng = np.random.default_rng(seed)
    pieces = [random_piece(rng, n, box=box) for _ in range(int(rng.integers(1, max_pieces + 1)))]
    return build_domain(pieces, box, dimension=n)


# ---------------------------------------------------------------- grid down-closure

def log_grid(lo: float, hi: float, cells: int):
    centres = lo + (np.arange(cells) + 0.5) * (hi - lo) / cells
    X1, X2 = np.meshgrid(centres, centres, indexing="ij")
    return X1, X2, (hi - lo) / cells


def grid_membership(d, X1, X2) -> np.ndarray:
    return np.asarray(contains_modulus(d, np.exp(np.stack([X1, X2]))), bool)


def down_closure(member: np.ndarray) -> np.ndarray:
    """``out[i, j]`` iff some ``member[i', j']`` with ``i' >= i`` and ``j' >= j``."""
    out = np.flip(np.logical_or.accumulate(np.flip(member, 0), 0), 0)
    return np.flip(np.logical_or.accumulate(np.flip(out, 1), 1), 1)


def near_facet(d, X1, X2, radius: float) -> np.ndarray:
    """Cells within ``radius`` of the boundary segment of some piece's shadow."""
    mask = np.zeros(X1.shape, bool)
    pts = np.stack([X1, X2], axis=-1)
    for shadow in d.shadows:
        for h in shadow.halfspaces:
            a = np.array([float(v) for v in h.normal])
            dist = np.abs(pts @ a - float(h.bound)) / np.linalg.norm(a)
            # project onto the hyperplane and keep only hits on the facet itself
            foot = pts - ((pts @ a - float(h.bound)) / (a @ a))[..., None] * a
            on_facet = np.ones(X1.shape, bool)
            for g in shadow.halfspaces:
                if g is h:
                    continue
                b = np.array([float(v) for v in g.normal])
                on_facet &= foot @ b <= float(g.bound) + radius * np.linalg.norm(b)
            mask |= (dist <= radius) & on_facet
    return mask


def grid_hull_mismatch(d, hull, lo: float, hi: float, cells: int):
    """Cells where ``hull`` disagrees with the grid down-closure of ``d``,
    excluding cells within one cell diagonal of a facet of ``hull`` or ``d``.

    Returns ``(bad_cells, checked_cells)``.
    """
    X1, X2, h = log_grid(lo, hi, cells)
    oracle = down_closure(grid_membership(d, X1, X2))
    computed = grid_membership(hull, X1, X2)
    diag = h * math.sqrt(2)
    skip = near_facet(hull, X1, X2, diag) | near_facet(d, X1, X2, diag)
    bad = (oracle != computed) & ~skip
    return int(bad.sum()), int((~skip).sum())


# ---------------------------------------------------------------- Taylor tails

def taylor_tail(coeff, z, K: int, L: int) -> float:
    """``|sum c_alpha z^alpha|`` over ``alpha in [0, L]^n`` with ``max alpha_j > K``.

    Summed term by term (``math.fsum`` on real and imaginary parts) so the
    result carries no cancellation against a large partial sum.
    """
    n = len(z)
    re, im = [], []
    for alpha in product(range(L + 1), repeat=n):
        if max(alpha) <= K:
            continue
        c = coeff(alpha)
        if c == 0:
            continue
        term = complex(c)
        for zj, a in zip(z, alpha):
            term *= complex(zj) ** a
        re.append(term.real)
        im.append(term.imag)
    return abs(complex(math.fsum(re), math.fsum(im)))


def random_laurent_polynomial(rng, n: int = 2, half: int = 8, terms: int = 12, w=None):
    """Random coefficients on indices in ``(-half, half)^n``.

    With radii ``w`` the coefficients are drawn relative to that torus,
    ``c_alpha = u_alpha / w^alpha`` with ``u_alpha`` standard complex normal,
    so the polynomial is of unit size on it.
    """
    w = np.ones(n) if w is None else np.asarray(w, float)
    coeffs = {}
    for _ in range(terms):
        alpha = tuple(int(v) for v in rng.integers(-half + 1, half, size=n))
        u = complex(rng.normal(), rng.normal())
        coeffs[alpha] = u / float(np.prod(w ** np.array(alpha, float)))

    def evaluate(z):
        out = np.zeros(z.shape[1:], dtype=complex)
        for alpha, c in coeffs.items():
            term = np.full(z.shape[1:], c)
            for j, a in enumerate(alpha):
                term = term * z[j] ** a
            out = out + term
        return out

    return coeffs, evaluate
