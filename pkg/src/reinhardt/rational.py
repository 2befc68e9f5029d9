"""Exact linear algebra over the rationals.

Small dense routines on lists of :class:`fractions.Fraction`. Everything here
is sized for polyhedra in dimension <= 3 with a few dozen constraints, so no
attempt is made at being clever about fill-in or pivot order beyond what
exactness needs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal strings and ``"p/q"`` strings exactly.

    Floats are converted by their exact binary value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    # numpy scalars and the like
    if hasattr(value, "item"):
        return as_fraction(value.item())
    raise TypeError(f"cannot interpret {value!r} as a rational number")


def as_vector(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector positively to a coprime integer vector."""
    fr = [as_fraction(v) for v in vec]
    if all(v == 0 for v in fr):
        raise ValueError("zero vector has no primitive form")
    lcm = 1
    for v in fr:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in fr]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    return tuple(v // g for v in ints)


def row_reduce(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (rref rows, pivot columns)."""
    m = [list(map(as_fraction, r)) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(row_reduce(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : rows @ x = 0}; vectors have ``ncols`` entries."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    rref, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(rref, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_square(matrix: Sequence[Sequence], rhs: Sequence) -> Vector | None:
    """Solve a square system exactly; ``None`` when singular."""
    n = len(matrix)
    aug = [list(map(as_fraction, row)) + [as_fraction(b)] for row, b in zip(matrix, rhs)]
    rref, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return tuple(row[n] for row in rref)
