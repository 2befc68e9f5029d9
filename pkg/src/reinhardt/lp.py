"""Two-phase primal simplex in exact rational arithmetic.

Solves ``maximize c.x  subject to  A x <= b`` with ``x`` free. Bland's rule
is used throughout, which is slow on large problems but cycle-free, and the
problems here are tiny.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rational import Vector, as_fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Vector | None = None
    value: Fraction | None = None

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def _pivot(T: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    p = T[row][col]
    T[row] = [v / p for v in T[row]]
    pr = T[row]
    for i, r in enumerate(T):
        if i != row and r[col] != 0:
            f = r[col]
            T[i] = [a - f * b for a, b in zip(r, pr)]
    basis[row] = col


def _run(T, basis, cost, allowed) -> str:
    """Iterate the simplex method on tableau ``T`` maximizing ``cost``.

    ``allowed`` lists the columns that may enter the basis.
    """
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            r = cost[j] - sum((cost[basis[i]] * T[i][j] for i in range(len(T))), Fraction(0))
            if r > 0:
                entering = j
                break
        if entering is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], entering)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """Maximize ``c.x`` over ``{x : A x <= b}`` exactly.

    An empty constraint list is allowed; the problem is then unbounded unless
    ``c`` is zero.
    """
    c = [as_fraction(v) for v in c]
    n = len(c)
    A = [[as_fraction(v) for v in row] for row in A]
    b = [as_fraction(v) for v in b]
    m = len(A)
    if any(len(row) != n for row in A) or len(b) != m:
        raise ValueError("inconsistent LP dimensions")
    if m == 0:
        if any(v != 0 for v in c):
            return LPResult(UNBOUNDED)
        return LPResult(OPTIMAL, tuple(Fraction(0) for _ in range(n)), Fraction(0))

    # columns: u (n) | v (n) | slack (m) | artificial (k) | rhs; x = u - v
    flipped = [bi < 0 for bi in b]
    n_art = sum(flipped)
    width = 2 * n + m + n_art
    T: list[list[Fraction]] = []
    basis: list[int] = []
    art = 2 * n + m
    for i in range(m):
        sign = -1 if flipped[i] else 1
        row = [Fraction(0)] * (width + 1)
        for j in range(n):
            row[j] = sign * A[i][j]
            row[n + j] = -sign * A[i][j]
        row[2 * n + i] = Fraction(sign)
        row[-1] = sign * b[i]
        if flipped[i]:
            row[art] = Fraction(1)
            basis.append(art)
            art += 1
        else:
            basis.append(2 * n + i)
        T.append(row)

    real_cols = list(range(2 * n + m))
    if n_art:
        cost1 = [Fraction(0)] * (2 * n + m) + [Fraction(-1)] * n_art
        _run(T, basis, cost1, list(range(width)))
        phase1 = sum((cost1[basis[i]] * T[i][-1] for i in range(len(T))), Fraction(0))
        if phase1 < 0:
            return LPResult(INFEASIBLE)
        # drive remaining artificial variables (at level zero) out of the basis
        i = 0
        while i < len(T):
            if basis[i] >= 2 * n + m:
                col = next((j for j in real_cols if T[i][j] != 0), None)
                if col is None:
                    del T[i]
                    del basis[i]
                    continue
                _pivot(T, basis, i, col)
            i += 1
        T = [row[: 2 * n + m] + [row[-1]] for row in T]

    cost = c + [-v for v in c] + [Fraction(0)] * m
    status = _run(T, basis, cost, real_cols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    y = [Fraction(0)] * (2 * n + m)
    for i, col in enumerate(basis):
        y[col] = T[i][-1]
    x = tuple(y[j] - y[n + j] for j in range(n))
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPResult(OPTIMAL, x, value)
