"""Exact polyhedra in log-coordinate space.

A Reinhardt domain is determined by its image under
``z -> (log|z_1|, ..., log|z_n|)``. For the domains handled here that image
is a finite union of polyhedra with rational data, and all of the geometry
(feasibility, recession cones, vertex and facet enumeration) is done on those
polyhedra with :class:`fractions.Fraction` arithmetic.

Vertex and facet enumeration are brute force over subsets of constraints and
are limited to dimension 3.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import lp
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    EmptyPolyhedron,
    UnsupportedDimension,
)
from .rational import Vector, as_fraction, as_vector, dot, nullspace, primitive, rank, solve_square

MAX_ENUM_DIMENSION = 3

__all__ = [
    "HalfSpace",
    "LogPolyhedron",
    "Feasibility",
    "lp_feasible",
    "interior_point",
    "recession_contains",
    "joint_negative_recession",
    "negative_recession_direction",
    "enumerate_generators",
    "hull_from_generators",
    "remove_redundant",
]


@dataclass(frozen=True)
class HalfSpace:
    """``{x : <normal, x> < bound}`` (or ``<=`` when not strict)."""

    normal: Vector
    bound: Fraction
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "normal", as_vector(self.normal))
        object.__setattr__(self, "bound", as_fraction(self.bound))
        if not self.normal or all(v == 0 for v in self.normal):
            raise ValueError("half-space normal must be nonzero")

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, as_vector(x))

    def contains(self, x: Sequence) -> bool:
        v = self.value(x)
        return v < self.bound if self.strict else v <= self.bound

    def closure_contains(self, x: Sequence) -> bool:
        return self.value(x) <= self.bound

    def normalized(self) -> tuple[tuple[int, ...], Fraction]:
        """Positive rescaling making the normal a coprime integer vector."""
        prim = primitive(self.normal)
        k = next(p / v for p, v in zip(prim, self.normal) if v != 0)
        return prim, self.bound * k


@dataclass(frozen=True)
class LogPolyhedron:
    dimension: int
    halfspaces: tuple[HalfSpace, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        for h in self.halfspaces:
            if h.dimension != self.dimension:
                raise DimensionMismatch(
                    f"half-space of dimension {h.dimension} in a polyhedron of dimension {self.dimension}"
                )

    @classmethod
    def from_inequalities(cls, rows: Iterable[tuple[Sequence, object]], strict: bool = True) -> "LogPolyhedron":
        rows = list(rows)
        if not rows:
            raise ValueError("cannot infer dimension from an empty inequality list")
        hs = tuple(HalfSpace(a, b, strict) for a, b in rows)
        return cls(hs[0].dimension, hs)

    def with_halfspaces(self, extra: Iterable[HalfSpace]) -> "LogPolyhedron":
        return LogPolyhedron(self.dimension, self.halfspaces + tuple(extra))

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.halfspaces)

    def closure_contains(self, x: Sequence) -> bool:
        return all(h.closure_contains(x) for h in self.halfspaces)

    def matrix(self) -> tuple[list[Vector], list[Fraction]]:
        return [h.normal for h in self.halfspaces], [h.bound for h in self.halfspaces]

    @cached_property
    def feasibility(self) -> "Feasibility":
        return lp_feasible(self)

    def is_empty(self) -> bool:
        return not self.feasibility.feasible

    @cached_property
    def generators(self) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
        return enumerate_generators(self)

    def canonical(self) -> tuple[tuple[tuple[int, ...], Fraction], ...]:
        """Sorted, irredundant, normalized H-representation.

        Two nonempty open polyhedra are equal as sets iff their canonical
        forms are equal.
        """
        return tuple(sorted({h.normalized() for h in remove_redundant(self).halfspaces}))

    def same_set(self, other: "LogPolyhedron") -> bool:
        if self.dimension != other.dimension:
            return False
        return self.canonical() == other.canonical()


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: Vector | None = None

    @property
    def status(self) -> str:
        return "Feasible" if self.feasible else "Infeasible"

    def __bool__(self) -> bool:
        return self.feasible


def _check(p: LogPolyhedron) -> None:
    for h in p.halfspaces:
        if h.dimension != p.dimension:
            raise DimensionMismatch("half-spaces disagree on the dimension")


def interior_point(
    p: LogPolyhedron,
    extra: Sequence[HalfSpace] = (),
    cap: Fraction = Fraction(1),
) -> tuple[Vector, Fraction] | None:
    """Maximize a common slack ``s`` with ``<a, x> + s <= b`` on every
    strict constraint (``extra`` included), capped at ``cap``.

    Returns ``(x, s)`` or ``None`` if even the closed system is infeasible.
    Non-strict constraints are imposed without slack.
    """
    n = p.dimension
    rows, rhs = [], []
    for h in tuple(p.halfspaces) + tuple(extra):
        rows.append(list(h.normal) + [Fraction(1) if h.strict else Fraction(0)])
        rhs.append(h.bound)
    rows.append([Fraction(0)] * n + [Fraction(1)])
    rhs.append(as_fraction(cap))
    res = lp.maximize([Fraction(0)] * n + [Fraction(1)], rows, rhs)
    if res.status == lp.INFEASIBLE:
        return None
    assert res.optimal, res.status
    return res.x[:n], res.x[n]


def lp_feasible(p: LogPolyhedron) -> Feasibility:
    """Decide nonemptiness exactly.

    Strict inequalities are handled by maximizing a shared slack variable and
    requiring the optimum to be positive.
    """
    _check(p)
    if not p.halfspaces:
        return Feasibility(True, tuple(Fraction(0) for _ in range(p.dimension)))
    found = interior_point(p)
    if found is None:
        return Feasibility(False)
    x, s = found
    if any(h.strict for h in p.halfspaces) and s <= 0:
        return Feasibility(False)
    return Feasibility(True, x)


def recession_contains(p: LogPolyhedron, d: Sequence) -> bool:
    """True iff ``<normal_i, d> <= 0`` for every half-space.

    For an empty polyhedron the answer is vacuous; a warning is emitted.
    """
    _check(p)
    d = as_vector(d)
    if len(d) != p.dimension:
        raise DimensionMismatch(f"direction has length {len(d)}, expected {p.dimension}")
    if p.is_empty():
        warnings.warn("recession cone of an empty polyhedron queried", RuntimeWarning, stacklevel=2)
    return all(dot(h.normal, d) <= 0 for h in p.halfspaces)


def negative_recession_direction(p: LogPolyhedron, coords: Iterable[int]) -> Vector | None:
    """A recession direction with ``d_j <= -1`` for ``j`` in ``coords``, or ``None``.

    Among such directions the one maximizing ``sum_j d_j`` is returned, which
    keeps the step toward the origin as short as possible.
    """
    _check(p)
    if p.is_empty():
        raise EmptyPolyhedron("recession query on an empty polyhedron")
    n = p.dimension
    coords = sorted(set(coords))
    if any(j < 0 or j >= n for j in coords):
        raise DimensionMismatch(f"coordinate index out of range for dimension {n}")
    rows = [list(h.normal) for h in p.halfspaces]
    rhs = [Fraction(0)] * len(rows)
    for j in coords:
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        rows.append(e)
        rhs.append(Fraction(-1))
    # maximize sum(d) over the selected coordinates, bounded by d_j <= -1
    c = [Fraction(1) if j in coords else Fraction(0) for j in range(n)]
    res = lp.maximize(c, rows, rhs)
    if res.status == lp.INFEASIBLE:
        return None
    if res.status == lp.UNBOUNDED:
        # cannot happen when coords is nonempty; with no coords, 0 works
        return tuple(Fraction(0) for _ in range(n))
    return res.x


def joint_negative_recession(p: LogPolyhedron, coords: Iterable[int]) -> bool:
    """Is there a recession direction ``d`` with ``d_j <= -1`` for all ``j`` in ``coords``?

    ``coords`` are zero-based coordinate indices.
    """
    return negative_recession_direction(p, coords) is not None


def _lineality(normals: list[Vector], n: int) -> list[Vector]:
    return nullspace(normals, n) if normals else nullspace([], n)


def enumerate_generators(p: LogPolyhedron) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """Exact V-representation of the closure of ``p``.

    Returns ``(vertices, rays)`` with rays as primitive integer directions.
    When ``p`` has a lineality space, vertices are those of its section by the
    orthogonal complement and each lineality basis vector appears as a ray in
    both orientations.
    """
    _check(p)
    n = p.dimension
    if n > MAX_ENUM_DIMENSION:
        raise UnsupportedDimension(f"generator enumeration needs dimension <= {MAX_ENUM_DIMENSION}, got {n}")
    if p.is_empty():
        raise EmptyPolyhedron("cannot enumerate generators of an empty polyhedron")
    normals, bounds = p.matrix()
    lin = _lineality(normals, n)
    k = n - len(lin)

    vertices: set[Vector] = set()
    for subset in itertools.combinations(range(len(normals)), k):
        mat = [normals[i] for i in subset] + list(lin)
        rhs = [bounds[i] for i in subset] + [Fraction(0)] * len(lin)
        x = solve_square(mat, rhs)
        if x is not None and p.closure_contains(x):
            vertices.add(x)

    rays: set[tuple[int, ...]] = set()
    if k >= 1:
        for subset in itertools.combinations(range(len(normals)), k - 1):
            mat = [normals[i] for i in subset] + list(lin)
            ns = nullspace(mat, n)
            if len(ns) != 1:
                continue
            u = ns[0]
            for cand in (u, tuple(-v for v in u)):
                if all(dot(a, cand) <= 0 for a in normals):
                    rays.add(primitive(cand))
    for v in lin:
        prim = primitive(v)
        rays.add(prim)
        rays.add(tuple(-x for x in prim))
    return (
        tuple(sorted(vertices)),
        tuple(sorted(tuple(Fraction(x) for x in r) for r in rays)),
    )


def remove_redundant(p: LogPolyhedron) -> LogPolyhedron:
    """Drop half-spaces implied by the others (LP check on closures).

    Exact duplicates after normalization are collapsed first. Meant for
    full-dimensional polyhedra, where closure redundancy and open redundancy
    agree.
    """
    _check(p)
    seen: dict[tuple, HalfSpace] = {}
    for h in p.halfspaces:
        key = h.normalized()
        if key not in seen:
            seen[key] = h
    kept = list(seen.values())
    i = 0
    while i < len(kept):
        others = kept[:i] + kept[i + 1 :]
        h = kept[i]
        res = lp.maximize(h.normal, [o.normal for o in others], [o.bound for o in others])
        if res.optimal and res.value <= h.bound:
            del kept[i]
        else:
            i += 1
    return LogPolyhedron(p.dimension, tuple(kept))


def hull_from_generators(vertices: Sequence[Sequence], rays: Sequence[Sequence] = ()) -> LogPolyhedron:
    """Minimal H-representation of ``conv(vertices) + cone(rays)``.

    Every facet is found as a hyperplane through one vertex spanned by n-1
    independent differences of generators, kept when all generators lie on
    one side of it. Output inequalities are strict (open hull).
    """
    V = [as_vector(v) for v in vertices]
    R = [as_vector(r) for r in rays]
    if not V:
        raise ValueError("at least one vertex is required")
    n = len(V[0])
    if any(len(v) != n for v in V) or any(len(r) != n for r in R):
        raise DimensionMismatch("generators disagree on the dimension")
    if n > MAX_ENUM_DIMENSION:
        raise UnsupportedDimension(f"hull computation needs dimension <= {MAX_ENUM_DIMENSION}, got {n}")
    V = sorted(set(V))
    R = sorted({tuple(Fraction(x) for x in primitive(r)) for r in R if any(x != 0 for x in r)})
    v0 = V[0]
    span = [tuple(a - b for a, b in zip(v, v0)) for v in V[1:]] + R
    if rank(span) < n:
        if len(V) == 1 and not R:
            raise DegenerateInput("all vertices coincide and there are no rays", point=v0)
        raise DegenerateInput("generators are not full-dimensional")

    facets: dict[tuple, HalfSpace] = {}
    for anchor in V:
        directions = [tuple(a - b for a, b in zip(v, anchor)) for v in V if v != anchor] + R
        for combo in itertools.combinations(directions, n - 1):
            ns = nullspace(list(combo), n) if n > 1 else [(Fraction(1),)]
            if len(ns) != 1:
                continue
            a = ns[0]
            for normal in (a, tuple(-x for x in a)):
                b = dot(normal, anchor)
                if all(dot(normal, v) <= b for v in V) and all(dot(normal, r) <= 0 for r in R):
                    h = HalfSpace(normal, b, True)
                    prim, bound = h.normalized()
                    facets.setdefault((prim, bound), HalfSpace(prim, bound, True))
    return remove_redundant(LogPolyhedron(n, tuple(facets[k] for k in sorted(facets))))
