"""Reinhardt domains given by monomial inequalities.

A domain is a finite union of *pieces*. Each piece is a list of inequalities
``r^beta < exp(rho) * r^gamma`` on the modulus vector ``r = (|z_1|, ..., |z_n|)``
together with the bounding box ``r_j < exp(box_log_radius)``. In log
coordinates ``x = log r`` every inequality becomes the half-space
``<beta - gamma, x> < rho``, so each piece is an open polyhedron (its *shadow*).

Membership is evaluated directly on moduli with ``0**0 == 1``, which makes
points on the coordinate hyperplanes well defined without dividing by zero.
"""

from __future__ import annotations

import decimal
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BadExponent, DimensionMismatch, EmptyPiece
from .geometry import HalfSpace, LogPolyhedron, joint_negative_recession
from .rational import as_fraction

__all__ = [
    "MonomialInequality",
    "ReinhardtDomain",
    "ConvexityVerdict",
    "build_domain",
    "contains_modulus",
    "origin_on_boundary",
    "meets_coordinate_hyperplane",
    "is_log_convex",
    "domain_from_json",
    "domain_to_json",
    "sample_log_points",
]

_LOG_DIGITS = 30


def _rational_log(c) -> Fraction:
    """``log c`` rounded to 30 significant digits, as an exact rational."""
    with decimal.localcontext() as ctx:
        ctx.prec = _LOG_DIGITS
        return Fraction(decimal.Decimal(str(c)).ln())


@dataclass(frozen=True)
class MonomialInequality:
    """``r^num_exponent < exp(log_bound) * r^den_exponent``."""

    num_exponent: tuple[int, ...]
    den_exponent: tuple[int, ...]
    log_bound: Fraction = Fraction(0)

    def __post_init__(self):
        beta = tuple(int(b) for b in self.num_exponent)
        gamma = tuple(int(g) for g in self.den_exponent)
        if len(beta) != len(gamma):
            raise BadExponent("numerator and denominator exponents differ in length")
        if any(b < 0 for b in beta) or any(g < 0 for g in gamma):
            raise BadExponent(f"exponents must be nonnegative, got {beta} and {gamma}")
        if any(b and g for b, g in zip(beta, gamma)):
            raise BadExponent(f"exponents {beta} and {gamma} have overlapping support")
        object.__setattr__(self, "num_exponent", beta)
        object.__setattr__(self, "den_exponent", gamma)
        object.__setattr__(self, "log_bound", as_fraction(self.log_bound))

    @classmethod
    def from_multi_index(cls, alpha: Sequence[int], log_bound=0) -> "MonomialInequality":
        """``|z^alpha| < exp(log_bound)`` for a signed multi-index."""
        alpha = [int(a) for a in alpha]
        return cls(tuple(max(a, 0) for a in alpha), tuple(max(-a, 0) for a in alpha), log_bound)

    @classmethod
    def from_bound(cls, num_exponent, den_exponent, c) -> "MonomialInequality":
        """Constructor taking ``r^beta < c * r^gamma`` with ``c > 0``.

        The log of ``c`` is stored as a 30-digit rational approximation; see
        :attr:`ReinhardtDomain.approximate`.
        """
        if c <= 0:
            raise ValueError("bound must be positive")
        return _ApproxInequality(num_exponent, den_exponent, _rational_log(c))

    @property
    def dimension(self) -> int:
        return len(self.num_exponent)

    @property
    def multi_index(self) -> tuple[int, ...]:
        return tuple(b - g for b, g in zip(self.num_exponent, self.den_exponent))

    @property
    def approximate(self) -> bool:
        return False

    def is_trivial(self) -> bool:
        return all(a == 0 for a in self.multi_index)

    def halfspace(self) -> HalfSpace:
        return HalfSpace(self.multi_index, self.log_bound, True)

    def holds(self, r) -> bool | np.ndarray:
        """Evaluate on moduli; ``r`` has shape ``(n,)`` or ``(n, ...)``."""
        r = np.asarray(r, dtype=float)
        lhs = np.ones(r.shape[1:])
        rhs = np.full(r.shape[1:], math.exp(self.log_bound))
        for j, (b, g) in enumerate(zip(self.num_exponent, self.den_exponent)):
            if b:
                lhs = lhs * r[j] ** b
            if g:
                rhs = rhs * r[j] ** g
        return lhs < rhs

    def to_dict(self) -> dict:
        return {
            "num_exponent": list(self.num_exponent),
            "den_exponent": list(self.den_exponent),
            "log_bound": _fraction_text(self.log_bound),
        }


class _ApproxInequality(MonomialInequality):
    @property
    def approximate(self) -> bool:
        return True


def _fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ReinhardtDomain:
    dimension: int
    pieces: tuple[tuple[MonomialInequality, ...], ...]
    box_log_radius: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(tuple(p) for p in self.pieces))
        object.__setattr__(self, "box_log_radius", as_fraction(self.box_log_radius))

    @property
    def approximate(self) -> bool:
        """True if some bound was given as ``c`` rather than an exact ``log c``."""
        return any(q.approximate for piece in self.pieces for q in piece)

    def box_halfspaces(self) -> tuple[HalfSpace, ...]:
        n = self.dimension
        return tuple(
            HalfSpace(tuple(int(i == j) for i in range(n)), self.box_log_radius, True) for j in range(n)
        )

    @cached_property
    def shadows(self) -> tuple[LogPolyhedron, ...]:
        """Log-coordinate polyhedron of each piece, box included."""
        out = []
        for piece in self.pieces:
            hs = [q.halfspace() for q in piece if not q.is_trivial()]
            out.append(LogPolyhedron(self.dimension, tuple(hs) + self.box_halfspaces()))
        return tuple(out)

    def contains(self, r) -> bool:
        return contains_modulus(self, r)

    def to_dict(self) -> dict:
        return {
            "n": self.dimension,
            "box_log_radius": _fraction_text(self.box_log_radius),
            "pieces": [[q.to_dict() for q in piece] for piece in self.pieces],
        }

    def same_set(self, other: "ReinhardtDomain") -> bool:
        """Piecewise equality of canonical shadows (a sufficient test for unions)."""
        if self.dimension != other.dimension:
            return False
        mine = sorted(s.canonical() for s in self.shadows)
        theirs = sorted(s.canonical() for s in other.shadows)
        return mine == theirs


@dataclass(frozen=True)
class ConvexityVerdict:
    status: str  # "Convex", "NotConvex" or "ProbablyConvex"
    witness: tuple[float, ...] | None = None
    sample_count: int = 0

    @property
    def convex(self) -> bool | None:
        return {"Convex": True, "NotConvex": False}.get(self.status)


def _coerce_inequality(q, n) -> MonomialInequality:
    if isinstance(q, MonomialInequality):
        ineq = q
    elif isinstance(q, dict):
        try:
            ineq = MonomialInequality(q["num_exponent"], q["den_exponent"], q.get("log_bound", 0))
        except KeyError as exc:
            raise BadExponent(f"inequality is missing field {exc}") from None
    else:
        beta, gamma, rho = q
        ineq = MonomialInequality(beta, gamma, rho)
    if ineq.dimension != n:
        raise DimensionMismatch(f"inequality has dimension {ineq.dimension}, expected {n}")
    return ineq


def _inequality_length(q) -> int:
    if isinstance(q, MonomialInequality):
        return q.dimension
    if isinstance(q, dict):
        return len(q.get("num_exponent", ()))
    return len(q[0])


def build_domain(pieces: Iterable, box_log_radius=0, dimension: int | None = None) -> ReinhardtDomain:
    """Validate and assemble a domain.

    ``pieces`` is a list of lists whose entries are :class:`MonomialInequality`
    objects, ``(beta, gamma, rho)`` triples or dicts in the JSON schema. A
    piece may be empty, meaning the whole bounding polydisc. ``dimension`` is
    needed only when it cannot be read off the inequalities.
    """
    pieces = [list(p) for p in pieces]
    if not pieces:
        raise EmptyPiece("a domain needs at least one piece")
    if dimension is None:
        dimension = next((_inequality_length(q) for piece in pieces for q in piece), None)
    if dimension is None:
        raise ValueError("dimension must be given for a domain with only box constraints")
    checked = []
    for i, piece in enumerate(pieces):
        ineqs = []
        for q in piece:
            ineq = _coerce_inequality(q, dimension)
            if ineq.is_trivial():
                if ineq.log_bound > 0:
                    continue  # 1 < e^rho always holds
                raise EmptyPiece(f"piece {i} contains the unsatisfiable inequality 1 < exp({ineq.log_bound})", index=i)
            ineqs.append(ineq)
        checked.append(tuple(ineqs))
    dom = ReinhardtDomain(dimension, tuple(checked), as_fraction(box_log_radius))
    for i, shadow in enumerate(dom.shadows):
        if shadow.is_empty():
            raise EmptyPiece(f"piece {i} is empty", index=i)
    return dom


def contains_modulus(d: ReinhardtDomain, r) -> bool | np.ndarray:
    """Membership of modulus vector(s) ``r``; shape ``(n,)`` or ``(n, ...)``.

    Pure arithmetic, no LP. Vectorized over trailing axes.
    """
    r = np.asarray(r, dtype=float)
    if r.shape[0] != d.dimension:
        raise DimensionMismatch(f"modulus vector has length {r.shape[0]}, expected {d.dimension}")
    box = math.exp(d.box_log_radius)
    in_box = np.all(r < box, axis=0)
    result = np.zeros(r.shape[1:], dtype=bool)
    for piece in d.pieces:
        ok = in_box.copy()
        for q in piece:
            ok &= q.holds(r)
        result |= ok
    return bool(result) if result.ndim == 0 else result


def meets_coordinate_hyperplane(d: ReinhardtDomain, j: int) -> bool:
    """Does ``d`` contain a point with ``z_j = 0``? Exact.

    With ``r_j = 0`` an inequality with ``gamma_j > 0`` fails outright, one
    with ``beta_j > 0`` holds as soon as the other moduli are positive, and
    the rest constrain the remaining coordinates in log space.
    """
    n = d.dimension
    others = [i for i in range(n) if i != j]
    for piece in d.pieces:
        if any(q.den_exponent[j] > 0 for q in piece):
            continue
        if not others:
            return True
        hs = [
            HalfSpace(tuple(q.multi_index[i] for i in others), q.log_bound, True)
            for q in piece
            if q.num_exponent[j] == 0 and any(q.multi_index[i] for i in others)
        ]
        hs += [HalfSpace(tuple(int(i == k) for i in others), d.box_log_radius, True) for k in others]
        if not LogPolyhedron(n - 1, tuple(hs)).is_empty():
            return True
    return False


def origin_on_boundary(d: ReinhardtDomain) -> bool:
    """Is the origin a boundary point of ``d``?

    The origin must be outside ``d`` and in its closure; the latter holds iff
    some piece's shadow recedes to ``-inf`` in every coordinate at once.
    """
    if contains_modulus(d, np.zeros(d.dimension)):
        return False
    every = range(d.dimension)
    return any(joint_negative_recession(s, every) for s in d.shadows)


def _shadow_sampling_box(shadow: LogPolyhedron, spread: float) -> tuple[np.ndarray, np.ndarray]:
    witness = np.array([float(v) for v in shadow.feasibility.witness])
    lo, hi = witness - spread, witness + spread
    if shadow.dimension <= 3:
        verts, _ = shadow.generators
        vs = np.array([[float(v) for v in vert] for vert in verts])
        lo = np.minimum(lo, vs.min(axis=0) - spread)
        hi = np.maximum(hi, vs.max(axis=0))
    return lo, hi


def sample_log_points(shadow: LogPolyhedron, count: int, rng: np.random.Generator, spread: float = 3.0) -> np.ndarray:
    """Random points strictly inside a (nonempty) shadow, shape ``(count, n)``.

    Rejection sampling from a box around the vertices, topped up by jittering
    the LP witness when the acceptance rate is poor.
    """
    n = shadow.dimension
    lo, hi = _shadow_sampling_box(shadow, spread)
    normals = np.array([[float(a) for a in h.normal] for h in shadow.halfspaces]).reshape(-1, n)
    bounds = np.array([float(h.bound) for h in shadow.halfspaces])
    out = []
    for _ in range(50):
        cand = rng.uniform(lo, hi, size=(max(4 * count, 64), n))
        ok = np.all(cand @ normals.T < bounds, axis=1) if len(bounds) else np.ones(len(cand), bool)
        out.extend(cand[ok])
        if len(out) >= count:
            break
    if len(out) < count:
        witness = np.array([float(v) for v in shadow.feasibility.witness])
        scale = 1.0
        while len(out) < count and scale > 1e-9:
            cand = witness + rng.normal(scale=scale, size=(4 * count, n))
            ok = np.all(cand @ normals.T < bounds, axis=1)
            out.extend(cand[ok])
            scale /= 2
    return np.array(out[:count]).reshape(-1, n)


def is_log_convex(d: ReinhardtDomain, samples: int = 200, seed: int = 0) -> ConvexityVerdict:
    """Certified refutation / probabilistic acceptance of log-convexity.

    A single piece is convex. Otherwise random pairs of points from the
    pieces are drawn and their log-space midpoints tested for membership; a
    failing midpoint is returned as a modulus-vector witness.
    """
    if len(d.pieces) == 1:
        return ConvexityVerdict("Convex")
    rng = np.random.default_rng(seed)
    pools = [sample_log_points(s, max(samples, 8), rng, spread=1.0) for s in d.shadows]
    k = len(pools)
    for _ in range(samples):
        a, b = rng.choice(k, size=2, replace=False)
        p = pools[a][rng.integers(len(pools[a]))]
        q = pools[b][rng.integers(len(pools[b]))]
        mid = (p + q) / 2
        exact_mid = [Fraction(float(v)) for v in mid]
        if any(s.contains(exact_mid) for s in d.shadows):
            continue
        r = np.exp(mid)
        if not contains_modulus(d, r):
            return ConvexityVerdict("NotConvex", tuple(float(v) for v in r), samples)
    return ConvexityVerdict("ProbablyConvex", None, samples)


def domain_from_json(data) -> ReinhardtDomain:
    """Build a domain from the JSON schema (a dict, or text to be parsed)."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if not isinstance(data, dict):
        raise BadExponent("domain JSON must be an object")
    try:
        n = int(data["n"])
        pieces = data["pieces"]
    except KeyError as exc:
        raise BadExponent(f"domain JSON is missing field {exc}") from None
    if not isinstance(pieces, list) or not all(isinstance(p, list) for p in pieces):
        raise BadExponent("'pieces' must be a list of lists")
    return build_domain(pieces, data.get("box_log_radius", 0), dimension=n)


def domain_to_json(d: ReinhardtDomain, **extra) -> str:
    payload = d.to_dict()
    payload.update(extra)
    return json.dumps(payload, indent=2, sort_keys=False)
