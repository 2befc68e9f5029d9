"""Complete and log-convex complete hulls of Reinhardt domains.

Both hulls are computed on generators. Making a shadow down-closed (so the
domain contains every polydisc ``P_w`` it touches) amounts to adding the
negative coordinate directions as rays; taking the log-convex hull on top of
that pools the vertices and rays of all pieces into one polyhedron.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .domain import MonomialInequality, ReinhardtDomain, contains_modulus, sample_log_points
from .errors import DimensionMismatch, UnsupportedDimension
from .geometry import MAX_ENUM_DIMENSION, HalfSpace, LogPolyhedron, hull_from_generators
from .rational import Vector, dot

__all__ = ["HullResult", "SubsetVerdict", "complete_hull", "envelope", "domain_subset", "downward_rays"]


@dataclass(frozen=True)
class HullResult:
    hull: ReinhardtDomain
    # one list per output piece; each entry records the tight generators of a facet
    provenance: tuple[tuple[dict, ...], ...] = field(default=())

    def to_dict(self) -> dict:
        payload = self.hull.to_dict()
        payload["provenance"] = [list(p) for p in self.provenance]
        return payload


@dataclass(frozen=True)
class SubsetVerdict:
    status: str  # "CertifiedOnConvexB", "ProbablySubset" or "NotSubset"
    witness: tuple[float, ...] | None = None
    probes: int = 0

    @property
    def subset(self) -> bool:
        return self.status != "NotSubset"


def downward_rays(n: int) -> list[Vector]:
    return [tuple(Fraction(-1 if i == j else 0) for i in range(n)) for j in range(n)]


def _require_enumerable(d: ReinhardtDomain) -> None:
    if d.dimension > MAX_ENUM_DIMENSION:
        raise UnsupportedDimension(
            f"hulls need generator enumeration, available up to dimension {MAX_ENUM_DIMENSION}; got {d.dimension}"
        )


def _fmt(v) -> list[str]:
    return [str(x) for x in v]


def _as_piece(poly: LogPolyhedron, box: tuple[HalfSpace, ...]) -> tuple[MonomialInequality, ...]:
    """Convert a shadow back to monomial inequalities, leaving out box facets."""
    box_keys = {h.normalized() for h in box}
    out = []
    for h in poly.halfspaces:
        normal, bound = h.normalized()
        if (normal, bound) in box_keys:
            continue
        out.append(MonomialInequality.from_multi_index(normal, bound))
    return tuple(out)


def _provenance(poly: LogPolyhedron, vertices, rays) -> tuple[dict, ...]:
    facets = []
    for h in poly.halfspaces:
        facets.append(
            {
                "normal": list(h.normalized()[0]),
                "bound": str(h.normalized()[1]),
                "vertices": [_fmt(v) for v in vertices if dot(h.normal, v) == h.bound],
                "rays": [_fmt(r) for r in rays if dot(h.normal, r) == 0],
            }
        )
    return tuple(facets)


def _assemble(d: ReinhardtDomain, polys: list[LogPolyhedron], gens: list) -> HullResult:
    box = d.box_halfspaces()
    # the box is implied for every output piece: each input piece sits inside it
    # and adding downward rays keeps the hull below the box's top corner
    pieces = tuple(_as_piece(p, box) for p in polys)
    hull = ReinhardtDomain(d.dimension, pieces, d.box_log_radius)
    prov = tuple(_provenance(p, v, r) for p, (v, r) in zip(polys, gens))
    return HullResult(hull, prov)


def complete_hull(d: ReinhardtDomain) -> HullResult:
    """The union of all polydiscs ``P_w`` over ``w`` in ``d``.

    Computed piece by piece: each shadow gets the rays ``-e_j`` and its
    H-representation is rebuilt. The result has one piece per input piece and
    need not be log-convex.
    """
    _require_enumerable(d)
    down = downward_rays(d.dimension)
    polys, gens = [], []
    for shadow in d.shadows:
        verts, rays = shadow.generators
        all_rays = sorted(set(rays) | set(down))
        polys.append(hull_from_generators(verts, all_rays))
        gens.append((verts, all_rays))
    return _assemble(d, polys, gens)


def envelope(d: ReinhardtDomain) -> HullResult:
    """The smallest complete log-convex Reinhardt domain containing ``d``.

    One convex piece: the hull of every piece's vertices, with every piece's
    rays and ``-e_j`` as cone generators.
    """
    _require_enumerable(d)
    verts, rays = set(), set(downward_rays(d.dimension))
    for shadow in d.shadows:
        v, r = shadow.generators
        verts.update(v)
        rays.update(r)
    verts, rays = sorted(verts), sorted(rays)
    poly = hull_from_generators(verts, rays)
    return _assemble(d, [poly], [(verts, rays)])


def _violation_witness(shadow: LogPolyhedron, target: LogPolyhedron, vertex=None, ray=None) -> np.ndarray | None:
    """A point of ``shadow`` outside ``target`` near a violating generator."""
    x0 = shadow.feasibility.witness
    for k in range(1, 80):
        if vertex is not None:
            eps = Fraction(1, 2**k)
            x = tuple(v + eps * (w - v) for v, w in zip(vertex, x0))
        else:
            t = Fraction(2**k)
            x = tuple(w + t * r for w, r in zip(x0, ray))
        if shadow.contains(x) and not target.contains(x):
            return np.array([float(v) for v in x])
    return None


def _certify_piece(shadow: LogPolyhedron, target: LogPolyhedron):
    """Exact check of closure(shadow) within closure(target).

    Returns ``(True, None)`` or ``(False, log-space witness or None)``.
    """
    verts, rays = shadow.generators
    for v in verts:
        if not target.closure_contains(v):
            return False, _violation_witness(shadow, target, vertex=v)
    for r in rays:
        if any(dot(h.normal, r) > 0 for h in target.halfspaces):
            return False, _violation_witness(shadow, target, ray=r)
    return True, None


def domain_subset(a: ReinhardtDomain, b: ReinhardtDomain, probes: int = 1000, seed: int = 0) -> SubsetVerdict:
    """Decide ``a`` within ``b``.

    When every piece of ``a`` is certified inside a single piece of ``b`` (always
    attempted when ``b`` is one convex piece) the answer is exact. Otherwise
    random log-space probes from ``a`` are tested against ``b``.
    """
    if a.dimension != b.dimension:
        raise DimensionMismatch("domains have different dimensions")
    if a.dimension > MAX_ENUM_DIMENSION:
        if len(b.pieces) == 1:
            raise UnsupportedDimension("certification needs generator enumeration")
    else:
        certified = True
        for shadow in a.shadows:
            ok_any = False
            for target in b.shadows:
                ok, wit = _certify_piece(shadow, target)
                if ok:
                    ok_any = True
                    break
                if len(b.pieces) == 1 and wit is not None:
                    return SubsetVerdict("NotSubset", tuple(float(v) for v in np.exp(wit)))
            if not ok_any:
                certified = False
                break
        if certified:
            return SubsetVerdict("CertifiedOnConvexB")

    rng = np.random.default_rng(seed)
    per_piece = max(probes // len(a.pieces), 1)
    for shadow in a.shadows:
        pts = sample_log_points(shadow, per_piece, rng)
        r = np.exp(pts.T)
        inside_b = contains_modulus(b, r)
        inside_a = contains_modulus(a, r)
        bad = np.flatnonzero(inside_a & ~np.atleast_1d(inside_b))
        if bad.size:
            return SubsetVerdict("NotSubset", tuple(float(v) for v in r[:, bad[0]]), probes)
    return SubsetVerdict("ProbablySubset", None, probes)
