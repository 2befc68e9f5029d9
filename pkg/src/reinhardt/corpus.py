"""Built-in domains and test functions with known Laurent data."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .domain import MonomialInequality, ReinhardtDomain, build_domain, meets_coordinate_hyperplane
from .errors import InvalidParameter, UnknownName
from .laurent import HoloFunction, TorusSpec

__all__ = [
    "NamedDomain",
    "NamedFunction",
    "builtin_domain",
    "builtin_function",
    "DOMAIN_CATALOG",
    "FUNCTION_CATALOG",
    "hartogs_triangle",
    "generalized_hartogs",
    "polydisc",
]


@dataclass(frozen=True)
class NamedDomain:
    name: str
    domain: ReinhardtDomain
    notes: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "notes": self.notes, "domain": self.domain.to_dict()}


@dataclass(frozen=True)
class NamedFunction:
    function: HoloFunction
    valid_on: tuple[str, ...] = ()
    reference_torus: TorusSpec | None = None
    domain_check: Callable[[ReinhardtDomain], bool] | None = None

    @property
    def name(self) -> str:
        return self.function.name

    def check_domain(self, d: ReinhardtDomain) -> None:
        """Raise :class:`InvalidParameter` if the function is not holomorphic on ``d``."""
        if d.dimension != self.function.dimension:
            raise InvalidParameter(
                f"{self.name} has {self.function.dimension} variables but the domain has {d.dimension}"
            )
        if self.domain_check is not None and not self.domain_check(d):
            raise InvalidParameter(f"{self.name} is not holomorphic on the given domain")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.function.dimension,
            "smooth_up_to_boundary": self.function.smooth_up_to_boundary,
            "valid_on": list(self.valid_on),
            "known_coefficients": self.function.known_coefficients is not None,
        }


def polydisc(n: int = 2, box_log_radius=0) -> ReinhardtDomain:
    return build_domain([[]], box_log_radius, dimension=n)


def hartogs_triangle() -> ReinhardtDomain:
    """``{|z_1| < |z_2| < 1}``."""
    return build_domain([[MonomialInequality((1, 0), (0, 1), 0)]], 0)


def generalized_hartogs(alpha) -> ReinhardtDomain:
    """``{z in the unit polydisc : |z^alpha| < 1}``."""
    alpha = tuple(int(a) for a in alpha)
    if not alpha or all(a == 0 for a in alpha):
        raise InvalidParameter("multi-index must be nonzero")
    return build_domain([[MonomialInequality.from_multi_index(alpha)]], 0)


def nonconvex_union() -> ReinhardtDomain:
    """``{|z_1| < e^-2, |z_2| < 1}`` together with ``{|z_1| < 1, |z_2| < e^-2}``."""
    return build_domain(
        [[MonomialInequality((1, 0), (0, 0), -2)], [MonomialInequality((0, 1), (0, 0), -2)]], 0
    )


DOMAIN_CATALOG = {
    "hartogs": "Hartogs triangle {|z1| < |z2| < 1}",
    "polydisc": "unit polydisc; polydisc(n) for other dimensions",
    "H(a,b,...)": "generalized Hartogs triangle {z in D^n : |z^alpha| < 1}, e.g. H(2,-1)",
    "nonconvex_union": "union of {|z1| < e^-2, |z2| < 1} and {|z1| < 1, |z2| < e^-2}",
}

_INT_LIST = r"\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*"


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


def builtin_domain(name: str) -> NamedDomain:
    key = name.strip()
    if key == "hartogs":
        return NamedDomain(key, hartogs_triangle(), {"origin_on_boundary": True, "log_convex": True})
    m = re.fullmatch(r"polydisc(?:\(\s*(\d+)\s*\))?", key)
    if m:
        n = int(m.group(1) or 2)
        if n < 1:
            raise InvalidParameter("polydisc dimension must be positive")
        return NamedDomain(key, polydisc(n), {"origin_on_boundary": False, "log_convex": True})
    m = re.fullmatch(r"H\(" + _INT_LIST + r"\)", key)
    if m:
        alpha = _ints(m.group(1))
        mixed = any(a > 0 for a in alpha) and any(a < 0 for a in alpha)
        return NamedDomain(key, generalized_hartogs(alpha), {"origin_on_boundary": mixed, "log_convex": True})
    if key == "nonconvex_union":
        return NamedDomain(key, nonconvex_union(), {"origin_on_boundary": False, "log_convex": False})
    raise UnknownName(f"unknown domain {name!r}; known: {', '.join(DOMAIN_CATALOG)}")


FUNCTION_CATALOG = {
    "monomial(a,b,...)": "z^alpha for a signed multi-index",
    "exp_linear(a,b,...)": "exp(<a, z>)",
    "ratio": "z1 / z2",
    "geom": "1 / (z2 - z1), valid where |z1| < |z2|",
    "poly_random(seed[,n])": "seeded polynomial, integer coefficients in [-5, 5], total degree <= 6",
}


def _monomial(alpha: tuple[int, ...]) -> NamedFunction:
    n = len(alpha)

    def evaluate(z):
        out = np.ones(z.shape[1:], dtype=complex)
        for j, a in enumerate(alpha):
            if a:
                out = out * z[j] ** a
        return out

    def coeff(index):
        return 1.0 if index == alpha else 0.0

    smooth = all(a >= 0 for a in alpha)
    name = "monomial(" + ",".join(map(str, alpha)) + ")"
    fn = HoloFunction(evaluate, name, n, coeff, smooth)
    ref = TorusSpec((0.3, 0.6) if n == 2 else tuple(0.5 for _ in range(n)), 32)
    return NamedFunction(fn, ("*",), ref)


def _exp_linear(a: tuple[float, ...]) -> NamedFunction:
    n = len(a)
    coeffs = np.array(a, dtype=complex)

    def evaluate(z):
        return np.exp(np.tensordot(coeffs, z, axes=([0], [0])))

    def coeff(index):
        if any(i < 0 for i in index):
            return 0.0
        return math.prod(aj**i / math.factorial(i) for aj, i in zip(a, index))

    name = "exp_linear(" + ",".join(_num_text(v) for v in a) + ")"
    fn = HoloFunction(evaluate, name, n, coeff, True)
    ref = TorusSpec((0.3, 0.6) if n == 2 else tuple(0.5 for _ in range(n)), 64)
    return NamedFunction(fn, ("*",), ref)


def _num_text(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def _ratio() -> NamedFunction:
    fn = HoloFunction(lambda z: z[0] / z[1], "ratio", 2, lambda i: 1.0 if i == (1, -1) else 0.0, False)
    return NamedFunction(fn, ("hartogs", "H(a,-b)"), TorusSpec((0.3, 0.6), 32), _avoids_z2_axis)


def _avoids_z2_axis(d: ReinhardtDomain) -> bool:
    return not meets_coordinate_hyperplane(d, 1)


def _below_diagonal(d: ReinhardtDomain) -> bool:
    from .hulls import domain_subset

    wedge = build_domain([[MonomialInequality((1, 0), (0, 1), 0)]], d.box_log_radius)
    return domain_subset(d, wedge).status == "CertifiedOnConvexB"


def _geom() -> NamedFunction:
    def coeff(index):
        m, k = index
        return 1.0 if m >= 0 and k == -m - 1 else 0.0

    fn = HoloFunction(lambda z: 1.0 / (z[1] - z[0]), "geom", 2, coeff, False)
    return NamedFunction(fn, ("hartogs",), TorusSpec((0.1, 0.8), 64), _below_diagonal)


def _poly_random(seed: int, n: int = 2) -> NamedFunction:
    if n < 1:
        raise InvalidParameter("dimension must be positive")
    rng = np.random.default_rng(seed)
    terms: dict[tuple[int, ...], float] = {}
    for alpha in np.ndindex(*([7] * n)):
        if sum(alpha) <= 6:
            c = int(rng.integers(-5, 6))
            if c:
                terms[tuple(int(a) for a in alpha)] = float(c)

    def evaluate(z):
        out = np.zeros(z.shape[1:], dtype=complex)
        for alpha, c in terms.items():
            term = np.full(z.shape[1:], c, dtype=complex)
            for j, a in enumerate(alpha):
                if a:
                    term = term * z[j] ** a
            out = out + term
        return out

    fn = HoloFunction(evaluate, f"poly_random({seed},{n})" if n != 2 else f"poly_random({seed})", n,
                      lambda i: terms.get(i, 0.0), True)
    ref = TorusSpec((0.3, 0.6) if n == 2 else tuple(0.5 for _ in range(n)), 16)
    return NamedFunction(fn, ("*",), ref)


def builtin_function(name: str) -> NamedFunction:
    key = name.strip()
    try:
        m = re.fullmatch(r"monomial\(" + _INT_LIST + r"\)", key)
        if m:
            return _monomial(_ints(m.group(1)))
        m = re.fullmatch(r"exp_linear\(([^)]*)\)", key)
        if m:
            a = tuple(float(v) for v in m.group(1).split(","))
            if not all(math.isfinite(v) for v in a):
                raise InvalidParameter("exp_linear coefficients must be finite")
            return _exp_linear(a)
        if key == "ratio":
            return _ratio()
        if key == "geom":
            return _geom()
        m = re.fullmatch(r"poly_random\(\s*(-?\d+)\s*(?:,\s*(\d+)\s*)?\)", key)
        if m:
            return _poly_random(int(m.group(1)), int(m.group(2) or 2))
    except ValueError as exc:
        if isinstance(exc, InvalidParameter):
            raise
        raise InvalidParameter(f"bad parameters in {name!r}: {exc}") from None
    raise UnknownName(f"unknown function {name!r}; known: {', '.join(FUNCTION_CATALOG)}")
