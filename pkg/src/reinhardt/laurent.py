"""Laurent coefficients on tori and Taylor extension with tail bounds.

On the torus ``|z_j| = w_j`` the Cauchy integral for the scaled coefficient
``d_alpha = c_alpha * w**alpha`` is a plain average of
``f(w e^{i theta}) e^{-i <alpha, theta>}``; the trapezoidal rule on an
``N**n`` grid turns it into an n-dimensional DFT. Everything downstream
(vanishing of negative-index coefficients, the derivative-bound statistic,
Taylor extension into the polydisc ``P_w``) is read off these windows.

Evaluators are vectorized: they receive a complex array of shape ``(n, ...)``
and return an array of shape ``(...)``. They must be safe to call from
several threads at once.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .domain import ReinhardtDomain, contains_modulus
from .errors import (
    BadGrid,
    DegreeExceedsWindow,
    DimensionMismatch,
    EvaluationFailure,
    GammaZero,
    NoDominatingTorus,
    OutsidePolydisc,
    RatioOutOfRange,
)
from .geometry import HalfSpace, interior_point, negative_recession_direction

__all__ = [
    "HoloFunction",
    "TorusSpec",
    "TorusSample",
    "LaurentWindow",
    "IndexSplit",
    "ObstructionReport",
    "GrowthReport",
    "ExtensionResult",
    "ConsistencyReport",
    "sample_torus",
    "laurent_window",
    "window_for",
    "negative_part_report",
    "derivative_bound_scan",
    "taylor_tail_bound",
    "extend_eval",
    "dominating_torus",
    "multi_torus_extend",
    "consistency_across_tori",
    "auto_tori",
]

DEFAULT_RELATIVE_TOL = 1e-9


def _decimal(x: float) -> str:
    return repr(float(x))


def _point_text(z) -> str:
    return "(" + ", ".join(f"{complex(c):g}".strip("()") for c in z) + ")"


def _pair(c: complex) -> list[float]:
    return [float(c.real), float(c.imag)]


@dataclass(frozen=True)
class HoloFunction:
    evaluator: Callable[[np.ndarray], np.ndarray]
    name: str
    dimension: int
    known_coefficients: Callable[[tuple[int, ...]], complex] | None = None
    smooth_up_to_boundary: bool | None = None

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        if z.shape[0] != self.dimension:
            raise DimensionMismatch(f"{self.name} takes {self.dimension} variables, got {z.shape[0]}")
        return self.evaluator(z)

    def coefficient(self, alpha: Sequence[int]) -> complex:
        if self.known_coefficients is None:
            raise ValueError(f"{self.name} has no known Laurent coefficients")
        return complex(self.known_coefficients(tuple(int(a) for a in alpha)))


def _is_power_of_two(n: int) -> bool:
    return n >= 2 and n & (n - 1) == 0


@dataclass(frozen=True)
class TorusSpec:
    """Torus ``{|z_j| = w_j}`` sampled on an ``N``-point grid per axis."""

    w: tuple[float, ...]
    N: int = 64

    def __post_init__(self):
        w = tuple(float(v) for v in self.w)
        if not w or any(not (v > 0 and math.isfinite(v)) for v in w):
            raise BadGrid(f"torus radii must be positive and finite, got {w}")
        if not _is_power_of_two(int(self.N)):
            raise BadGrid(f"grid size must be a power of two, got {self.N}")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "N", int(self.N))

    @property
    def dimension(self) -> int:
        return len(self.w)

    def inside(self, d: ReinhardtDomain) -> bool:
        return bool(contains_modulus(d, np.array(self.w)))

    def ratios(self, z: Sequence[complex]) -> np.ndarray:
        """``|z_j| / w_j``; all below one iff ``z`` lies in the polydisc ``P_w``."""
        return np.abs(np.asarray(z, dtype=complex)) / np.array(self.w)

    def to_dict(self) -> dict:
        return {"w": [_decimal(v) for v in self.w], "N": self.N}


@dataclass(frozen=True)
class TorusSample:
    spec: TorusSpec
    values: np.ndarray


@dataclass(frozen=True)
class IndexSplit:
    """``alpha = beta - gamma`` with ``beta, gamma`` the positive and negative parts."""

    alpha: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))

    @property
    def beta(self) -> tuple[int, ...]:
        return tuple(max(a, 0) for a in self.alpha)

    @property
    def gamma(self) -> tuple[int, ...]:
        return tuple(max(-a, 0) for a in self.alpha)

    @property
    def beta_factorial(self) -> int:
        return math.prod(math.factorial(b) for b in self.beta)


@dataclass(frozen=True)
class LaurentWindow:
    """Scaled coefficients ``d_alpha`` for ``alpha`` in ``[-N/2, N/2)**n``.

    ``scaled`` is stored in shifted order: array index ``alpha + N/2``.
    """

    spec: TorusSpec
    scaled: np.ndarray

    @property
    def N(self) -> int:
        return self.spec.N

    @property
    def dimension(self) -> int:
        return self.spec.dimension

    @property
    def offset(self) -> int:
        return self.spec.N // 2

    def in_window(self, alpha: Sequence[int]) -> bool:
        return all(-self.offset <= a < self.offset for a in alpha)

    def d(self, alpha: Sequence[int]) -> complex:
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.dimension or not self.in_window(alpha):
            raise IndexError(f"index {alpha} outside the window of size {self.N}")
        return complex(self.scaled[tuple(a + self.offset for a in alpha)])

    def c(self, alpha: Sequence[int]) -> complex:
        """Unscaled coefficient ``d_alpha / w**alpha``."""
        log_w = sum(a * math.log(w) for a, w in zip(alpha, self.spec.w))
        return self.d(alpha) * math.exp(-log_w)

    def index_grids(self) -> list[np.ndarray]:
        axis = np.arange(-self.offset, self.offset)
        return np.meshgrid(*([axis] * self.dimension), indexing="ij")

    def negative_mask(self) -> np.ndarray:
        """Indices with some negative component, i.e. outside the Taylor part."""
        return np.any(np.stack(self.index_grids()) < 0, axis=0)

    def coefficients(self) -> np.ndarray:
        """All ``c_alpha`` in shifted order (may overflow to inf for extreme indices)."""
        log_w = sum(g * math.log(w) for g, w in zip(self.index_grids(), self.spec.w))
        with np.errstate(over="ignore"):
            return self.scaled * np.exp(-log_w)

    def to_dict(self) -> dict:
        grids = [g.ravel() for g in self.index_grids()]
        flat = self.scaled.ravel()
        return {
            "torus": self.spec.to_dict(),
            "coefficients": [
                {"alpha": [int(g[i]) for g in grids], "d": _pair(flat[i])} for i in range(flat.size)
            ],
        }


def sample_torus(f: HoloFunction, spec: TorusSpec) -> TorusSample:
    """Values of ``f`` at ``(w_1 e^{2 pi i k_1/N}, ..., w_n e^{2 pi i k_n/N})``."""
    if spec.dimension != f.dimension:
        raise DimensionMismatch(f"torus has dimension {spec.dimension}, function {f.dimension}")
    N = spec.N
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    axes = [w * roots for w in spec.w]
    z = np.stack(np.meshgrid(*axes, indexing="ij"))
    with np.errstate(all="ignore"):
        values = np.asarray(f(z), dtype=complex)
    if values.shape != (N,) * spec.dimension:
        values = np.broadcast_to(values, (N,) * spec.dimension).astype(complex)
    bad = ~np.isfinite(values)
    if bad.any():
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        raise EvaluationFailure(
            f"{f.name} is not finite at grid index {idx} on the torus w={spec.w}", index=idx
        )
    return TorusSample(spec, values)


def laurent_window(sample: TorusSample) -> LaurentWindow:
    """Trapezoidal Cauchy coefficients via an n-dimensional FFT."""
    spec, values = sample.spec, np.asarray(sample.values, dtype=complex)
    N = spec.N
    if not _is_power_of_two(N):
        raise BadGrid(f"grid size must be a power of two, got {N}")
    if values.shape != (N,) * spec.dimension:
        raise BadGrid(f"expected a grid of shape {(N,) * spec.dimension}, got {values.shape}")
    scaled = np.fft.fftshift(np.fft.fftn(values) / N**spec.dimension)
    return LaurentWindow(spec, scaled)


def window_for(f: HoloFunction, spec: TorusSpec) -> LaurentWindow:
    return laurent_window(sample_torus(f, spec))


def windows_for(f: HoloFunction, tori: Iterable[TorusSpec], workers: int | None = None) -> list[LaurentWindow]:
    """One window per torus; ``workers > 1`` runs the tori in a thread pool."""
    tori = list(tori)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda s: window_for(f, s), tori))
    return [window_for(f, s) for s in tori]


@dataclass(frozen=True)
class ObstructionReport:
    alphas: np.ndarray  # (k, n) indices with a negative component
    magnitudes: np.ndarray  # (k, number of tori): |d_alpha| per torus
    tori: tuple[TorusSpec, ...]
    tolerance: float
    max_negative_magnitude: float
    worst_alpha: tuple[int, ...] | None
    worst_torus: int | None

    @property
    def verdict(self) -> str:
        return "CLEAN" if self.max_negative_magnitude < self.tolerance else "OBSTRUCTED"

    @property
    def clean(self) -> bool:
        return self.verdict == "CLEAN"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "tolerance": _decimal(self.tolerance),
            "max_negative_magnitude": _decimal(self.max_negative_magnitude),
            "worst_alpha": list(self.worst_alpha) if self.worst_alpha is not None else None,
            "worst_torus": self.worst_torus,
            "tori": [t.to_dict() for t in self.tori],
        }

    def csv_rows(self) -> list[list]:
        n = self.alphas.shape[1] if self.alphas.size else len(self.tori[0].w)
        header = ["torus"] + [f"w{j + 1}" for j in range(n)] + [f"alpha{j + 1}" for j in range(n)] + ["abs_d"]
        rows = [header]
        for t, spec in enumerate(self.tori):
            for alpha, mag in zip(self.alphas, self.magnitudes[:, t]):
                rows.append([t, *map(_decimal, spec.w), *map(int, alpha), _decimal(mag)])
        return rows


def negative_part_report(windows: Sequence[LaurentWindow], tol: float | None = None) -> ObstructionReport:
    """Largest ``|d_alpha|`` with ``alpha`` outside ``N^n``, over all tori.

    The default tolerance is ``1e-9 * max(1, max |d_alpha|)``.
    """
    windows = list(windows)
    if not windows:
        raise ValueError("at least one window is required")
    N, n = windows[0].N, windows[0].dimension
    if any(w.N != N or w.dimension != n for w in windows):
        raise BadGrid("all windows must share the grid size and dimension")
    mask = windows[0].negative_mask()
    grids = windows[0].index_grids()
    alphas = np.stack([g[mask] for g in grids], axis=1)
    mags = np.stack([np.abs(w.scaled[mask]) for w in windows], axis=1)
    if tol is None:
        peak = max(float(np.abs(w.scaled).max()) for w in windows)
        tol = DEFAULT_RELATIVE_TOL * max(1.0, peak)
    if mags.size:
        k, t = np.unravel_index(int(np.argmax(mags)), mags.shape)
        worst, worst_alpha, worst_torus = float(mags[k, t]), tuple(int(a) for a in alphas[k]), int(t)
    else:
        worst, worst_alpha, worst_torus = 0.0, None, None
    return ObstructionReport(alphas, mags, tuple(w.spec for w in windows), float(tol), worst, worst_alpha, worst_torus)


@dataclass(frozen=True)
class GrowthReport:
    """``t(w) = |c_alpha| beta! / w**gamma`` across tori.

    For ``f`` smooth up to the boundary each value is at most
    ``sup |d^beta f / dz^beta|`` (up to quadrature error); unbounded growth as
    ``w -> 0`` rules smoothness out.
    """

    split: IndexSplit
    tori: tuple[TorusSpec, ...]
    values: tuple[float, ...]

    @property
    def alpha(self) -> tuple[int, ...]:
        return self.split.alpha

    def growth_factors(self) -> list[float]:
        return [b / a if a else math.inf for a, b in zip(self.values, self.values[1:])]

    def to_dict(self) -> dict:
        return {
            "alpha": list(self.alpha),
            "beta": list(self.split.beta),
            "gamma": list(self.split.gamma),
            "tori": [t.to_dict() for t in self.tori],
            "t": [_decimal(v) for v in self.values],
        }

    def csv_rows(self) -> list[list]:
        n = len(self.alpha)
        rows = [["torus"] + [f"w{j + 1}" for j in range(n)] + ["t"]]
        for i, (spec, v) in enumerate(zip(self.tori, self.values)):
            rows.append([i, *map(_decimal, spec.w), _decimal(v)])
        return rows


def growth_statistic(window: LaurentWindow, split: IndexSplit) -> float:
    """``|c_alpha| beta! / w**gamma``, computed stably as ``|d_alpha| beta! / w**beta``."""
    log_wb = sum(b * math.log(w) for b, w in zip(split.beta, window.spec.w))
    return abs(window.d(split.alpha)) * split.beta_factorial * math.exp(-log_wb)


def derivative_bound_scan(
    f: HoloFunction,
    alpha: Sequence[int] | IndexSplit,
    tori: Sequence[TorusSpec],
    workers: int | None = None,
) -> GrowthReport:
    split = alpha if isinstance(alpha, IndexSplit) else IndexSplit(tuple(alpha))
    if not any(split.gamma):
        raise GammaZero(f"index {split.alpha} has no negative part")
    windows = windows_for(f, tori, workers)
    values = tuple(growth_statistic(w, split) for w in windows)
    return GrowthReport(split, tuple(tori), values)


def taylor_tail_bound(M, t: Sequence, K: int):
    """Bound on ``|sum over alpha in N^n with max alpha_j > K of c_alpha z^alpha|``.

    Valid when ``|c_alpha w^alpha| <= M`` for all ``alpha`` and
    ``t_j = |z_j| / w_j < 1``; equals
    ``M * (prod 1/(1-t_j) - prod (1 - t_j^(K+1))/(1-t_j))``. Rational inputs
    give an exact rational result; floats are evaluated without cancellation.
    """
    t = list(t)
    if any(tj < 0 or tj >= 1 for tj in t):
        raise RatioOutOfRange(f"ratios must lie in [0, 1), got {t}")
    if M < 0:
        raise ValueError("coefficient bound must be nonnegative")
    if K < 0:
        raise ValueError("degree must be nonnegative")
    exact = isinstance(M, (int, Fraction)) and all(isinstance(v, (int, Fraction)) for v in t)
    one = Fraction(1) if exact else 1.0
    total = one
    for tj in t:
        total = total / (one - tj)
    # 1 - prod(1 - q_j) = sum_j q_j prod_{i<j} (1 - q_i), all terms nonnegative
    q = [tj ** (K + 1) for tj in t]
    escaped, kept = 0 * one, one
    for qj in q:
        escaped += qj * kept
        kept *= one - qj
    return M * total * escaped


@dataclass(frozen=True)
class ExtensionResult:
    value: complex
    tail_bound: float
    aliasing_estimate: float
    degree: int
    torus: TorusSpec
    ratios: tuple[float, ...] = ()
    coefficient_bound: float = 0.0

    def to_dict(self) -> dict:
        return {
            "value": _pair(self.value),
            "tail_bound": _decimal(self.tail_bound),
            "aliasing_estimate": _decimal(self.aliasing_estimate),
            "degree": self.degree,
            "torus": self.torus.to_dict(),
            "ratios": [_decimal(v) for v in self.ratios],
            "coefficient_bound": _decimal(self.coefficient_bound),
        }


def _shell_mask(window: LaurentWindow) -> np.ndarray:
    half = window.offset
    level = np.max(np.abs(np.stack(window.index_grids())), axis=0)
    return (level == half - 1) | (level == half - 2)


def extend_eval(window: LaurentWindow, z: Sequence[complex], K: int) -> ExtensionResult:
    """Degree-``K`` Taylor partial sum from the non-negative part of ``window``.

    Negative-index entries are ignored. The tail bound is
    :func:`taylor_tail_bound` with ``M = max |d_alpha|`` over the window; the
    outer-shell magnitude is reported separately as an aliasing heuristic.
    """
    z = np.asarray(z, dtype=complex)
    spec = window.spec
    if z.shape != (spec.dimension,):
        raise DimensionMismatch(f"point has shape {z.shape}, expected ({spec.dimension},)")
    if K < 0 or K >= spec.N // 2:
        raise DegreeExceedsWindow(f"degree {K} must be below N/2 = {spec.N // 2}")
    t = spec.ratios(z)
    if np.any(t >= 1):
        raise OutsidePolydisc(f"point {_point_text(z)} is not inside the polydisc of radii {spec.w}")
    off = window.offset
    block = window.scaled[(slice(off, off + K + 1),) * spec.dimension]
    u = z / np.array(spec.w)
    acc = block
    for j in range(spec.dimension):
        acc = np.tensordot(u[j] ** np.arange(K + 1), acc, axes=([0], [0]))
    M = float(np.abs(window.scaled).max())
    tail = float(taylor_tail_bound(M, [float(v) for v in t], K))
    shell = _shell_mask(window)
    alias = float(np.abs(window.scaled[shell]).max()) if shell.any() else 0.0
    return ExtensionResult(complex(acc), tail, alias, K, spec, tuple(float(v) for v in t), M)


def dominating_torus(d: ReinhardtDomain, z: Sequence[complex]) -> tuple[float, ...]:
    """Radii ``w`` in ``d`` with ``|z_j| < w_j`` for every ``j``.

    Maximizes the smallest slack over both the domain's inequalities and the
    dominance constraints ``x_j > log|z_j|`` (exact LP on each piece).
    """
    z = np.asarray(z, dtype=complex)
    if z.shape != (d.dimension,):
        raise DimensionMismatch(f"point has shape {z.shape}, expected ({d.dimension},)")
    n = d.dimension
    extra = []
    for j, zj in enumerate(z):
        if zj != 0:
            normal = tuple(-1 if i == j else 0 for i in range(n))
            extra.append(HalfSpace(normal, -Fraction(math.log(abs(zj))), True))
    best = None
    for shadow in d.shadows:
        found = interior_point(shadow, extra)
        if found is None:
            continue
        x, s = found
        if s > 0 and (best is None or s > best[1]):
            best = (x, s)
    if best is None:
        raise NoDominatingTorus(f"no torus in the domain dominates z = {_point_text(z)}; it lies outside the complete hull")
    w = tuple(math.exp(float(v)) for v in best[0])
    if not contains_modulus(d, np.array(w)) or np.any(np.abs(z) >= np.array(w)):
        raise NoDominatingTorus(f"dominating torus for z = {_point_text(z)} is numerically degenerate")
    return w


def multi_torus_extend(f: HoloFunction, d: ReinhardtDomain, z: Sequence[complex], N: int = 64, K: int | None = None) -> ExtensionResult:
    """Evaluate the Taylor extension of ``f`` at ``z`` from a torus chosen in ``d``."""
    if K is None:
        K = N // 2 - 1
    w = dominating_torus(d, z)
    spec = TorusSpec(w, N)
    return extend_eval(window_for(f, spec), z, K)


@dataclass(frozen=True)
class ConsistencyReport:
    alphas: np.ndarray
    deviations: np.ndarray
    tolerance: float

    @property
    def flagged(self) -> list[tuple[int, ...]]:
        return [tuple(int(a) for a in al) for al, dev in zip(self.alphas, self.deviations) if dev > self.tolerance]

    def max_deviation(self, max_order: int | None = None) -> float:
        """Largest deviation, optionally restricted to ``max_j |alpha_j| <= max_order``."""
        if not self.deviations.size:
            return 0.0
        mask = np.ones(len(self.deviations), bool)
        if max_order is not None:
            mask = np.max(np.abs(self.alphas), axis=1) <= max_order
        return float(self.deviations[mask].max()) if mask.any() else 0.0

    def to_dict(self) -> dict:
        return {
            "tolerance": _decimal(self.tolerance),
            "max_deviation": _decimal(self.max_deviation()),
            "flagged": [list(a) for a in self.flagged],
        }


def consistency_across_tori(
    windows: Sequence[LaurentWindow], tol: float = 1e-9, max_order: int | None = None
) -> ConsistencyReport:
    """Compare unscaled coefficients from different tori on the common window.

    Deviation of ``alpha`` is the largest pairwise ``|c_alpha(w) - c_alpha(w')|``
    divided by ``max(1, |c_alpha|)``.
    """
    windows = list(windows)
    n = windows[0].dimension if windows else 0
    if len(windows) < 2:
        return ConsistencyReport(np.zeros((0, n), int), np.zeros(0), tol)
    half = min(w.offset for w in windows)
    if max_order is not None:
        half = min(half, max_order + 1)
    axis = np.arange(-half, half)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    alphas = np.stack([g.ravel() for g in grids], axis=1)
    coeffs = []
    for w in windows:
        sl = tuple(slice(w.offset - half, w.offset + half) for _ in range(n))
        with np.errstate(over="ignore", invalid="ignore"):
            coeffs.append(w.coefficients()[sl].ravel())
    coeffs = np.stack(coeffs)
    spread = np.zeros(alphas.shape[0])
    for i, j in combinations(range(len(windows)), 2):
        spread = np.maximum(spread, np.abs(coeffs[i] - coeffs[j]))
    scale = np.maximum(1.0, np.abs(coeffs).max(axis=0))
    return ConsistencyReport(alphas, spread / scale, tol)


def auto_tori(
    d: ReinhardtDomain, N: int = 64, count: int = 4, min_radius: float = 1e-4
) -> list[TorusSpec]:
    """Tori marching toward the origin along a joint-negative recession direction.

    Starts from an LP interior point ``x*`` of a piece and steps
    ``x* + k d`` for ``k = 0, 1, ...``, stopping after ``count`` tori or once
    a radius drops below ``min_radius``.
    """
    every = range(d.dimension)
    choice = None
    for shadow in d.shadows:
        direction = negative_recession_direction(shadow, every)
        if direction is not None:
            choice = (shadow, direction)
            break
    if choice is None:
        choice = (d.shadows[0], None)
    shadow, direction = choice
    found = interior_point(shadow)
    if found is None or found[1] <= 0:
        return []
    x0 = found[0]
    tori = []
    for k in range(count):
        if direction is None and k > 0:
            break
        x = [float(a + k * b) for a, b in zip(x0, direction)] if direction is not None else [float(a) for a in x0]
        w = tuple(math.exp(v) for v in x)
        if min(w) < min_radius:
            break
        if not contains_modulus(d, np.array(w)):
            break
        tori.append(TorusSpec(w, N))
    return tori
