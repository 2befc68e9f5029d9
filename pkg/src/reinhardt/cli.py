"""Command-line front end.

Exit codes: 0 success (or CLEAN), 1 OBSTRUCTED, 2 bad input, 3 unsupported
dimension, 4 no valid torus, 5 target outside the complete hull.
Diagnostics go to stderr; data goes to ``--out`` or stdout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import corpus
from .domain import ReinhardtDomain, contains_modulus, domain_from_json, is_log_convex, origin_on_boundary
from .errors import (
    EvaluationFailure,
    NoDominatingTorus,
    ReinhardtError,
    UnknownName,
    UnsupportedDimension,
)
from .hulls import complete_hull, envelope
from .laurent import (
    IndexSplit,
    TorusSpec,
    auto_tori,
    growth_statistic,
    multi_torus_extend,
    negative_part_report,
    windows_for,
)
from .svg import render_svg

EXIT_OK = 0
EXIT_OBSTRUCTED = 1
EXIT_INPUT = 2
EXIT_DIMENSION = 3
EXIT_NO_TORUS = 4
EXIT_OUTSIDE_HULL = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    command: str
    domain: str | None = None
    function: str | None = None
    grid: int = 64
    degree: int | None = None
    tol: float | None = None
    tori: str = "auto"
    seed: int = 0
    out: str | None = None
    svg: str | None = None
    fmt: str = "json"

    def __post_init__(self):
        if self.grid < 2 or self.grid & (self.grid - 1):
            raise CliError(f"--grid must be a power of two, got {self.grid}", EXIT_INPUT)
        if self.degree is not None and not 0 <= self.degree < self.grid // 2:
            raise CliError(f"--degree must satisfy 0 <= K < N/2 = {self.grid // 2}", EXIT_INPUT)
        if self.tol is not None and not self.tol > 0:
            raise CliError("--tol must be positive", EXIT_INPUT)

    @property
    def K(self) -> int:
        return self.degree if self.degree is not None else self.grid // 2 - 1


def _warn(msg: str) -> None:
    print(msg, file=sys.stderr)


def load_domain(spec: str | None) -> tuple[str, ReinhardtDomain]:
    if not spec:
        raise CliError("--domain is required", EXIT_INPUT)
    path = Path(spec)
    if path.suffix == ".json" or path.is_file():
        try:
            text = path.read_text()
        except OSError as exc:
            raise CliError(f"cannot read {spec}: {exc}", EXIT_INPUT) from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CliError(f"{spec}:{exc.lineno}:{exc.colno}: {exc.msg}", EXIT_INPUT) from None
        try:
            return path.stem, domain_from_json(data)
        except (ReinhardtError, ValueError, TypeError) as exc:
            raise CliError(f"{spec}: invalid domain: {exc}", EXIT_INPUT) from None
    try:
        return spec, corpus.builtin_domain(spec).domain
    except (UnknownName, ReinhardtError) as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def load_function(name: str | None, d: ReinhardtDomain):
    if not name:
        raise CliError("--function is required", EXIT_INPUT)
    try:
        named = corpus.builtin_function(name)
        named.check_domain(d)
    except ReinhardtError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None
    return named.function


def resolve_tori(config: RunConfig, d: ReinhardtDomain) -> list[TorusSpec]:
    if config.tori == "auto":
        tori = auto_tori(d, config.grid)
    else:
        try:
            raw = json.loads(config.tori)
            tori = [TorusSpec(tuple(float(v) for v in w), config.grid) for w in raw]
        except (json.JSONDecodeError, TypeError, ValueError) as exc:
            raise CliError(f"--tori must be 'auto' or a JSON list of radius vectors: {exc}", EXIT_INPUT) from None
        kept = []
        for t in tori:
            if t.dimension != d.dimension or not t.inside(d):
                _warn(f"warning: torus {t.w} is not inside the domain; skipped")
            else:
                kept.append(t)
        tori = kept
    if not tori:
        raise CliError("no valid torus found inside the domain", EXIT_NO_TORUS)
    return tori


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_envelope(config: RunConfig) -> int:
    name, d = load_domain(config.domain)
    try:
        ch = complete_hull(d)
        env = envelope(d)
    except UnsupportedDimension as exc:
        raise CliError(str(exc), EXIT_DIMENSION) from None
    convexity = is_log_convex(d, seed=config.seed)
    payload = {
        "domain": d.to_dict(),
        "origin_on_boundary": origin_on_boundary(d),
        "log_convex": convexity.status,
        "complete_hull": ch.to_dict(),
        "envelope": env.to_dict(),
    }
    _emit(json.dumps(payload, indent=2) + "\n", config.out)
    svg_path = config.svg or (str(Path(config.out).with_suffix(".svg")) if config.out else None)
    if svg_path and d.dimension == 2:
        Path(svg_path).write_text(render_svg(d, ch.hull, env.hull, title=f"{name}: hulls"))
    return EXIT_OK


def _hypothesis_warning(d: ReinhardtDomain) -> None:
    if origin_on_boundary(d):
        return
    if contains_modulus(d, np.zeros(d.dimension)):
        _warn("warning: origin is interior, theorem hypothesis fails")
    else:
        _warn("warning: origin is not a boundary point, theorem hypothesis fails")


def cmd_check(config: RunConfig) -> int:
    _, d = load_domain(config.domain)
    f = load_function(config.function, d)
    _hypothesis_warning(d)
    tori = resolve_tori(config, d)
    try:
        windows = windows_for(f, tori)
    except EvaluationFailure as exc:
        raise CliError(str(exc), EXIT_NO_TORUS) from None
    report = negative_part_report(windows, config.tol)
    growth = None
    if report.worst_alpha is not None:
        split = IndexSplit(report.worst_alpha)
        growth = [growth_statistic(w, split) for w in windows]

    if config.fmt == "csv":
        n = d.dimension
        rows = [["torus"] + [f"w{j + 1}" for j in range(n)] + [f"alpha{j + 1}" for j in range(n)] + ["abs_d", "t"]]
        for t, w in enumerate(windows):
            for alpha, mag in zip(report.alphas, report.magnitudes[:, t]):
                split = IndexSplit(tuple(int(a) for a in alpha))
                rows.append([t, *(repr(v) for v in w.spec.w), *split.alpha, repr(float(mag)), repr(growth_statistic(w, split))])
        text = _csv_text(rows)
    else:
        payload = {"function": f.name, "report": report.to_dict()}
        if growth is not None:
            payload["growth"] = {"alpha": list(report.worst_alpha), "t": [repr(v) for v in growth]}
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, config.out)
    _warn(f"{report.verdict}: max negative-index |d| = {report.max_negative_magnitude:.3e}"
          + (f" at alpha={report.worst_alpha}" if not report.clean else ""))
    return EXIT_OK if report.clean else EXIT_OBSTRUCTED


def parse_point(values: list[str], n: int) -> np.ndarray:
    parts: list[str] = []
    for v in values:
        parts += [p for p in v.replace(";", ",").split(",") if p.strip()]
    try:
        z = np.array([complex(p.strip().replace("i", "j")) for p in parts])
    except ValueError as exc:
        raise CliError(f"cannot parse point {values}: {exc}", EXIT_INPUT) from None
    if z.shape != (n,):
        raise CliError(f"point needs {n} coordinates, got {len(parts)}", EXIT_INPUT)
    return z


def cmd_extend(config: RunConfig, z: list[str]) -> int:
    _, d = load_domain(config.domain)
    f = load_function(config.function, d)
    point = parse_point(z, d.dimension)
    try:
        result = multi_torus_extend(f, d, point, config.grid, config.K)
    except NoDominatingTorus as exc:
        raise CliError(str(exc), EXIT_OUTSIDE_HULL) from None
    except EvaluationFailure as exc:
        raise CliError(str(exc), EXIT_NO_TORUS) from None
    payload = {"function": f.name, "z": [[float(c.real), float(c.imag)] for c in point]}
    payload.update(result.to_dict())
    _emit(json.dumps(payload, indent=2) + "\n", config.out)
    _warn(f"value = {result.value:.15g}, tail bound = {result.tail_bound:.3e}, torus w = {result.torus.w}")
    return EXIT_OK


def cmd_plot(config: RunConfig) -> int:
    name, d = load_domain(config.domain)
    if d.dimension != 2:
        raise CliError(f"plots need n = 2, got n = {d.dimension}", EXIT_DIMENSION)
    ch, env = complete_hull(d), envelope(d)
    tori = [t.w for t in resolve_tori(config, d)] if config.tori != "none" else []
    _emit(render_svg(d, ch.hull, env.hull, tori, title=name), config.out)
    return EXIT_OK


def cmd_list_domains(config: RunConfig) -> int:
    _emit(json.dumps(corpus.DOMAIN_CATALOG, indent=2) + "\n", config.out)
    return EXIT_OK


def cmd_list_functions(config: RunConfig) -> int:
    _emit(json.dumps(corpus.FUNCTION_CATALOG, indent=2) + "\n", config.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--domain", help="domain JSON file or built-in name (see list-domains)")
    common.add_argument("--function", help="built-in function name (see list-functions)")
    common.add_argument("--grid", type=int, default=64, help="torus grid size N, a power of two")
    common.add_argument("--degree", type=int, default=None, help="Taylor truncation degree K < N/2")
    common.add_argument("--tol", type=float, default=None, help="vanishing tolerance (default 1e-9 relative)")
    common.add_argument("--tori", default="auto", help="'auto' or a JSON list of radius vectors")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--svg", default=None, help="SVG path for envelope (n = 2)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")

    parser = argparse.ArgumentParser(prog="reinhardt", description="Reinhardt domain hulls and holomorphic extension.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("envelope", parents=[common], help="complete and log-convex complete hulls")
    sub.add_parser("check", parents=[common], help="negative-index coefficient test on tori")
    ext = sub.add_parser("extend", parents=[common], help="evaluate the Taylor extension at a point")
    ext.add_argument("z", nargs="+", help="point coordinates, e.g. 0.5 0.25 or 0.5+0.1j,0.25")
    sub.add_parser("plot", parents=[common], help="SVG of the modulus and log shadows (n = 2)")
    sub.add_parser("list-domains", parents=[common], help="built-in domains as JSON")
    sub.add_parser("list-functions", parents=[common], help="built-in functions as JSON")
    return parser


COMMANDS = {
    "envelope": cmd_envelope,
    "check": cmd_check,
    "plot": cmd_plot,
    "list-domains": cmd_list_domains,
    "list-functions": cmd_list_functions,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            domain=args.domain,
            function=args.function,
            grid=args.grid,
            degree=args.degree,
            tol=args.tol,
            tori=args.tori,
            seed=args.seed,
            out=args.out,
            svg=args.svg,
            fmt=args.fmt,
        )
        if args.command == "extend":
            return cmd_extend(config, args.z)
        return COMMANDS[args.command](config)
    except CliError as exc:
        _warn(f"error: {exc}")
        return exc.code
    except UnsupportedDimension as exc:
        _warn(f"error: {exc}")
        return EXIT_DIMENSION
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


if __name__ == "__main__":
    sys.exit(main())
