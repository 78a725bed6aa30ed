"""Command-line surface: symbol ingestion, experiment orchestration, reports.

Subcommands: measure, trace-check, winding, index-check, smooth-limit,
besov, gallery.  Outputs are deterministic: stable ordering, floats printed
with 17 significant digits.  Exit codes: 0 success, 2 validation error,
3 numerical failure; errors emit a JSON diagnostic on standard error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import besov as besov_mod
from . import gallery as gallery_mod
from .degree import GridSpec, SampledCurve, default_grid, winding
from .errors import (NUMERICAL_ERRORS, VALIDATION_ERRORS, HHMeasureError,
                     RangeError, WindingUndefined)
from .measure import hh_density, index_check, smoothing_limit_probe, trace_formula_check
from .poly import BivariatePolynomial, parse_polynomial
from .symbols import FourierSymbol, load_symbol_spec

_MAX_CELLS = 10 ** 7


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _dump_json(obj, indent: int = 0) -> str:
    """Deterministic JSON: sorted keys, 17-significant-digit floats."""
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}  "{k}": {_dump_json(obj[k], indent + 2).lstrip()}'
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + "  " + _dump_json(v, indent + 2).lstrip() for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(obj)
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj)}")


def _diagnostic(code: str, exc: Exception) -> None:
    payload = {"error": type(exc).__name__, "code": code, "message": str(exc)}
    sys.stderr.write(_dump_json(payload) + "\n")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _diagnostic("schema", ValueError(message))
        raise SystemExit(2)


@dataclass
class RunConfig:
    """Validated invocation: subcommand plus every tunable the CLI exposes."""

    subcommand: str
    symbol_path: str | None = None
    grid: GridSpec | None = None
    r_list: tuple = ()
    n_override: int | None = None
    tol: float | None = None
    out_path: str | None = None
    format: str = "json"
    p_text: str | None = None
    q_text: str | None = None
    points: tuple = ()
    count: int = 20
    exponent_p: float | None = None
    exponent_q: float | None = None

    def __post_init__(self):
        if self.grid is not None and self.grid.nx * self.grid.ny > _MAX_CELLS:
            raise RangeError(f"grid exceeds the {_MAX_CELLS} cell guard")
        for r in self.r_list:
            if not 0.0 < r <= 1.0:
                raise RangeError(f"r must lie in (0,1], got {r}")
        if self.format not in ("json", "csv"):
            raise RangeError(f"format must be json or csv, got {self.format}")


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(",")
    if len(parts) != 6:
        raise RangeError("grid must be x0,x1,y0,y1,nx,ny")
    x0, x1, y0, y1 = (float(v) for v in parts[:4])
    nx, ny = int(parts[4]), int(parts[5])
    return GridSpec(x0, x1, y0, y1, nx, ny)


def _parse_point(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise RangeError("point must be re,im")
    return complex(float(parts[0]), float(parts[1]))


def _load_symbol(config: RunConfig) -> FourierSymbol:
    if not config.symbol_path:
        raise RangeError("this subcommand requires --symbol")
    return load_symbol_spec(config.symbol_path)


def _default_r(sym: FourierSymbol) -> float:
    return 1.0 if sym.is_finite_band else 0.999


def _poly_or(text: str | None, fallback: BivariatePolynomial) -> BivariatePolynomial:
    if text is None:
        return fallback
    try:
        return parse_polynomial(text)
    except ValueError as exc:
        raise RangeError(str(exc)) from exc


def _emit(config: RunConfig, text: str) -> None:
    if config.out_path:
        with open(config.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommand bodies ---------------------------------------------------------

def _run_measure(config: RunConfig) -> int:
    sym = _load_symbol(config)
    r = config.r_list[0] if config.r_list else _default_r(sym)
    grid = config.grid or default_grid(sym)
    density = hh_density(sym, r, grid, refine=False)
    mg = density.grid
    if config.format == "csv":
        lines = [
            f"# grid=({_fmt(grid.x0)},{_fmt(grid.x1)},{_fmt(grid.y0)},{_fmt(grid.y1)})"
            f" nx={grid.nx} ny={grid.ny} r={_fmt(r)}"
            f" tail_bound={_fmt(sym.tail_bound)}"
            f" masked_area_fraction={_fmt(density.masked_area_fraction)}",
            "x,y,density_re,density_im,valid",
        ]
        cx, cy = grid.centers_x(), grid.centers_y()
        for j in range(grid.ny):
            for i in range(grid.nx):
                v = density.values[j, i]
                lines.append(f"{_fmt(cx[i])},{_fmt(cy[j])},{_fmt(v.real)},{_fmt(v.imag)},"
                             f"{0 if mg.invalid[j, i] else 1}")
        _emit(config, "\n".join(lines) + "\n")
    else:
        cells = []
        cx, cy = grid.centers_x(), grid.centers_y()
        for j in range(grid.ny):
            for i in range(grid.nx):
                v = density.values[j, i]
                cells.append({"x": float(cx[i]), "y": float(cy[j]),
                              "re": float(v.real), "im": float(v.imag),
                              "valid": not bool(mg.invalid[j, i])})
        doc = {"grid": grid.to_dict(), "r": r, "tail_bound": sym.tail_bound,
               "masked_area_fraction": density.masked_area_fraction, "cells": cells}
        _emit(config, _dump_json(doc) + "\n")
    return 0


def _run_trace_check(config: RunConfig) -> int:
    sym = _load_symbol(config)
    p = _poly_or(config.p_text, BivariatePolynomial.x())
    q = _poly_or(config.q_text, BivariatePolynomial.y())
    r = config.r_list[0] if config.r_list else _default_r(sym)
    grid = config.grid or default_grid(sym)
    report = trace_formula_check(sym, p, q, grid, r, n_override=config.n_override)
    _emit(config, _dump_json(report.to_dict()) + "\n")
    if config.tol is not None and report.abs_err > config.tol:
        _diagnostic("tolerance", RangeError(
            f"abs_err {report.abs_err:g} exceeds --tol {config.tol:g}"))
        return 3
    return 0


def _run_winding(config: RunConfig) -> int:
    sym = _load_symbol(config)
    if not config.points:
        raise RangeError("winding requires at least one --point re,im")
    r = config.r_list[0] if config.r_list else _default_r(sym)
    eps = config.tol if config.tol is not None else 1e-8
    curve = SampledCurve.from_symbol(sym, r)
    rows = []
    for lam in config.points:
        w = winding(curve, lam, eps)
        rows.append({"lambda": {"re": lam.real, "im": lam.imag}, "winding": w})
    _emit(config, _dump_json({"r": r, "eps": eps, "rows": rows,
                              "tail_bound": sym.tail_bound}) + "\n")
    return 0


def _run_index_check(config: RunConfig) -> int:
    sym = _load_symbol(config)
    r = config.r_list[0] if config.r_list else _default_r(sym)
    grid = config.grid or default_grid(sym)
    density = hh_density(sym, r, grid, refine=False)
    points = list(config.points)
    if not points:
        rng = np.random.default_rng(0)
        budget = 50 * config.count
        while len(points) < config.count and budget > 0:
            budget -= 1
            w = complex(rng.uniform(grid.x0, grid.x1), rng.uniform(grid.y0, grid.y1))
            if density.grid.value_at(w) is not None:
                points.append(w)
        if len(points) < config.count:
            raise WindingUndefined("mask budget exhausted while sampling points")
    rows = []
    all_ok = True
    for lam in points:
        wind, value, ok = index_check(sym, lam, r, density=density)
        all_ok &= ok
        rows.append({"lambda": {"re": lam.real, "im": lam.imag}, "winding": wind,
                     "density": {"re": value.real, "im": value.imag}, "ok": ok})
    _emit(config, _dump_json({"r": r, "all_ok": all_ok, "rows": rows,
                              "tail_bound": sym.tail_bound,
                              "masked_area_fraction": density.masked_area_fraction}) + "\n")
    return 0


def _run_smooth_limit(config: RunConfig) -> int:
    sym = _load_symbol(config)
    p = _poly_or(config.p_text, BivariatePolynomial.x())
    q = _poly_or(config.q_text, BivariatePolynomial.y())
    r_list = config.r_list or (0.9, 0.99, 0.999)
    grid = config.grid or default_grid(sym)
    report = smoothing_limit_probe(sym, p, q, r_list, grid)
    _emit(config, _dump_json(report.to_dict()) + "\n")
    return 0


def _run_besov(config: RunConfig) -> int:
    sym = _load_symbol(config)
    p = config.exponent_p if config.exponent_p is not None else 2.0
    f_rep, g_rep = besov_mod.besov_membership(sym, p)
    doc = {"p": p, "analytic_half": f_rep.to_dict(),
           "coanalytic_half": g_rep.to_dict(), "tail_bound": sym.tail_bound}
    if config.exponent_q is not None:
        verdict = besov_mod.almost_normal_sufficient(sym, p, config.exponent_q)
        doc["almost_normal_sufficient"] = verdict.to_dict()
    _emit(config, _dump_json(doc) + "\n")
    return 0


def _run_gallery(config: RunConfig) -> int:
    rows = gallery_mod.summary_table()
    if config.format == "csv":
        def cell(value):
            if value is None:
                return ""
            if isinstance(value, bool):
                return str(value).lower()
            return _fmt(float(value))

        lines = ["case,quantity,computed,closed_form"]
        for row in rows:
            lines.append(f"{row['case']},{row['quantity']},"
                         f"{cell(row['computed'])},{cell(row['closed_form'])}")
        _emit(config, "\n".join(lines) + "\n")
    else:
        _emit(config, _dump_json({"rows": rows}) + "\n")
    return 0


_SUBCOMMANDS = {
    "measure": _run_measure,
    "trace-check": _run_trace_check,
    "winding": _run_winding,
    "index-check": _run_index_check,
    "smooth-limit": _run_smooth_limit,
    "besov": _run_besov,
    "gallery": _run_gallery,
}


def run(config: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit code."""
    handler = _SUBCOMMANDS.get(config.subcommand)
    if handler is None:
        _diagnostic("schema", RangeError(f"unknown subcommand {config.subcommand!r}"))
        return 2
    try:
        return handler(config)
    except VALIDATION_ERRORS as exc:
        _diagnostic("schema", exc)
        return 2
    except NUMERICAL_ERRORS as exc:
        _diagnostic("numerical", exc)
        return 3
    except HHMeasureError as exc:
        _diagnostic("error", exc)
        return 3


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hhmeasure",
                     description="Helton-Howe measure densities of Toeplitz operators")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in _SUBCOMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--symbol", help="path to a symbol-spec JSON file")
        sp.add_argument("--grid", help="x0,x1,y0,y1,nx,ny")
        sp.add_argument("--r", action="append", type=float, default=None,
                        help="smoothing radius in (0,1]; repeatable")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("json", "csv"),
                        default="csv" if name == "measure" else "json")
        sp.add_argument("--tol", type=float, default=None,
                        help="tolerance override (trace-check gate / winding eps)")
        sp.add_argument("--n", type=int, default=None, help="truncation override")
        if name in ("trace-check", "smooth-limit"):
            sp.add_argument("--p", help="polynomial, e.g. 'x^2*y+3*x'")
            sp.add_argument("--q", help="polynomial, e.g. 'y'")
        if name in ("winding", "index-check"):
            sp.add_argument("--point", action="append", default=None,
                            help="query point re,im; repeatable")
            sp.add_argument("--count", type=int, default=20,
                            help="number of sampled points when --point is absent")
        if name == "besov":
            sp.add_argument("--p", help="Besov exponent (float)")
            sp.add_argument("--q", help="conjugate exponent (float or inf)")
    return parser


def _config_from_args(args) -> RunConfig:
    grid = _parse_grid(args.grid) if args.grid else None
    points = tuple(_parse_point(t) for t in (getattr(args, "point", None) or ()))
    exponent_p = exponent_q = None
    p_text = getattr(args, "p", None)
    q_text = getattr(args, "q", None)
    if args.subcommand == "besov":
        exponent_p = float(p_text) if p_text is not None else None
        exponent_q = float(q_text) if q_text is not None else None
        p_text = q_text = None
    return RunConfig(
        subcommand=args.subcommand,
        symbol_path=args.symbol,
        grid=grid,
        r_list=tuple(args.r) if args.r else (),
        n_override=args.n,
        tol=args.tol,
        out_path=args.out,
        format=args.format,
        p_text=p_text,
        q_text=q_text,
        points=points,
        count=getattr(args, "count", 20),
        exponent_p=exponent_p,
        exponent_q=exponent_q,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config_from_args(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except VALIDATION_ERRORS as exc:
        _diagnostic("schema", exc)
        return 2
    except ValueError as exc:
        _diagnostic("schema", exc)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
