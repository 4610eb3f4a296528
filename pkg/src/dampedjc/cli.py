"""Command-line front end.

Subcommands emit plot-ready CSV or JSON; `report` additionally renders the
standard figure set to PNG files next to its data.  All numeric output uses
17 significant digits and LF line endings, and identical configurations
produce byte-identical files.

Exit codes: 0 success, 1 validation failure, 2 bad configuration,
3 output-file failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import analysis
from .analysis import AxisSpec, Source
from .model import Family, InitialState, ModelParams

_FMT = "{:.17g}"


def _fmt(x: float) -> str:
    return _FMT.format(float(x))


def _parse_source(text: str) -> str:
    if text not in ("closed", "oracle", "both"):
        raise argparse.ArgumentTypeError(f"source must be closed, oracle or both, got {text!r}")
    return text


def _single_source(text: str) -> Source:
    # "both" only makes sense for evolve, which emits paired columns
    if text not in ("closed", "oracle"):
        raise argparse.ArgumentTypeError(f"source must be closed or oracle, got {text!r}")
    return Source(text)


def _parse_axis(text: str) -> AxisSpec:
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"axis spec must be name:lo:hi:n, got {text!r}")
    name, lo, hi, n = parts
    try:
        return AxisSpec(name=name, lo=float(lo), hi=float(hi), n=int(n))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_physics_args(p: argparse.ArgumentParser, need_initial: bool = True) -> None:
    if need_initial:
        p.add_argument("--initial", choices=["psi", "phi"], required=True,
                       help="initial-state family")
        p.add_argument("--alpha", type=float, required=True,
                       help="superposition angle in radians (pi/6 ~ 0.5236, pi/4 ~ 0.7854)")
    p.add_argument("--gamma", type=float, default=0.0, help="decay rate in units of g")
    p.add_argument("--delta", type=float, default=0.0, help="detuning in units of g")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default=None, help="output path (default: stdout)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dampedjc",
        description="Entanglement dynamics of two atoms in independent lossy "
                    "Jaynes-Cummings cavities (g is fixed to 1; time is T = g*t).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="concurrence along a time grid")
    _add_physics_args(p)
    p.add_argument("--tmax", type=float, required=True, help="final dimensionless time")
    p.add_argument("--samples", type=int, default=2001, help="number of time samples (>= 2)")
    p.add_argument("--source", type=_parse_source, default="closed")
    p.add_argument("--renormalize", action="store_true",
                   help="scale the reduced density matrix to unit trace")
    p.add_argument("--dt", type=float, default=analysis.DEFAULT_DT,
                   help="integrator step for the oracle path")
    _add_output_args(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("sweep", help="concurrence on a 2-D parameter grid")
    _add_physics_args(p)
    p.add_argument("--axes", type=_parse_axis, nargs=2, required=True, metavar="NAME:LO:HI:N",
                   help="two axis specs over delta, gamma, alpha, T")
    p.add_argument("--T", type=float, default=None, help="fixed time when T is not an axis")
    p.add_argument("--source", type=_single_source, default=Source.CLOSED_FORM)
    p.add_argument("--renormalize", action="store_true")
    p.add_argument("--dt", type=float, default=analysis.DEFAULT_DT)
    _add_output_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("sde", help="sudden-death interval report")
    _add_physics_args(p)
    p.add_argument("--tmax", type=float, default=4.0 * math.pi)
    p.add_argument("--samples", type=int, default=None,
                   help="time samples (default: 2000 per 2*pi)")
    p.add_argument("--tol", type=float, default=1.0e-9, help="negativity threshold")
    p.add_argument("--source", type=_single_source, default=Source.CLOSED_FORM)
    p.add_argument("--renormalize", action="store_true")
    p.add_argument("--dt", type=float, default=analysis.DEFAULT_DT)
    p.add_argument("--output", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_sde)

    p = sub.add_parser("validate", help="closed form vs oracle over the reference grid")
    p.add_argument("--dt", type=float, default=analysis.DEFAULT_DT)
    p.add_argument("--tmax", type=float, default=5.0 * math.pi)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1.0e-6, help="max allowed |C_closed - C_oracle|")
    p.add_argument("--output", default=None, help="optional JSON summary path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", help="render the standard figure set with CSV data")
    p.add_argument("--outdir", default="reports", help="directory for PNG and CSV files")
    p.add_argument("--dpi", type=int, default=150)
    p.add_argument("--quick", action="store_true", help="coarser grids, for smoke tests")
    p.set_defaults(func=cmd_report)

    return parser


def _open_output(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def _write_rows(path, header: list[str], rows) -> int:
    stream, close = _open_output(path)
    try:
        stream.write(",".join(header) + "\n")
        for row in rows:
            stream.write(",".join(_fmt(v) for v in row) + "\n")
    finally:
        if close:
            stream.close()
    return 0


def _write_json(path, payload) -> int:
    stream, close = _open_output(path)
    try:
        json.dump(payload, stream, indent=2)
        stream.write("\n")
    finally:
        if close:
            stream.close()
    return 0


def cmd_evolve(args) -> int:
    params = ModelParams.from_rates(gamma=args.gamma, delta=args.delta)
    initial = InitialState(Family(args.initial), args.alpha)
    sources = {
        "closed": [Source.CLOSED_FORM],
        "oracle": [Source.ORACLE],
        "both": [Source.CLOSED_FORM, Source.ORACLE],
    }[args.source]
    traces = [
        analysis.trace(params, initial, args.tmax, args.samples, src, args.dt, args.renormalize)
        for src in sources
    ]
    primary = traces[0]
    header = ["T", "C", "raw", "norm"]
    columns = [primary.times, primary.values, primary.raws, np.array(primary.norms)]
    if len(traces) == 2:
        header.append("C_oracle")
        columns.append(traces[1].values)
    if args.format == "csv":
        return _write_rows(args.output, header, zip(*columns))
    payload = {
        "config": _config_echo(args),
        **{name: [float(v) for v in col] for name, col in zip(header, columns)},
    }
    return _write_json(args.output, payload)


def cmd_sweep(args) -> int:
    axis1, axis2 = args.axes
    initial = InitialState(Family(args.initial), args.alpha)
    grid = analysis.sweep(
        axis1, axis2, initial,
        gamma=args.gamma, delta=args.delta, T=args.T,
        source=args.source, dt=args.dt, renormalize=args.renormalize,
    )
    if args.format == "csv":
        rows = (
            (v1, v2, grid.values[i, j])
            for i, v1 in enumerate(axis1.grid)
            for j, v2 in enumerate(axis2.grid)
        )
        return _write_rows(args.output, ["axis1", "axis2", "C"], rows)
    payload = {
        "config": _config_echo(args),
        "axis1": {"name": axis1.name, "values": [float(v) for v in axis1.grid]},
        "axis2": {"name": axis2.name, "values": [float(v) for v in axis2.grid]},
        "fixed": grid.fixed,
        "C": [[float(v) for v in row] for row in grid.values],
    }
    return _write_json(args.output, payload)


def cmd_sde(args) -> int:
    params = ModelParams.from_rates(gamma=args.gamma, delta=args.delta)
    initial = InitialState(Family(args.initial), args.alpha)
    n = args.samples
    if n is None:
        n = max(2, int(round(analysis.SAMPLES_PER_2PI * args.tmax / (2.0 * math.pi))))
    tr = analysis.trace(params, initial, args.tmax, n, args.source, args.dt, args.renormalize)
    report = analysis.detect_sde(tr, args.tol)
    payload = {
        "parameters": _config_echo(args),
        "intervals": [
            {
                "death_T": a,
                "revival_T": None if math.isinf(b) else b,
                "length": None if math.isinf(b) else b - a,
            }
            for a, b in report.intervals
        ],
        "min_raw": report.min_raw,
        "tolerance": report.tolerance,
    }
    return _write_json(args.output, payload)


def cmd_validate(args) -> int:
    cells = analysis.compare_closed_oracle(
        T_max=args.tmax, n_samples=args.samples, dt=args.dt
    )
    worst = max(cells, key=lambda c: c.max_abs_diff)
    lines = []
    for c in cells:
        status = "ok" if c.max_abs_diff < args.tol else "FAIL"
        lines.append(
            f"{c.family.value:3s} kappa={c.kappa:<4g} delta={c.delta:<4g} "
            f"alpha={c.alpha:.4f}  max|dC|={c.max_abs_diff:.3e}  {status}"
        )
    print("\n".join(lines))
    ok = worst.max_abs_diff < args.tol
    print(
        f"worst cell: {worst.family.value} kappa={worst.kappa} delta={worst.delta} "
        f"alpha={worst.alpha:.4f} with max|dC|={worst.max_abs_diff:.3e} "
        f"({'PASS' if ok else 'FAIL'} at tol={args.tol:g})"
    )
    if args.output is not None:
        payload = {
            "tolerance": args.tol,
            "pass": ok,
            "cells": [
                {
                    "family": c.family.value,
                    "kappa": c.kappa,
                    "delta": c.delta,
                    "alpha": c.alpha,
                    "max_abs_diff": c.max_abs_diff,
                }
                for c in cells
            ],
        }
        _write_json(args.output, payload)
    return 0 if ok else 1


def cmd_report(args) -> int:
    from . import report

    paths = report.generate_all(args.outdir, dpi=args.dpi, quick=args.quick)
    for p in paths:
        print(p)
    return 0


def _config_echo(args) -> dict:
    skip = {"func", "command", "output", "format"}
    echo = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value is None:
            continue
        if isinstance(value, Source):
            value = value.value
        elif isinstance(value, AxisSpec):
            value = f"{value.name}:{value.lo:g}:{value.hi:g}:{value.n}"
        elif isinstance(value, list) and value and isinstance(value[0], AxisSpec):
            value = [f"{a.name}:{a.lo:g}:{a.hi:g}:{a.n}" for a in value]
        echo[key] = value
    return echo


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error writing output: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
