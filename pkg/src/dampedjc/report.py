"""Render the standard figure set to PNG files, with CSV data alongside.

Seven figures cover the phenomenology: resonant concurrence curves for both
families across decay strengths, the sudden-death illustration, detuned
curves, and the detuning/time contour sweeps.  Every figure gets a
companion CSV holding exactly the plotted data.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import analysis
from .analysis import AxisSpec, Source
from .model import Family, InitialState, ModelParams

_GAMMAS = (0.0, 0.5, 1.0)
_ALPHAS = (math.pi / 12, math.pi / 6, math.pi / 4)
_DELTAS = (0.0, 1.0, 3.0, 5.0)

_ALPHA_LABEL = {math.pi / 12: "pi/12", math.pi / 6: "pi/6", math.pi / 4: "pi/4"}


def _curve(family: Family, alpha: float, gamma: float, delta: float,
           t_max: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    tr = analysis.trace(
        ModelParams.from_rates(gamma=gamma, delta=delta),
        InitialState(family, alpha), t_max, n, Source.CLOSED_FORM,
    )
    return tr.times, tr.values


def _save_csv(path: Path, header: list[str], columns: list[np.ndarray]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as stream:
        stream.write(",".join(header) + "\n")
        for row in zip(*columns):
            stream.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _family_panels(family: Family, t_max: float, n: int, outdir: Path,
                   stem: str, dpi: int) -> list[Path]:
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.4), sharey=True)
    header = ["T"]
    columns = []
    times = None
    for ax, gamma in zip(axes, _GAMMAS):
        for alpha in _ALPHAS:
            times, values = _curve(family, alpha, gamma, 0.0, t_max, n)
            ax.plot(times, values, label=f"alpha={_ALPHA_LABEL[alpha]}")
            header.append(f"C_gamma{gamma:g}_alpha{_ALPHA_LABEL[alpha].replace('/', '_')}")
            columns.append(values)
        ax.set_title(f"gamma = {gamma:g} g")
        ax.set_xlabel("T = g t")
        ax.grid(alpha=0.3)
    axes[0].set_ylabel("concurrence")
    axes[0].legend(fontsize=8)
    fig.suptitle(f"{family.value} family, resonant (delta = 0)")
    fig.tight_layout()
    png = outdir / f"{stem}.png"
    fig.savefig(png, dpi=dpi)
    plt.close(fig)
    csv = outdir / f"{stem}.csv"
    _save_csv(csv, header, [times] + columns)
    return [png, csv]


def _decay_comparison(t_max: float, n: int, outdir: Path, dpi: int) -> list[Path]:
    alpha = math.pi / 6
    fig, ax = plt.subplots(figsize=(6, 3.6))
    header = ["T"]
    columns = []
    times = None
    for gamma in _GAMMAS:
        times, values = _curve(Family.PHI, alpha, gamma, 0.0, t_max, n)
        ax.plot(times, values, label=f"gamma = {gamma:g} g")
        header.append(f"C_gamma{gamma:g}")
        columns.append(values)
    ax.set_xlabel("T = g t")
    ax.set_ylabel("concurrence")
    ax.set_title("phi family, alpha = pi/6: decay weakens sudden death")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    png = outdir / "phi_decay_comparison.png"
    fig.savefig(png, dpi=dpi)
    plt.close(fig)
    csv = outdir / "phi_decay_comparison.csv"
    _save_csv(csv, header, [times] + columns)
    return [png, csv]


def _detuned_panels(family: Family, t_max: float, n: int, outdir: Path,
                    stem: str, dpi: int) -> list[Path]:
    alpha = math.pi / 6
    gammas = (0.0, 0.5)
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.4), sharey=True)
    header = ["T"]
    columns = []
    times = None
    for ax, gamma in zip(axes, gammas):
        for delta in _DELTAS:
            times, values = _curve(family, alpha, gamma, delta, t_max, n)
            ax.plot(times, values, label=f"delta = {delta:g} g")
            header.append(f"C_gamma{gamma:g}_delta{delta:g}")
            columns.append(values)
        ax.set_title(f"gamma = {gamma:g} g")
        ax.set_xlabel("T = g t")
        ax.grid(alpha=0.3)
    axes[0].set_ylabel("concurrence")
    axes[0].legend(fontsize=8)
    fig.suptitle(f"{family.value} family, alpha = pi/6, detuned")
    fig.tight_layout()
    png = outdir / f"{stem}.png"
    fig.savefig(png, dpi=dpi)
    plt.close(fig)
    csv = outdir / f"{stem}.csv"
    _save_csv(csv, header, [times] + columns)
    return [png, csv]


def _contour(family: Family, n_axis: int, outdir: Path, stem: str, dpi: int) -> list[Path]:
    alpha = math.pi / 6
    t_max = 2.0 * math.pi
    axis_d = AxisSpec("delta", -5.0, 5.0, n_axis)
    axis_t = AxisSpec("T", 0.0, t_max, n_axis)
    fig, axes = plt.subplots(1, 2, figsize=(10, 3.8), sharey=True)
    paths = []
    for ax, gamma in zip(axes, (0.0, 0.8)):
        grid = analysis.sweep(axis_d, axis_t, InitialState(family, alpha), gamma=gamma)
        mesh = ax.pcolormesh(axis_t.grid, axis_d.grid, grid.values,
                             shading="nearest", vmin=0.0, vmax=1.0, cmap="viridis")
        ax.set_title(f"gamma = {gamma:g} g")
        ax.set_xlabel("T = g t")
        csv = outdir / f"{stem}_gamma{gamma:g}.csv"
        rows = (
            (d, t, grid.values[i, j])
            for i, d in enumerate(axis_d.grid)
            for j, t in enumerate(axis_t.grid)
        )
        with open(csv, "w", encoding="utf-8", newline="") as stream:
            stream.write("delta,T,C\n")
            for row in rows:
                stream.write(",".join(f"{v:.17g}" for v in row) + "\n")
        paths.append(csv)
    axes[0].set_ylabel("delta / g")
    fig.colorbar(mesh, ax=axes, label="concurrence")
    fig.suptitle(f"{family.value} family, alpha = pi/6")
    png = outdir / f"{stem}.png"
    fig.savefig(png, dpi=dpi)
    plt.close(fig)
    return [png] + paths


def generate_all(outdir: str, dpi: int = 150, quick: bool = False) -> list[str]:
    """Render every figure; returns the list of files written."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    t_max = 4.0 * math.pi
    n = 401 if quick else 4001
    n_axis = 41 if quick else 201
    paths: list[Path] = []
    paths += _family_panels(Family.PSI, t_max, n, out, "psi_resonant", dpi)
    paths += _family_panels(Family.PHI, t_max, n, out, "phi_resonant", dpi)
    paths += _decay_comparison(t_max, n, out, dpi)
    paths += _detuned_panels(Family.PSI, t_max, n, out, "psi_detuned", dpi)
    paths += _detuned_panels(Family.PHI, t_max, n, out, "phi_detuned", dpi)
    paths += _contour(Family.PSI, n_axis, out, "psi_contour", dpi)
    paths += _contour(Family.PHI, n_axis, out, "phi_contour", dpi)
    return [str(p) for p in paths]
