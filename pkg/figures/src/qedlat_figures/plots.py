"""Heatmap and line-cut rendering.

The color scale is pinned to [0, 1] (the measure's proven range) so figures
from different runs are directly comparable.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .table import SweepTable, TableError, load_sweep_table

__all__ = ["render_heatmap", "render_cuts"]


def _edges(grid: np.ndarray) -> np.ndarray:
    """Cell boundaries around the (possibly single) grid points."""
    if len(grid) == 1:
        half = max(abs(grid[0]) / 2, 0.5)
        return np.array([grid[0] - half, grid[0] + half])
    mids = (grid[:-1] + grid[1:]) / 2
    return np.concatenate([[2 * grid[0] - mids[0]], mids, [2 * grid[-1] - mids[-1]]])


def render_heatmap(csv_path: str | Path, out_path: str | Path) -> SweepTable:
    """Draw mean non-Markovianity versus (sigma, g) and save a PNG."""
    table = load_sweep_table(csv_path)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    mesh = ax.pcolormesh(
        _edges(table.sigma_grid),
        _edges(table.g_grid),
        table.mean_n.T,
        vmin=0.0,
        vmax=1.0,
        cmap="viridis",
        shading="flat",
    )
    ax.set_xlabel(r"disorder strength $\sigma$ (units of $J$)")
    ax.set_ylabel(r"coupling $g$ (units of $J$)")
    fig.colorbar(mesh, ax=ax, label=r"mean non-Markovianity $\bar{N}$")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return table


def render_cuts(
    csv_path: str | Path,
    out_path: str | Path,
    g_values: list[float] | None = None,
    sigma_values: list[float] | None = None,
) -> SweepTable:
    """Line cuts with 2-stderr bands, at fixed g (versus sigma) or fixed sigma
    (versus g). Exactly one of the two lists must be given and non-empty."""
    if bool(g_values) == bool(sigma_values):
        raise TableError("pass a non-empty list for exactly one of g or sigma")
    table = load_sweep_table(csv_path)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    if g_values:
        x = table.sigma_grid
        ax.set_xlabel(r"disorder strength $\sigma$ (units of $J$)")
        series = [(f"$g = {g:g}J$", *table.cut_along_sigma(g)) for g in g_values]
    else:
        x = table.g_grid
        ax.set_xlabel(r"coupling $g$ (units of $J$)")
        series = [(rf"$\sigma = {s:g}J$", *table.cut_along_g(s)) for s in sigma_values]
    for label, mean, err in series:
        (line,) = ax.plot(x, mean, marker="o", label=label)
        ax.fill_between(x, mean - 2 * err, mean + 2 * err, alpha=0.25, color=line.get_color())
    ax.set_ylim(-0.02, 1.02)
    ax.set_ylabel(r"mean non-Markovianity $\bar{N}$")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return table
