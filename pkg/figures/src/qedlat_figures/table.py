"""Loading and validation of the long-format sweep table."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["SweepTable", "TableError", "load_sweep_table"]

REQUIRED_COLUMNS = ("sigma", "g", "mean_n", "stderr")


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class SweepTable:
    """Complete rectangular grid of ensemble means and standard errors."""

    sigma_grid: np.ndarray  # ascending
    g_grid: np.ndarray  # ascending
    mean_n: np.ndarray  # shape (len(sigma_grid), len(g_grid))
    stderr: np.ndarray  # same shape

    def cut_along_sigma(self, g: float) -> tuple[np.ndarray, np.ndarray]:
        """mean and stderr versus sigma at fixed g."""
        gi = _grid_index(self.g_grid, g, "g")
        return self.mean_n[:, gi], self.stderr[:, gi]

    def cut_along_g(self, sigma: float) -> tuple[np.ndarray, np.ndarray]:
        """mean and stderr versus g at fixed sigma."""
        si = _grid_index(self.sigma_grid, sigma, "sigma")
        return self.mean_n[si, :], self.stderr[si, :]


def _grid_index(grid: np.ndarray, value: float, name: str) -> int:
    hits = np.flatnonzero(np.isclose(grid, value, rtol=1e-9, atol=1e-12))
    if len(hits) != 1:
        available = ", ".join(f"{v:g}" for v in grid)
        raise TableError(f"{name} = {value:g} is not on the grid ({available})")
    return int(hits[0])


def load_sweep_table(path: str | Path) -> SweepTable:
    """Parse a sweep CSV and check it forms a complete grid."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise TableError(f"{path}: missing columns {missing}")
        for lineno, row in enumerate(reader, start=2):
            try:
                rows.append(tuple(float(row[c]) for c in REQUIRED_COLUMNS))
            except (TypeError, ValueError) as exc:
                raise TableError(f"{path}:{lineno}: bad row: {exc}") from exc
    if not rows:
        raise TableError(f"{path}: no data rows")

    sigma_grid = np.unique([r[0] for r in rows])
    g_grid = np.unique([r[1] for r in rows])
    mean = np.full((len(sigma_grid), len(g_grid)), np.nan)
    err = np.full_like(mean, np.nan)
    for sigma, g, m, e in rows:
        si = int(np.searchsorted(sigma_grid, sigma))
        gi = int(np.searchsorted(g_grid, g))
        if not np.isnan(mean[si, gi]):
            raise TableError(f"{path}: duplicate cell (sigma={sigma:g}, g={g:g})")
        mean[si, gi] = m
        err[si, gi] = e

    holes = np.argwhere(np.isnan(mean))
    if len(holes):
        listing = ", ".join(
            f"(sigma={sigma_grid[si]:g}, g={g_grid[gi]:g})" for si, gi in holes
        )
        raise TableError(f"{path}: incomplete grid, missing cells: {listing}")
    if mean.min() < 0 or mean.max() > 1:
        raise TableError(f"{path}: mean_n outside [0, 1]")
    return SweepTable(sigma_grid=sigma_grid, g_grid=g_grid, mean_n=mean, stderr=err)
