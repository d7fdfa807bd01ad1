"""Disorder ensembles and the (sigma, g) sweep.

The measure is always computed per realization and averaged afterwards;
averaging amplitudes first washes out the revivals and is exactly the mistake
the per-realization pipeline avoids. Results are accumulated in realization
index order regardless of scheduling, so output is worker-count independent.
"""

from __future__ import annotations

import hashlib
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .dynamics import (
    HorizonCapError,
    amplitude_trajectory,
    choose_horizon,
    required_n_cavities,
    spectral_data,
    time_grid,
)
from .model import ChainSpec, DisorderSpec, sample_realization
from .nonmarkov import MeasureResult, geometric_measure

__all__ = [
    "EnsembleConfig",
    "EnsembleResult",
    "CellResult",
    "SweepResult",
    "RealizationError",
    "max_horizon",
    "cell_seed",
    "run_ensemble",
    "sweep",
]


def max_horizon(chain: ChainSpec) -> float:
    """Longest tracking time the chain supports without edge reflections."""
    return (chain.half_length - 20) / (2 * chain.j_hop)


@dataclass(frozen=True)
class EnsembleConfig:
    chain: ChainSpec
    disorder: DisorderSpec
    n_realizations: int
    horizon: float
    dt: float | None = None

    def __post_init__(self) -> None:
        if self.n_realizations < 1:
            raise ValueError(f"n_realizations must be >= 1, got {self.n_realizations}")
        if self.horizon <= 0:
            raise ValueError(f"horizon must be > 0, got {self.horizon}")
        needed = required_n_cavities(self.horizon, self.chain.j_hop)
        if self.chain.n_cavities < needed:
            raise ValueError(
                f"chain too short for horizon {self.horizon:g}: "
                f"need n_cavities >= {needed}, got {self.chain.n_cavities}"
            )


@dataclass(frozen=True)
class EnsembleResult:
    mean_n: float
    stderr: float
    n_realizations: int
    per_realization: tuple[MeasureResult, ...] = field(repr=False)


class RealizationError(RuntimeError):
    """A realization failed; carries the index and seed needed to replay it."""

    def __init__(self, index: int, master_seed: int, cause: BaseException):
        super().__init__(
            f"realization {index} (master_seed={master_seed}) failed: {cause}"
        )
        self.index = index
        self.master_seed = master_seed


def _measure_one(cfg: EnsembleConfig, index: int) -> MeasureResult:
    r = sample_realization(cfg.chain, cfg.disorder, index)
    data = spectral_data(cfg.chain, r)
    times = time_grid(cfg.chain, data, cfg.horizon, cfg.dt)
    traj = amplitude_trajectory(cfg.chain, r, times, data=data)
    return geometric_measure(traj)


def run_ensemble(cfg: EnsembleConfig, workers: int = 1) -> EnsembleResult:
    """Measure every realization of the ensemble and average the results."""

    def task(index: int) -> MeasureResult:
        try:
            return _measure_one(cfg, index)
        except Exception as exc:
            raise RealizationError(index, cfg.disorder.master_seed, exc) from exc

    indices = range(cfg.n_realizations)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(task, indices))
    else:
        results = [task(i) for i in indices]

    values = np.array([m.n_rescaled for m in results])
    mean = float(values.mean())
    if len(values) > 1:
        stderr = float(values.std(ddof=1) / math.sqrt(len(values)))
    else:
        stderr = 0.0
    return EnsembleResult(
        mean_n=mean,
        stderr=stderr,
        n_realizations=cfg.n_realizations,
        per_realization=tuple(results),
    )


def cell_seed(master_seed: int, sigma_index: int, g_index: int) -> int:
    """Stable 64-bit seed of one sweep cell; independent of execution order."""
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack("<QQQ", master_seed & (2**64 - 1), sigma_index, g_index))
    return int.from_bytes(h.digest(), "little")


@dataclass(frozen=True)
class CellResult:
    sigma_index: int
    g_index: int
    sigma: float
    g: float
    seed: int
    horizon: float
    horizon_capped: bool
    result: EnsembleResult


@dataclass(frozen=True)
class SweepResult:
    sigma_grid: tuple[float, ...]
    g_grid: tuple[float, ...]
    cells: tuple[CellResult, ...]  # sigma-major, then g

    def cell(self, sigma_index: int, g_index: int) -> CellResult:
        return self.cells[sigma_index * len(self.g_grid) + g_index]


def _cell_horizon(chain: ChainSpec, epsilon_rel: float) -> tuple[float, bool]:
    """Clean-chain horizon for this g, clamped to what the chain can host."""
    cap = max_horizon(chain)
    if cap <= 0:
        raise ValueError("chain too short to host any horizon")
    try:
        return choose_horizon(chain, epsilon_rel, hard_cap=cap).horizon, False
    except HorizonCapError:
        return cap, True


def sweep(
    chain_template: ChainSpec,
    sigma_grid: Sequence[float],
    g_grid: Sequence[float],
    n_realizations: int,
    master_seed: int,
    horizon: float | None = None,
    dt: float | None = None,
    epsilon_rel: float = 1e-3,
    workers: int = 1,
    on_cell: Callable[[CellResult], None] | None = None,
) -> SweepResult:
    """One ensemble per (sigma, g) cell, each independently reproducible.

    The horizon is recomputed per g from the clean-chain rule (and clamped to
    the chain's light cone when the rule asks for more); pass ``horizon`` to
    pin it explicitly. ``on_cell`` fires after each completed cell, in order.
    """
    sigma_grid = tuple(float(s) for s in sigma_grid)
    g_grid = tuple(float(g) for g in g_grid)
    if not sigma_grid or not g_grid:
        raise ValueError("sigma_grid and g_grid must be non-empty")
    if any(np.diff(sigma_grid) < 0) or any(np.diff(g_grid) < 0):
        raise ValueError("grids must be ascending")

    cells: list[CellResult] = []
    horizons: dict[int, tuple[float, bool]] = {}
    for si, sigma in enumerate(sigma_grid):
        for gi, g in enumerate(g_grid):
            try:
                chain = ChainSpec(
                    n_cavities=chain_template.n_cavities,
                    j_hop=chain_template.j_hop,
                    g=g,
                    omega0=chain_template.omega0,
                    omega_a=chain_template.omega_a,
                )
                if horizon is not None:
                    cell_h, capped = horizon, False
                else:
                    if gi not in horizons:
                        horizons[gi] = _cell_horizon(chain, epsilon_rel)
                    cell_h, capped = horizons[gi]
                seed = cell_seed(master_seed, si, gi)
                cfg = EnsembleConfig(
                    chain=chain,
                    disorder=DisorderSpec(sigma=sigma, master_seed=seed),
                    n_realizations=n_realizations,
                    horizon=cell_h,
                    dt=dt,
                )
                result = run_ensemble(cfg, workers=workers)
            except Exception as exc:
                raise RuntimeError(
                    f"sweep cell (sigma_index={si}, g_index={gi}, "
                    f"sigma={sigma:g}, g={g:g}) failed: {exc}"
                ) from exc
            cell = CellResult(
                sigma_index=si,
                g_index=gi,
                sigma=sigma,
                g=g,
                seed=seed,
                horizon=cell_h,
                horizon_capped=capped,
                result=result,
            )
            cells.append(cell)
            if on_cell is not None:
                on_cell(cell)
    return SweepResult(sigma_grid=sigma_grid, g_grid=g_grid, cells=tuple(cells))
