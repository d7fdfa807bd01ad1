"""Single-excitation model of an atom coupled to a disordered cavity chain.

The chain has nearest-neighbour photon hopping ``j_hop`` and open boundaries;
the atom couples with strength ``g`` to the central cavity. Static disorder is
a Gaussian detuning on each cavity, sampled from a counter-based stream so that
every realization is reproducible from ``(master_seed, index)`` alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ChainSpec",
    "DisorderSpec",
    "Realization",
    "BandInfo",
    "sample_realization",
    "build_hamiltonian",
    "band_info",
    "dispersion",
]


@dataclass(frozen=True)
class ChainSpec:
    """Static model parameters.

    ``n_cavities`` must be odd so a central site exists (sites run from
    ``-half_length`` to ``+half_length``). A single-cavity chain (``n_cavities
    = 1``) is allowed and gives pure vacuum Rabi dynamics.
    """

    n_cavities: int
    j_hop: float = 1.0
    g: float = 0.0
    omega0: float = 0.0
    omega_a: float = 0.0

    def __post_init__(self) -> None:
        if self.n_cavities < 1 or self.n_cavities % 2 == 0:
            raise ValueError(f"n_cavities must be a positive odd integer, got {self.n_cavities}")
        if self.j_hop <= 0:
            raise ValueError(f"j_hop must be > 0, got {self.j_hop}")
        if self.g < 0:
            raise ValueError(f"g must be >= 0, got {self.g}")

    @property
    def half_length(self) -> int:
        return (self.n_cavities - 1) // 2

    @property
    def detuning(self) -> float:
        """Atom frequency relative to the band center."""
        return self.omega_a - self.omega0


@dataclass(frozen=True)
class DisorderSpec:
    """Gaussian disorder strength and the master seed of the ensemble."""

    sigma: float = 0.0
    master_seed: int = 0

    def __post_init__(self) -> None:
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class Realization:
    """One sampled detuning pattern, fully determined by (master_seed, index)."""

    index: int
    deltas: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "deltas", np.asarray(self.deltas, dtype=float))
        if self.index < 0:
            raise ValueError(f"index must be >= 0, got {self.index}")
        if self.deltas.ndim != 1:
            raise ValueError("deltas must be a 1-d array")


@dataclass(frozen=True)
class BandInfo:
    lower_edge: float
    upper_edge: float
    width: float
    center: float


def sample_realization(chain: ChainSpec, dis: DisorderSpec, index: int) -> Realization:
    """Draw the detuning vector of realization ``index``.

    Each realization gets its own counter-based Philox stream keyed by
    ``(master_seed, index)``, so sampling order is irrelevant and any
    realization can be regenerated in isolation.
    """
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index}")
    key = np.array([dis.master_seed, index], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    deltas = rng.normal(0.0, dis.sigma, size=chain.n_cavities)
    return Realization(index=index, deltas=deltas)


def build_hamiltonian(chain: ChainSpec, r: Realization) -> np.ndarray:
    """Single-excitation Hamiltonian matrix, dimension ``n_cavities + 1``.

    Basis: row 0 is the excited atom with the field in vacuum; rows
    ``1..n_cavities`` are single-photon states on sites ``-N..N`` in ascending
    order. Open boundaries, no wrap-around hopping.
    """
    n = chain.n_cavities
    if len(r.deltas) != n:
        raise ValueError(f"realization has {len(r.deltas)} deltas, chain expects {n}")
    dim = n + 1
    h = np.zeros((dim, dim))
    h[0, 0] = chain.omega_a
    cav = np.arange(1, dim)
    h[cav, cav] = chain.omega0 + r.deltas
    h[cav[:-1], cav[:-1] + 1] = -chain.j_hop
    h[cav[:-1] + 1, cav[:-1]] = -chain.j_hop
    c0 = 1 + chain.half_length  # row of site n = 0
    h[0, c0] = chain.g
    h[c0, 0] = chain.g
    return h


def band_info(chain: ChainSpec) -> BandInfo:
    """Edges and width of the photonic band of the clean chain."""
    return BandInfo(
        lower_edge=chain.omega0 - 2 * chain.j_hop,
        upper_edge=chain.omega0 + 2 * chain.j_hop,
        width=4 * chain.j_hop,
        center=chain.omega0,
    )


def dispersion(chain: ChainSpec, k: float) -> tuple[float, float]:
    """Frequency and group velocity of the clean-chain mode at wavenumber k."""
    if not -math.pi <= k <= math.pi:
        raise ValueError(f"k must lie in [-pi, pi], got {k}")
    frequency = chain.omega0 - 2 * chain.j_hop * math.cos(k)
    group_velocity = 2 * chain.j_hop * math.sin(k)
    return frequency, group_velocity
