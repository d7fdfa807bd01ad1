"""Geometric non-Markovianity of the amplitude-damping channel.

The accessible-state volume of the qubit shrinks or grows with |alpha(t)|^4;
the measure is the total accumulated growth, optionally rescaled by the total
decay so it lives in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import Trajectory

__all__ = [
    "MeasureResult",
    "geometric_measure",
    "revival_detector",
    "apply_channel",
    "validate_density_matrix",
]

FLAT_TOL = 1e-12  # increments of |alpha|^4 below this are floating-point noise


@dataclass(frozen=True)
class MeasureResult:
    n_v: float
    n_rescaled: float
    growth_sum: float
    decay_sum: float


def _volume_increments(traj: Trajectory) -> np.ndarray:
    if len(traj.times) < 2:
        raise ValueError("trajectory needs at least 2 samples")
    if np.any(np.diff(traj.times) <= 0):
        raise ValueError("trajectory times must be strictly ascending")
    f = np.asarray(traj.abs_alpha, dtype=float) ** 4
    df = np.diff(f)
    df[np.abs(df) <= FLAT_TOL] = 0.0
    return df


def geometric_measure(traj: Trajectory) -> MeasureResult:
    """Growth and decay of the state-space volume along a trajectory.

    Between consecutive samples the integral of d|alpha|^4/dt telescopes
    exactly, so the sums carry only segmentation error, controlled by the
    sampling step.
    """
    df = _volume_increments(traj)
    growth_sum = float(np.sum(df[df > 0]))
    decay_sum = float(-np.sum(df[df < 0]))
    if decay_sum > FLAT_TOL:
        n_rescaled = growth_sum / decay_sum
    else:
        n_rescaled = 0.0  # nothing ever decayed: no dynamics to classify
    return MeasureResult(
        n_v=growth_sum,
        n_rescaled=n_rescaled,
        growth_sum=growth_sum,
        decay_sum=decay_sum,
    )


def revival_detector(traj: Trajectory) -> bool:
    """True iff |alpha| grows somewhere, on the same threshold as the measure."""
    return bool(np.any(_volume_increments(traj) > 0))


def validate_density_matrix(rho: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Check a 2x2 density matrix (trace one, Hermitian, positive)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if abs(np.trace(rho) - 1.0) > atol:
        raise ValueError(f"trace must be 1, got {np.trace(rho)}")
    if not np.allclose(rho, rho.conj().T, atol=atol):
        raise ValueError("density matrix must be Hermitian")
    if np.linalg.eigvalsh(rho).min() < -atol:
        raise ValueError("density matrix must be positive semidefinite")
    return rho


def apply_channel(alpha: complex, rho0: np.ndarray) -> np.ndarray:
    """Amplitude-damping map of the emission process at amplitude ``alpha``.

    Excited population is scaled by |alpha|^2, coherences by alpha, and the
    lost population lands in the ground state.
    """
    a = complex(alpha)
    if abs(a) > 1 + 1e-9:
        raise ValueError(f"|alpha| = {abs(a)} exceeds 1 beyond tolerance")
    if abs(a) > 1:  # rounding overshoot; renormalise so positivity survives
        a /= abs(a)
    rho0 = validate_density_matrix(rho0)
    p = abs(a) ** 2
    rho = np.empty((2, 2), dtype=complex)
    rho[0, 0] = p * rho0[0, 0]
    rho[0, 1] = a * rho0[0, 1]
    rho[1, 0] = np.conj(a) * rho0[1, 0]
    rho[1, 1] = (1 - p) * rho0[0, 0] + rho0[1, 1]
    return rho
