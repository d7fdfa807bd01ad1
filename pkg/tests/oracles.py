"""Independent cross-checks used by the tests.

These deliberately avoid the spectral code paths they validate: a fixed-step
RK4 integrator for the Schroedinger equation, the lattice Green's-function
root for bound-state energies, and the horizon rule applied to an analytic
exponential decay.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq


def rk4_alpha(h: np.ndarray, t_samples: np.ndarray, step: float = 1e-3) -> np.ndarray:
    """Integrate i dpsi/dt = H psi from |e, vac> and return psi[0] at t_samples.

    Sample times must be (near-)multiples of the step.
    """
    h = np.asarray(h, dtype=float)
    psi = np.zeros(h.shape[0], dtype=complex)
    psi[0] = 1.0
    out = np.empty(len(t_samples), dtype=complex)
    next_idx = 0
    t = 0.0
    max_t = float(t_samples[-1])
    while next_idx < len(t_samples):
        if t >= t_samples[next_idx] - step / 2:
            out[next_idx] = psi[0]
            next_idx += 1
            if next_idx == len(t_samples):
                break
        k1 = -1j * (h @ psi)
        k2 = -1j * (h @ (psi + 0.5 * step * k1))
        k3 = -1j * (h @ (psi + 0.5 * step * k2))
        k4 = -1j * (h @ (psi + step * k3))
        psi = psi + (step / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        t += step
        if t > max_t + step:
            raise RuntimeError("integration overran the sample grid")
    return out


def greens_bound_energy(g: float, j_hop: float = 1.0) -> float:
    """Positive bound-state energy of the infinite clean chain (band-center atom).

    Root of E = g^2 / sqrt(E^2 - 4 J^2) above the band edge.
    """
    f = lambda e: e * np.sqrt(e * e - 4 * j_hop * j_hop) - g * g
    return brentq(f, 2 * j_hop * (1 + 1e-15), 2 * j_hop + 10 * (g + g * g / j_hop))


def horizon_on_exponential(gamma: float, epsilon: float) -> float:
    """Horizon rule applied to the analytic decay |alpha(t)|^2 = exp(-gamma t).

    Smallest T with mean over [T/2, T] of exp(-gamma t) below epsilon
    (zero bound-state residual).
    """
    avg = lambda t: (np.exp(-gamma * t / 2) - np.exp(-gamma * t)) / (gamma * t / 2)
    hi = 1.0
    while avg(hi) >= epsilon:
        hi *= 2
    return brentq(lambda t: avg(t) - epsilon, hi / 2, hi)
