"""Emitter-in-disordered-lattice simulator: exact single-excitation dynamics
of a two-level atom coupled to a coupled-cavity array, and the geometric
non-Markovianity of the resulting amplitude-damping channel."""

__version__ = "0.1.0"

from .model import (
    BandInfo,
    ChainSpec,
    DisorderSpec,
    Realization,
    band_info,
    build_hamiltonian,
    dispersion,
    sample_realization,
)
from .dynamics import (
    BoundStateReport,
    HorizonCapError,
    HorizonResult,
    SpectralData,
    Trajectory,
    amplitude_trajectory,
    bound_states,
    choose_horizon,
    diagonalize,
    full_state,
    spectral_data,
    time_grid,
)
from .nonmarkov import (
    MeasureResult,
    apply_channel,
    geometric_measure,
    revival_detector,
    validate_density_matrix,
)
from .ensemble import (
    CellResult,
    EnsembleConfig,
    EnsembleResult,
    RealizationError,
    SweepResult,
    cell_seed,
    max_horizon,
    run_ensemble,
    sweep,
)
