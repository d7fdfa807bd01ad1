import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qedlat import (
    ChainSpec,
    DisorderSpec,
    Trajectory,
    amplitude_trajectory,
    apply_channel,
    geometric_measure,
    revival_detector,
    sample_realization,
    spectral_data,
    time_grid,
    validate_density_matrix,
)


def make_traj(values, times=None):
    values = np.asarray(values, dtype=float)
    if times is None:
        times = np.arange(len(values), dtype=float)
    return Trajectory(times=np.asarray(times, dtype=float),
                      alpha=values.astype(complex),
                      abs_alpha=values)


abs_alpha_lists = st.lists(
    st.floats(0.0, 1.0).map(lambda x: round(x, 6)), min_size=2, max_size=60
)


class TestGeometricMeasure:
    def test_monotone_decay_scores_zero(self):
        traj = make_traj(np.linspace(1.0, 0.1, 50))
        m = geometric_measure(traj)
        assert m.n_v == 0.0
        assert m.n_rescaled == 0.0

    def test_rabi_over_half_periods_scores_one(self):
        g = 0.25
        times = np.linspace(0, 8 * np.pi / g, 4001)  # integer half-periods
        traj = make_traj(np.abs(np.cos(g * times)), times)
        m = geometric_measure(traj)
        assert m.n_rescaled == pytest.approx(1.0, abs=1e-9)

    def test_flat_trajectory_uses_zero_denominator_convention(self):
        m = geometric_measure(make_traj(np.ones(10)))
        assert m.n_v == 0.0
        assert m.n_rescaled == 0.0
        assert m.decay_sum == 0.0

    def test_rejects_degenerate_input(self):
        with pytest.raises(ValueError):
            geometric_measure(make_traj([1.0]))
        with pytest.raises(ValueError):
            geometric_measure(make_traj([1.0, 0.5, 0.4], times=[0.0, 2.0, 1.0]))

    @given(values=abs_alpha_lists)
    def test_telescoping_identity(self, values):
        m = geometric_measure(make_traj(values))
        f = np.asarray(values) ** 4
        assert m.growth_sum - m.decay_sum == pytest.approx(f[-1] - f[0], abs=1e-10)
        assert m.n_v == m.growth_sum
        assert m.growth_sum >= 0 and m.decay_sum >= 0

    @given(values=abs_alpha_lists)
    def test_rescaled_measure_range(self, values):
        values = [1.0] + list(values)  # start from full excitation
        m = geometric_measure(make_traj(values))
        assert 0.0 <= m.n_rescaled <= 1.0 + 1e-9

    @given(values=abs_alpha_lists, phase=st.floats(0.0, 2 * np.pi), shift=st.floats(0.0, 50.0))
    def test_invariance_under_phase_and_time_shift(self, values, phase, shift):
        base = make_traj(values)
        m0 = geometric_measure(base)
        rotated = Trajectory(
            times=base.times + shift,
            alpha=base.alpha * np.exp(1j * phase),
            abs_alpha=base.abs_alpha,
        )
        m1 = geometric_measure(rotated)
        assert m1.n_rescaled == pytest.approx(m0.n_rescaled, abs=1e-12)
        assert m1.n_v == pytest.approx(m0.n_v, abs=1e-12)

    def test_grid_refinement_stability(self):
        chain = ChainSpec(n_cavities=601, g=0.1)
        r = sample_realization(chain, DisorderSpec(sigma=1.0, master_seed=7), 3)
        data = spectral_data(chain, r)
        coarse = time_grid(chain, data, 140.0)
        fine = np.linspace(0.0, 140.0, 2 * (len(coarse) - 1) + 1)
        n_coarse = geometric_measure(amplitude_trajectory(chain, r, coarse, data=data)).n_rescaled
        n_fine = geometric_measure(amplitude_trajectory(chain, r, fine, data=data)).n_rescaled
        assert abs(n_coarse - n_fine) <= 0.01


class TestRevivalDetector:
    def test_monotone_decay(self):
        assert revival_detector(make_traj(np.linspace(1, 0, 30))) is False

    def test_rabi(self):
        times = np.linspace(0, 20, 400)
        assert revival_detector(make_traj(np.abs(np.cos(times)), times)) is True

    @given(values=abs_alpha_lists)
    def test_agrees_with_measure_positivity(self, values):
        traj = make_traj(values)
        assert revival_detector(traj) == (geometric_measure(traj).n_v > 0)

    def test_agreement_on_random_piecewise_trajectories(self):
        rng = np.random.default_rng(20260823)
        for _ in range(1000):
            n = rng.integers(2, 40)
            values = rng.uniform(0, 1, size=n)
            traj = make_traj(values)
            assert revival_detector(traj) == (geometric_measure(traj).n_v > 0)


def random_density_matrix(rng):
    # mixture of two random pure states
    def pure():
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        return np.outer(v, v.conj())

    p = rng.uniform()
    return p * pure() + (1 - p) * pure()


class TestChannel:
    def test_identity_at_alpha_one(self):
        rho = np.array([[0.3, 0.1 + 0.2j], [0.1 - 0.2j, 0.7]])
        assert np.allclose(apply_channel(1.0, rho), rho, atol=1e-15)

    def test_full_decay_reaches_ground_state(self):
        rho = random_density_matrix(np.random.default_rng(1))
        out = apply_channel(0.0, rho)
        assert np.allclose(out, np.diag([0.0, 1.0]), atol=1e-12)

    def test_population_bookkeeping(self):
        rho = np.diag([1.0, 0.0]).astype(complex)
        out = apply_channel(np.sqrt(0.5), rho)
        assert np.allclose(out, np.diag([0.5, 0.5]), atol=1e-12)

    def test_rejects_unphysical_amplitude(self):
        with pytest.raises(ValueError):
            apply_channel(1.0 + 1e-6, np.eye(2) / 2)

    def test_rejects_invalid_density_matrix(self):
        with pytest.raises(ValueError):
            apply_channel(0.5, np.eye(2))  # trace 2
        with pytest.raises(ValueError):
            apply_channel(0.5, np.array([[1.2, 0], [0, -0.2]]))

    def test_cptp_on_random_inputs(self):
        rng = np.random.default_rng(99)
        for _ in range(2000):
            a = rng.uniform() * np.exp(2j * np.pi * rng.uniform())
            out = apply_channel(a, random_density_matrix(rng))
            assert abs(np.trace(out) - 1.0) < 1e-12
            assert np.allclose(out, out.conj().T, atol=1e-12)
            assert np.linalg.eigvalsh(out).min() >= -1e-12


def test_validate_density_matrix_passes_valid_input():
    rho = random_density_matrix(np.random.default_rng(4))
    assert np.allclose(validate_density_matrix(rho), rho)
