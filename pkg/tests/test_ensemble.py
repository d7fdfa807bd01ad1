import numpy as np
import pytest

from qedlat import (
    ChainSpec,
    DisorderSpec,
    EnsembleConfig,
    cell_seed,
    max_horizon,
    run_ensemble,
    sweep,
)


def small_cfg(sigma=0.5, g=0.5, m=6, seed=11, n=121, horizon=20.0):
    return EnsembleConfig(
        chain=ChainSpec(n_cavities=n, g=g),
        disorder=DisorderSpec(sigma=sigma, master_seed=seed),
        n_realizations=m,
        horizon=horizon,
    )


class TestEnsembleConfig:
    def test_light_cone_validation(self):
        with pytest.raises(ValueError):
            small_cfg(horizon=200.0)  # 121 cavities cannot host T = 200
        assert max_horizon(ChainSpec(n_cavities=601)) == pytest.approx(140.0)

    def test_rejects_empty_ensemble(self):
        with pytest.raises(ValueError):
            small_cfg(m=0)


class TestRunEnsemble:
    def test_clean_ensemble_is_degenerate(self):
        res = run_ensemble(small_cfg(sigma=0.0, m=8))
        values = [m.n_rescaled for m in res.per_realization]
        assert len(set(values)) == 1
        assert res.stderr == 0.0
        assert res.mean_n == values[0]

    def test_weak_coupling_is_markovian(self):
        res = run_ensemble(small_cfg(sigma=0.0, g=0.05, m=1, n=241, horizon=50.0))
        assert res.mean_n < 0.05

    def test_strong_coupling_saturates(self):
        res = run_ensemble(small_cfg(sigma=0.0, g=2.0, m=1, n=601, horizon=140.0))
        assert res.mean_n > 0.9

    def test_worker_count_does_not_change_results(self):
        cfg = small_cfg(m=8)
        serial = run_ensemble(cfg, workers=1)
        threaded = run_ensemble(cfg, workers=8)
        assert serial == threaded

    def test_summary_invariants(self):
        res = run_ensemble(small_cfg(m=16))
        values = np.array([m.n_rescaled for m in res.per_realization])
        assert res.mean_n == pytest.approx(values.mean())
        assert 0.0 <= res.mean_n <= 1.0
        assert res.stderr <= 0.5 / np.sqrt(len(values))


class TestSeeds:
    def test_cell_seed_is_stable_and_distinct(self):
        s = cell_seed(42, 0, 0)
        assert s == cell_seed(42, 0, 0)
        others = {cell_seed(42, i, j) for i in range(4) for j in range(4)}
        assert len(others) == 16
        assert cell_seed(43, 0, 0) != s


class TestSweep:
    def test_degenerate_grid_reduces_to_run_ensemble(self):
        result = sweep(
            chain_template=ChainSpec(n_cavities=121),
            sigma_grid=[0.5],
            g_grid=[0.5],
            n_realizations=6,
            master_seed=11,
            horizon=20.0,
        )
        cell = result.cell(0, 0)
        direct = run_ensemble(small_cfg(seed=cell_seed(11, 0, 0)))
        assert cell.result == direct

    def test_cells_and_ordering(self):
        calls = []
        result = sweep(
            chain_template=ChainSpec(n_cavities=121),
            sigma_grid=[0.0, 1.0],
            g_grid=[0.3, 0.8],
            n_realizations=3,
            master_seed=5,
            horizon=15.0,
            on_cell=lambda c: calls.append((c.sigma_index, c.g_index)),
        )
        assert calls == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert len(result.cells) == 4
        assert result.cell(1, 0).sigma == 1.0
        seeds = {c.seed for c in result.cells}
        assert len(seeds) == 4  # independently seeded cells

    def test_per_g_horizon_from_clean_chain_rule(self):
        result = sweep(
            chain_template=ChainSpec(n_cavities=241),
            sigma_grid=[0.0],
            g_grid=[0.1, 5.0],
            n_realizations=1,
            master_seed=1,
        )
        weak, strong = result.cells
        # the weak-coupling rule wants far more time than 241 cavities host
        assert weak.horizon_capped is True
        assert weak.horizon == pytest.approx(max_horizon(ChainSpec(n_cavities=241)))
        assert strong.horizon_capped is False
        assert strong.horizon <= 50.0

    def test_failure_carries_cell_coordinates(self):
        with pytest.raises(RuntimeError, match=r"sigma_index=0, g_index=0"):
            sweep(
                chain_template=ChainSpec(n_cavities=121),
                sigma_grid=[0.0],
                g_grid=[-0.2, 0.1],  # negative coupling fails inside the cell
                n_realizations=1,
                master_seed=1,
                horizon=20.0,
            )

    def test_rejects_bad_grids(self):
        with pytest.raises(ValueError):
            sweep(ChainSpec(n_cavities=121), [], [0.1], 1, 0, horizon=10.0)
        with pytest.raises(ValueError):
            sweep(ChainSpec(n_cavities=121), [1.0, 0.5], [0.1], 1, 0, horizon=10.0)
