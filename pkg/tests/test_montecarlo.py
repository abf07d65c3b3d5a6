import math

import numpy as np
import pytest

from bandwagon.montecarlo import (
    CellSummary,
    ExperimentConfig,
    TrialResult,
    chernoff_trials,
    hoeffding_epsilon,
    run_cell,
    run_sweep,
    run_trial,
    sample_initial,
    summarize,
    trial_stream,
)
from bandwagon.trajectory import OutcomeKind


@pytest.mark.parametrize(
    "eps,delta,expected",
    [
        (0.01, 0.01, 26492),  # ceil(ln(200) / 0.0002)
        (0.5, 0.5, 3),  # ceil(ln(4) / 0.5) = ceil(2.77...)
        (0.1, 0.01, 265),  # ceil(ln(200) / 0.02)
    ],
)
def test_chernoff_examples(eps, delta, expected):
    assert chernoff_trials(eps, delta) == expected


def test_chernoff_is_minimal():
    for eps in (0.3, 0.1, 0.05, 0.02, 0.01):
        for delta in (0.2, 0.05, 0.01, 0.001):
            n = chernoff_trials(eps, delta)
            bound = math.log(2 / delta) / (2 * eps**2)
            assert n >= bound and n - 1 < bound


def test_chernoff_covers_thirty_thousand():
    assert chernoff_trials(0.01, 0.01) <= 30000


@pytest.mark.parametrize("eps,delta", [(0, 0.1), (1, 0.1), (0.1, 0), (0.1, 1), (-0.1, 0.5)])
def test_chernoff_rejects_out_of_range(eps, delta):
    with pytest.raises(ValueError):
        chernoff_trials(eps, delta)


def test_hoeffding_epsilon_inverts_trials():
    assert hoeffding_epsilon(chernoff_trials(0.01, 0.01), 0.01) <= 0.01
    assert hoeffding_epsilon(3000, 0.01) == pytest.approx(0.0297, abs=1e-4)


# -- sampling ----------------------------------------------------------------


def test_sample_initial_moments():
    stream = trial_stream(1, 1000, 1000, 0)
    Y = sample_initial(1000, 1000, 10.0, stream)
    n = Y.size
    assert abs(Y.mean()) <= 4 * 10.0 / math.sqrt(n)
    assert abs(Y.std(ddof=1) / 10.0 - 1) <= 0.01


def test_sample_initial_uniform_moments():
    Y = sample_initial(1000, 1000, 2.0, trial_stream(2, 1000, 1000, 0), distribution="uniform")
    assert abs(Y.mean()) <= 4 * 2.0 / 1000
    assert abs(Y.std(ddof=1) / 2.0 - 1) <= 0.01
    assert np.abs(Y).max() <= 2.0 * math.sqrt(3)


def test_sample_initial_deterministic():
    a = sample_initial(9, 4, 10.0, trial_stream(42, 9, 4, 17))
    b = sample_initial(9, 4, 10.0, trial_stream(42, 9, 4, 17))
    np.testing.assert_array_equal(a, b)
    c = sample_initial(9, 4, 10.0, trial_stream(42, 9, 4, 18))
    assert not np.array_equal(a, c)


def test_streams_differ_across_cells():
    a = trial_stream(42, 9, 4, 0).standard_normal(5)
    b = trial_stream(42, 9, 5, 0).standard_normal(5)
    c = trial_stream(43, 9, 4, 0).standard_normal(5)
    assert not np.array_equal(a, b) and not np.array_equal(a, c)


def test_sample_initial_has_no_zero_lines():
    for k in range(50):
        Y = sample_initial(3, 2, 1.0, trial_stream(0, 3, 2, k))
        assert np.all(np.any(Y != 0, axis=0)) and np.all(np.any(Y != 0, axis=1))


# -- config / summaries ----------------------------------------------------


@pytest.mark.parametrize(
    "kwargs",
    [{"trials": 0}, {"opinion_std": 0.0}, {"seed": -1}, {"seed": 2**64}, {"agent_counts": (0,)},
     {"distribution": "cauchy"}],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        ExperimentConfig(**kwargs)


def test_config_defaults_follow_experiment():
    cfg = ExperimentConfig()
    assert tuple(cfg.agent_counts) == (9, 20, 100)
    assert tuple(cfg.topic_counts) == tuple(range(1, 11))
    assert cfg.trials == 30000 and cfg.opinion_std == 10.0


def test_cell_summary_accounting():
    results = [
        TrialResult(OutcomeKind.BALANCED, 2),
        TrialResult(OutcomeKind.VANISHED, 40),
        TrialResult(OutcomeKind.BALANCED, 5),
        TrialResult(OutcomeKind.BUDGET_EXCEEDED, None),
    ]
    cell = summarize(9, 3, results)
    assert (cell.trials_run, cell.balanced_count, cell.vanished_count, cell.budget_exceeded_count) == (4, 2, 1, 1)
    assert cell.mean_hitting_time == 3.5
    assert cell.estimated_probability == 0.5


def test_empty_cell_statistics_are_nan():
    cell = CellSummary(5, 2)
    assert math.isnan(cell.mean_hitting_time) and math.isnan(cell.estimated_probability)


# -- sweeps ------------------------------------------------------------------


def test_single_topic_cells():
    cfg = ExperimentConfig(agent_counts=(3, 9, 20), topic_counts=(1,), trials=200, seed=5)
    for cell in run_sweep(cfg):
        assert cell.balanced_count == cell.trials_run == 200
        assert cell.mean_hitting_time == 1.0
        assert cell.estimated_probability == 1.0


def test_outcome_partition():
    cfg = ExperimentConfig(agent_counts=(3, 9), topic_counts=(1, 2, 5), trials=150, seed=6)
    for cell in run_sweep(cfg):
        assert cell.balanced_count + cell.vanished_count + cell.budget_exceeded_count == cell.trials_run
        assert 0.0 <= cell.estimated_probability <= 1.0


def test_sweep_is_reproducible_across_worker_counts():
    cfg = ExperimentConfig(agent_counts=(5, 9), topic_counts=(2, 3), trials=120, seed=7)
    serial = run_sweep(cfg, workers=1)
    again = run_sweep(cfg, workers=1)
    parallel = run_sweep(cfg, workers=3)
    assert [c.as_row() for c in serial] == [c.as_row() for c in again] == [c.as_row() for c in parallel]


def test_block_size_does_not_matter():
    cfg = ExperimentConfig(trials=97, seed=8)
    a = run_cell(cfg, 9, 2, block_size=10)
    b = run_cell(cfg, 9, 2, block_size=250)
    assert a.as_row() == b.as_row()


def test_prefix_consistency():
    cfg_long = ExperimentConfig(trials=200, seed=9)
    cfg_short = ExperimentConfig(trials=80, seed=9)
    per_trial = [run_trial(cfg_long, 9, 2, k) for k in range(200)]
    short = run_cell(cfg_short, 9, 2)
    assert short.as_row() == summarize(9, 2, per_trial[:80]).as_row()
    assert run_cell(cfg_long, 9, 2).as_row() == summarize(9, 2, per_trial).as_row()


def test_budget_exceeded_trials_are_counted():
    cfg = ExperimentConfig(trials=60, seed=10, budget=1)
    cell = run_cell(cfg, 9, 3)
    assert cell.trials_run == 60
    assert cell.budget_exceeded_count > 0
