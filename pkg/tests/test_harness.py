import logging

import pytest

from rumor_source.codec import REPORT_COLUMNS
from rumor_source.exactprob import ALL_SUSPECTS, CONNECTED_K, TWO_AT_D, pc_all_suspects, pc_connected
from rumor_source.exceptions import ArgumentError, ConfigError
from rumor_source.harness import (
    ExperimentConfig, ExperimentReport, exact_reference, figure_configs, figure_sweep, run_experiment, run_trial,
    wilson_interval
)
from rumor_source.spread import EXPONENTIAL_CLOCKS
from rumor_source.urn import FLOAT


def test_wilson_interval():
    low, high = wilson_interval(0, 10)
    assert low == 0
    assert 0.2 < high < 0.35
    low, high = wilson_interval(50, 100)
    assert low < 0.5 < high
    assert 0.5 - low == pytest.approx(high - 0.5)


@pytest.mark.parametrize('kwargs', [
    {'scenario': 'ring', 'delta': 3, 'n': 5},
    {'scenario': ALL_SUSPECTS, 'delta': 1, 'n': 5},
    {'scenario': ALL_SUSPECTS, 'delta': 3, 'n': 5, 'trials': 0},
    {'scenario': ALL_SUSPECTS, 'delta': 3, 'n': 5, 'seed': -2},
    {'scenario': ALL_SUSPECTS, 'delta': 3, 'n': 5, 'backend': 'gossip'},
    {'scenario': CONNECTED_K, 'delta': 3, 'n': 5},
    {'scenario': TWO_AT_D, 'delta': 3, 'n': 5, 'd': 0},
])
def test_config_validation(kwargs):
    with pytest.raises(ConfigError) as info:
        ExperimentConfig(**kwargs)
    assert info.value.code == 2


def test_single_trials():
    cfg = ExperimentConfig(ALL_SUSPECTS, 3, 1, trials=1)
    assert run_trial(cfg, 0) is True
    cfg = ExperimentConfig(TWO_AT_D, 3, 1, d=2, trials=1)
    assert run_trial(cfg, 0) is True


def test_report_is_reproducible():
    cfg = ExperimentConfig(CONNECTED_K, 3, 15, k=3, trials=60, seed=9)
    first = run_experiment(cfg)
    second = run_experiment(cfg)
    assert first.to_dict() == second.to_dict()
    assert first.ci_low <= first.empirical_pc <= first.ci_high
    assert tuple(first.to_row()) == REPORT_COLUMNS
    assert first.exact.value == pytest.approx(float(pc_connected(3, 3, 15).value))


def test_report_does_not_depend_on_workers():
    cfg = ExperimentConfig(TWO_AT_D, 3, 12, d=2, trials=40, seed=2)
    assert run_experiment(cfg, workers=3).successes == run_experiment(cfg).successes


def test_small_all_suspects_run():
    cfg = ExperimentConfig(ALL_SUSPECTS, 3, 20, trials=400, seed=1)
    report = run_experiment(cfg)
    assert report.empirical_pc == pytest.approx(float(pc_all_suspects(3, 20).value), abs=0.08)
    assert report.asymptotic_pc == pytest.approx(0.25)
    assert report.metadata['interval'] == 'wilson'


def test_exponential_clocks_backend_runs():
    cfg = ExperimentConfig(TWO_AT_D, 3, 10, d=1, trials=30, seed=3, backend=EXPONENTIAL_CLOCKS)
    report = run_experiment(cfg)
    assert report.config.backend == EXPONENTIAL_CLOCKS
    assert 0 <= report.successes <= 30


def test_exact_reference_over_budget(caplog):
    cfg = ExperimentConfig(TWO_AT_D, 3, 500, d=2, trials=1)
    with caplog.at_level(logging.WARNING, logger='rumor_source.harness'):
        assert exact_reference(cfg) is None
    assert 'no exact reference' in caplog.text
    assert exact_reference(cfg, max_n=500).value > 0.85


def test_exact_reference_for_adjacent_pair_at_large_n():
    cfg = ExperimentConfig(TWO_AT_D, 3, 500, d=1, trials=1)
    reference = exact_reference(cfg)
    assert reference is not None
    assert reference.value == pytest.approx(float(pc_connected(3, 2, 500, arithmetic=FLOAT).value), abs=1e-9)
    assert ExperimentReport(cfg, 1, 1.0, 0.0, 1.0, exact=reference).to_row()['exact_pc'] == reference.value


def test_figure_configs():
    plan, configs = figure_configs('fig9')
    assert len(configs) == 27
    assert {cfg.d for cfg in configs} == {1, 2, 3}
    plan, configs = figure_configs('fig10', {'values': (2, 5)}, n=40, trials=10)
    assert [cfg.k for cfg in configs] == [2, 5]
    assert all(cfg.delta == 3 and cfg.n == 40 for cfg in configs)
    with pytest.raises(ArgumentError):
        figure_configs('fig11')
    with pytest.raises(ArgumentError):
        figure_configs('fig7', {'colour': 'red'})


def test_small_figure_sweep():
    dataset = figure_sweep('fig7', {'values': (2, 3), 'n': 10, 'trials': 20, 'seed': 4})
    rows = dataset.rows()
    assert [row['delta'] for row in rows] == [2, 3]
    assert rows[0]['asymptotic_pc'] == 0
    assert dataset.metadata['trials'] == 20
    assert 'desk-scale' in dataset.metadata['scale']
    assert dataset.to_dict()['rows'][1]['exact']['method'] == 'closed-form'


@pytest.mark.slow
@pytest.mark.parametrize('delta', [3, 4, 6, 12])
def test_all_suspects_desk_scale(delta):
    report = run_experiment(ExperimentConfig(ALL_SUSPECTS, delta, 500, trials=2000, seed=17))
    assert report.empirical_pc == pytest.approx(report.exact.value, abs=0.03)
    assert report.ci_low <= report.exact.value <= report.ci_high


@pytest.mark.slow
@pytest.mark.parametrize('k', [2, 5, 10])
def test_connected_desk_scale(k):
    report = run_experiment(ExperimentConfig(CONNECTED_K, 4, 500, k=k, trials=2000, seed=17))
    assert report.empirical_pc == pytest.approx(report.exact.value, abs=0.03)
    assert report.empirical_pc >= 0.5


@pytest.mark.slow
@pytest.mark.parametrize('d,target', [(1, 0.75), (2, 0.886)])
def test_two_suspects_desk_scale(d, target):
    report = run_experiment(ExperimentConfig(TWO_AT_D, 3, 500, d=d, trials=2000, seed=17))
    assert report.empirical_pc == pytest.approx(target, abs=0.03)


@pytest.mark.slow
def test_interval_coverage():
    exact = float(pc_all_suspects(3, 15).value)
    covered = 0
    for seed in range(40):
        report = run_experiment(ExperimentConfig(ALL_SUSPECTS, 3, 15, trials=200, seed=seed))
        covered += report.ci_low <= exact <= report.ci_high
    assert covered >= 32
