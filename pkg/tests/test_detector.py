from fractions import Fraction

import pytest

from rumor_source import SourceDetector, create_app
from rumor_source.app import DEFAULT_CONFIG
from rumor_source.exactprob import ALL_SUSPECTS, CONNECTED_K, GENERAL_K_BOUND, TWO_AT_D
from rumor_source.exceptions import ArgumentError, BudgetError, ConfigError
from rumor_source.topology import SuspectSet


def test_extension_is_registered(app):
    detector = app.extensions['rumor_source']
    assert isinstance(detector, SourceDetector)
    assert detector.flask_app is app
    assert detector.default_n == 30
    assert detector.exact_limit == DEFAULT_CONFIG['RUMOR_EXACT_LIMIT']


def test_settings_file(tmp_path, monkeypatch):
    settings = tmp_path / 'settings.py'
    settings.write_text('RUMOR_WORKERS = 2\nRUMOR_CHAIN_MAX_D = 2\n')
    monkeypatch.setenv('RUMOR_SOURCE_SETTINGS', str(settings))
    app = create_app()
    assert app.extensions['rumor_source'].workers == 2
    assert app.extensions['rumor_source'].chain_limits['max_d'] == 2
    assert create_app({'RUMOR_WORKERS': 3}).extensions['rumor_source'].workers == 3


@pytest.mark.parametrize('config', [
    {'RUMOR_WORKERS': 0},
    {'RUMOR_EXACT_LIMIT': 'many'},
    {'RUMOR_CHAIN_MAX_D': True},
    {'RUMOR_BACKEND': 'gossip'},
])
def test_bad_config(config):
    with pytest.raises(ConfigError):
        create_app(config)


def test_exact_dispatch(detector):
    assert detector.exact(ALL_SUSPECTS, 3, 4).value == Fraction(2, 5)
    assert detector.exact(CONNECTED_K, 3, 4, k=2).value == Fraction(4, 5)
    assert detector.exact(GENERAL_K_BOUND, 3, 4, k=2).method == 'lower-bound'
    assert detector.exact(TWO_AT_D, 2, 2, d=1).value == Fraction(3, 4)
    with pytest.raises(ArgumentError):
        detector.exact(CONNECTED_K, 3, 4)
    with pytest.raises(ArgumentError):
        detector.exact('everyone', 3, 4)


def test_chain_limits_come_from_config():
    app = create_app({'RUMOR_CHAIN_MAX_D': 1})
    with app.app_context():
        detector = app.extensions['rumor_source']
        assert detector.exact(TWO_AT_D, 3, 10, d=1).value > 0
        with pytest.raises(BudgetError):
            detector.exact(TWO_AT_D, 3, 10, d=2)
        with pytest.raises(BudgetError):
            detector.breakdown(3, 2, 10)


def test_exact_limit_comes_from_config():
    app = create_app({'RUMOR_EXACT_LIMIT': 10})
    with app.app_context():
        assert isinstance(app.extensions['rumor_source'].exact(ALL_SUSPECTS, 5, 20).value, float)
        assert isinstance(app.extensions['rumor_source'].exact(ALL_SUSPECTS, 5, 10).value, Fraction)


def test_simulate_and_estimate(detector):
    snap = detector.simulate(3, 20, seed=8)
    assert snap.n == 20
    assert detector.simulate(3, 20, seed=8).sequence == snap.sequence
    suspects = detector.suspects(snap, SuspectSet.CONNECTED, k=4)
    assert suspects.k == 4
    estimate = detector.estimate(snap, suspects, tie_seed=1)
    assert estimate.chosen in suspects.members
    two = detector.suspects(snap, SuspectSet.TWO, members=[0, 1])
    assert two.param == 1
    with pytest.raises(ArgumentError):
        detector.suspects(snap, SuspectSet.TWO, members=[0])


def test_experiment_uses_defaults(detector):
    cfg = detector.experiment_config(ALL_SUSPECTS, 3, seed=5)
    assert (cfg.n, cfg.trials) == (30, 50)
    report = detector.experiment(cfg)
    assert report.config is cfg
    assert 0 <= report.empirical_pc <= 1
