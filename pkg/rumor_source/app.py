#!/usr/bin/env python

from flask import Flask

from .detector import SourceDetector
from .exactprob import CHAIN_MAX_D, CHAIN_MAX_N, CHAIN_STATE_BUDGET
from .harness import DEFAULT_N, DEFAULT_TRIALS
from .spread import UNIFORM_BOUNDARY
from .topology import MAX_NODES
from .urn import EXACT_LIMIT

DEFAULT_CONFIG = {
    'RUMOR_EXACT_LIMIT': EXACT_LIMIT,
    'RUMOR_CHAIN_STATE_BUDGET': CHAIN_STATE_BUDGET,
    'RUMOR_CHAIN_MAX_D': CHAIN_MAX_D,
    'RUMOR_CHAIN_MAX_N': CHAIN_MAX_N,
    'RUMOR_MAX_NODES': MAX_NODES,
    'RUMOR_DEFAULT_N': DEFAULT_N,
    'RUMOR_DEFAULT_TRIALS': DEFAULT_TRIALS,
    'RUMOR_WORKERS': 1,
    'RUMOR_BACKEND': UNIFORM_BOUNDARY,
}

SETTINGS_ENVVAR = 'RUMOR_SOURCE_SETTINGS'


def create_app(config=None):
    """
    Defaults, then the file named by ``RUMOR_SOURCE_SETTINGS``, then
    ``config``.
    """
    app = Flask('rumor_source')
    app.config.update(DEFAULT_CONFIG)
    app.config.from_envvar(SETTINGS_ENVVAR, silent=True)
    if config:
        app.config.update(config)

    SourceDetector(app)

    from .cli import register_commands
    register_commands(app)
    return app
