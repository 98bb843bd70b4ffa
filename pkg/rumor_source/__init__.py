#!/usr/bin/env python

from .app import create_app
from .detector import SourceDetector
from .estimator import map_estimate
from .exactprob import (
    pc_all_suspects, pc_connected, pc_general_lower_bound, pc_two_suspects, phi1, phi2, phi3
)
from .harness import ExperimentConfig, figure_sweep, run_experiment

__all__ = [
    'create_app',
    'SourceDetector',
    'map_estimate',
    'pc_all_suspects',
    'pc_connected',
    'pc_general_lower_bound',
    'pc_two_suspects',
    'phi1',
    'phi2',
    'phi3',
    'ExperimentConfig',
    'run_experiment',
    'figure_sweep'
]
