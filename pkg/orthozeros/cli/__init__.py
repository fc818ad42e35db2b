"""
Command-line interface for orthozeros.
"""

from orthozeros.cli.experiment import ExperimentConfig, dump_experiment, parse_experiment
from orthozeros.cli.main import build_parser, main, run

__all__ = ['ExperimentConfig', 'dump_experiment', 'parse_experiment', 'build_parser', 'main', 'run']
