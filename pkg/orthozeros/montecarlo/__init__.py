"""
Monte Carlo simulation of random orthogonal polynomials.

This module samples Gaussian coefficients on reproducible substreams,
locates zeros and accumulates zero-count statistics.
"""

from orthozeros.montecarlo.sampling import sample_polynomial, trial_generator
from orthozeros.montecarlo.zeros import (
    comrade_matrix,
    evaluate,
    find_real_zeros,
    find_real_zeros_gridscan,
    find_zeros,
    real_zeros_from,
    strip_zeros,
)
from orthozeros.montecarlo.experiment import (
    Histogram,
    TrialRecord,
    ZeroCountStats,
    component_shares,
    oracle_agreement,
    run_experiment,
    zero_histogram,
)

__all__ = [
    'sample_polynomial', 'trial_generator', 'comrade_matrix', 'evaluate', 'find_real_zeros',
    'find_real_zeros_gridscan', 'find_zeros', 'real_zeros_from', 'strip_zeros',
    'Histogram', 'TrialRecord', 'ZeroCountStats', 'component_shares', 'oracle_agreement', 'run_experiment', 'zero_histogram',
]
