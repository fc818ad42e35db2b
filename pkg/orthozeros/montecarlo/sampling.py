"""
Reproducible Gaussian coefficient streams.

Every trial draws from its own Philox substream: the key is the experiment
seed and the trial id occupies the high half of the 256-bit counter. A trial
therefore sees the same numbers no matter which thread runs it or in what
order trials are scheduled.
"""

import numpy as np
from numpy.typing import NDArray

from orthozeros.orthopoly.recurrence import RecurrenceTable

SEED_BITS = 64
TRIAL_SHIFT = 128


def trial_generator(seed: int, trial_id: int) -> np.random.Generator:
    """Independent generator for one trial of an experiment.

    Args:
        seed: 64-bit experiment seed (Philox key)
        trial_id: Non-negative trial index

    Returns:
        numpy Generator over a Philox bit generator
    """
    if not 0 <= seed < 2 ** SEED_BITS:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    if trial_id < 0:
        raise ValueError(f"trial_id must be non-negative, got {trial_id}")
    return np.random.Generator(np.random.Philox(key=seed, counter=trial_id << TRIAL_SHIFT))


def sample_polynomial(table: RecurrenceTable, n: int, sigma: float, rng: np.random.Generator) -> NDArray[np.float64]:
    """n + 1 independent N(0, sigma^2) coefficients c_0..c_n.

    Raises:
        ValueError: sigma <= 0 or n outside the table
    """
    if not sigma > 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not 1 <= n <= table.n_max:
        raise ValueError(f"degree {n} outside [1, {table.n_max}]")
    return rng.normal(0.0, sigma, n + 1)
