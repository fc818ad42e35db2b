"""
Utility functions for orthozeros.
Contains data-file lookup, compensated summation and number formatting.
"""

import importlib.resources
import logging
import math
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

logger = logging.getLogger(__name__)


def get_data_path(*parts: str) -> Path:
    """Get path to a file under the repository ``data`` directory.

    Args:
        *parts: Path components below ``data/``

    Returns:
        Path to the data file (may not exist)
    """
    try:
        base = Path(str(importlib.resources.files('orthozeros'))).parent / 'data'
    except Exception:
        base = Path(__file__).parent.parent.parent / 'data'
    if not base.exists():
        base = Path(__file__).parent.parent.parent / 'data'
    return base.joinpath(*parts)


class NeumaierAccumulator:
    """Compensated (Kahan-Babuska-Neumaier) running sum, elementwise over arrays."""

    def __init__(self, shape: tuple[int, ...] | int = ()) -> None:
        self.total = np.zeros(shape)
        self.compensation = np.zeros(shape)

    def add(self, term: NDArray[np.float64] | float) -> None:
        term = np.asarray(term, dtype=float)
        t = self.total + term
        big = np.abs(self.total) >= np.abs(term)
        self.compensation += np.where(big, (self.total - t) + term, (term - t) + self.total)
        self.total = t

    def result(self) -> NDArray[np.float64]:
        return self.total + self.compensation


def compensated_sum(rows: NDArray[np.float64]) -> NDArray[np.float64]:
    """Sum ``rows`` along axis 0 with Neumaier compensation."""
    rows = np.asarray(rows, dtype=float)
    if rows.shape[0] == 0:
        return np.zeros(rows.shape[1:])
    acc = NeumaierAccumulator(rows.shape[1:])
    for row in rows:
        acc.add(row)
    return acc.result()


def fmt(value: float | int) -> str:
    """Serialize a number as the shortest string that round-trips exactly."""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return 'nan'
    if math.isinf(value):
        return 'inf' if value > 0 else '-inf'
    return repr(value)
