"""
Utility functions and helpers.

This module contains small helpers used throughout the package.
"""

from orthozeros.utils.helpers import NeumaierAccumulator, compensated_sum, fmt, get_data_path

__all__ = ['NeumaierAccumulator', 'compensated_sum', 'fmt', 'get_data_path']
