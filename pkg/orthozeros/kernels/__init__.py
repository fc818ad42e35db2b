"""
Christoffel-Darboux kernels.

This module evaluates diagonal kernels, their weighted versions and the
universality diagnostics.
"""

from orthozeros.kernels.diagonal import (
    SUPPORTED_PAIRS,
    KernelDiagonal,
    check_radicand,
    kac_rice_density,
    kernel_diagonal,
    kernel_diagonal_arrays,
    sinc_deviation,
    universality_ratios,
    universality_target,
    weight_at,
)

__all__ = [
    'SUPPORTED_PAIRS', 'KernelDiagonal', 'check_radicand', 'kac_rice_density', 'kernel_diagonal', 'kernel_diagonal_arrays',
    'sinc_deviation', 'universality_ratios', 'universality_target', 'weight_at',
]
