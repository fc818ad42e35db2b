"""
Kac-Rice expected zero counts.

This module integrates the Kac-Rice density for general bases, for
orthonormal polynomials of a measure and for Kac's monomial ensemble.
"""

from orthozeros.kacrice.integrals import (
    FULL_LINE,
    KacRiceResult,
    adaptive_integrate,
    expected_zeros_general,
    expected_zeros_kac_monomial,
    expected_zeros_orthopoly,
    kac_asymptote,
    limit_prediction,
    monomial_basis,
    orthonormal_basis,
    sweep_kac,
    sweep_orthopoly,
)

__all__ = [
    'FULL_LINE', 'KacRiceResult', 'adaptive_integrate', 'expected_zeros_general',
    'expected_zeros_kac_monomial', 'expected_zeros_orthopoly', 'kac_asymptote', 'limit_prediction',
    'monomial_basis', 'orthonormal_basis', 'sweep_kac', 'sweep_orthopoly',
]
