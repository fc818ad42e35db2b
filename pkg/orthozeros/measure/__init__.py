"""
Orthogonality measures.

This module defines measures with compact support, validates them and
integrates against them.
"""

from orthozeros.measure.spec import (
    GeneralizedJacobiWeight,
    JacobiWeight,
    MeasureSpec,
    Piece,
    SingularFactor,
    builtin_measures,
    chebyshev,
    generalized,
    jacobi,
    legendre,
    load_measure,
    measure_from_section,
    measure_to_dict,
    parse_measure_text,
    validate,
)
from orthozeros.measure.quadrature import (
    Panel,
    QuadratureResult,
    adaptive_panels,
    discretize,
    integrate,
    integrate_details,
    uniform_panels,
)

__all__ = [
    'GeneralizedJacobiWeight', 'JacobiWeight', 'MeasureSpec', 'Piece', 'SingularFactor',
    'builtin_measures', 'chebyshev', 'generalized', 'jacobi', 'legendre', 'load_measure',
    'measure_from_section', 'measure_to_dict', 'parse_measure_text', 'validate',
    'Panel', 'QuadratureResult', 'adaptive_panels', 'discretize', 'integrate',
    'integrate_details', 'uniform_panels',
]
