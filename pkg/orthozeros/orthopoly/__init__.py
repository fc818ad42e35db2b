"""
Orthonormal polynomials.

This module builds three-term recurrences and evaluates orthonormal
polynomials, their derivatives and Gauss rules.
"""

from orthozeros.orthopoly.recurrence import (
    RecurrenceTable,
    build_recurrence,
    leading_coeff_growth,
    recurrence_analytic,
    recurrence_stieltjes,
)
from orthozeros.orthopoly.evaluation import eval_all, eval_scaled, gauss_nodes

__all__ = [
    'RecurrenceTable', 'build_recurrence', 'leading_coeff_growth', 'recurrence_analytic',
    'recurrence_stieltjes', 'eval_all', 'eval_scaled', 'gauss_nodes',
]
