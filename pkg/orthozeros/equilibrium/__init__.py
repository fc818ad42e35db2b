"""
Equilibrium measures.

This module evaluates equilibrium measures and capacities of supported
compact sets.
"""

from orthozeros.equilibrium.measure import (
    SINGLE,
    SYMMETRIC_PAIR,
    EquilibriumMeasure,
    approximate_density,
    build,
    capacity_interval,
)

__all__ = ['SINGLE', 'SYMMETRIC_PAIR', 'EquilibriumMeasure', 'approximate_density', 'build', 'capacity_interval']
