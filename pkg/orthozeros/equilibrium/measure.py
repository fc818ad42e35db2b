"""
Equilibrium measures and logarithmic capacity.

Closed forms are available for a single interval [l, r] (the arcsine law)
and for a pair [-r, -l] U [l, r] symmetric about the origin. Other unions
are reached only through the approximate Christoffel-function route.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orthozeros.errors import EquilibriumError, UnsupportedSupportClass
from orthozeros.kernels.diagonal import kernel_diagonal_arrays
from orthozeros.measure.quadrature import Panel, adaptive_panels
from orthozeros.measure.spec import MeasureSpec
from orthozeros.orthopoly.recurrence import RecurrenceTable

logger = logging.getLogger(__name__)

SINGLE = 'single'
SYMMETRIC_PAIR = 'symmetric_pair'

MASS_REL_TOL = 1e-10
NORMALIZATION_TOL = 1e-8
_SYMMETRY_TOL = 1e-12


def capacity_interval(l: float, r: float) -> float:
    """Logarithmic capacity (r - l) / 4 of [l, r]."""
    if not l < r:
        raise ValueError(f"empty interval [{l}, {r}]")
    return 0.25 * (r - l)


@dataclass(frozen=True)
class EquilibriumMeasure:
    """Equilibrium measure nu_K of a supported compact set K.

    For ``single`` K = [l, r]; for ``symmetric_pair`` K = [-r, -l] U [l, r]
    with 0 < l < r.
    """

    support_class: str
    l: float
    r: float
    capacity: float

    @property
    def support(self) -> tuple[tuple[float, float], ...]:
        if self.support_class == SINGLE:
            return ((self.l, self.r),)
        return ((-self.r, -self.l), (self.l, self.r))

    def density(self, x: ArrayLike) -> NDArray[np.float64]:
        """nu_K'(x); zero off the open support."""
        x = np.asarray(x, dtype=float)
        with np.errstate(divide='ignore', invalid='ignore'):
            if self.support_class == SINGLE:
                inside = (x > self.l) & (x < self.r)
                value = 1.0 / (math.pi * np.sqrt((x - self.l) * (self.r - x)))
            else:
                ax = np.abs(x)
                inside = (ax > self.l) & (ax < self.r)
                value = ax / (math.pi * np.sqrt((ax * ax - self.l ** 2) * (self.r ** 2 - ax * ax)))
        return np.where(inside, value, 0.0)

    def cdf(self, x: float) -> float:
        """nu_K((-inf, x])."""
        if self.support_class == SINGLE:
            if x <= self.l:
                return 0.0
            if x >= self.r:
                return 1.0
            return 2.0 / math.pi * math.asin(math.sqrt((x - self.l) / (self.r - self.l)))
        return self.mass((-self.r, x))

    def mass(self, interval: tuple[float, float]) -> float:
        """nu_K([a, b]), with [a, b] clipped to the support."""
        a, b = float(interval[0]), float(interval[1])
        if not a < b:
            return 0.0
        if self.support_class == SINGLE:
            return self.cdf(b) - self.cdf(a)
        # mass of [-q, -p] equals mass of [p, q]
        positive = _component_mass(self.l, self.r, max(a, self.l), min(b, self.r))
        negative = _component_mass(self.l, self.r, max(-b, self.l), min(-a, self.r))
        return positive + negative


def _component_mass(l: float, r: float, p: float, q: float) -> float:
    """Integral of the symmetric-pair density over [p, q] within [l, r]."""
    if not p < q:
        return 0.0
    at_l, at_r = p == l, q == r

    def integrand(x: NDArray[np.float64], lo: NDArray[np.float64], hi: NDArray[np.float64]) -> NDArray[np.float64]:
        # (x - l)^(-1/2) and (r - x)^(-1/2) are left to the rule on panels ending there
        f = x / (math.pi * np.sqrt((x + l) * (r + x)))
        f = f * np.where(lo == l, 1.0, 1.0 / np.sqrt(np.abs(x - l)))
        return f * np.where(hi == r, 1.0, 1.0 / np.sqrt(np.abs(r - x)))

    panel = Panel(p, q, -0.5 if at_l else 0.0, -0.5 if at_r else 0.0)
    return adaptive_panels(integrand, [panel], MASS_REL_TOL, abs_tol=1e-15).value


def _classify(support: Sequence[tuple[float, float]]) -> tuple[str, float, float]:
    intervals = sorted((float(lo), float(hi)) for lo, hi in support)
    if len(intervals) == 1:
        l, r = intervals[0]
        if not l < r:
            raise UnsupportedSupportClass(f"degenerate interval [{l}, {r}]")
        return SINGLE, l, r
    if len(intervals) == 2:
        (a, b), (c, d) = intervals
        tol = _SYMMETRY_TOL * max(1.0, d)
        if abs(a + d) <= tol and abs(b + c) <= tol and 0.0 < c < d:
            return SYMMETRIC_PAIR, c, d
    raise UnsupportedSupportClass(
        f"no closed-form equilibrium measure for support {intervals}; use the approximate route")


def build(support: Sequence[tuple[float, float]] | MeasureSpec) -> EquilibriumMeasure:
    """Equilibrium measure of a single interval or a pair symmetric about 0.

    Raises:
        UnsupportedSupportClass: any other union of intervals
        EquilibriumError: the pair density failed its normalization check
    """
    if isinstance(support, MeasureSpec):
        support = support.support
    support_class, l, r = _classify(support)
    if support_class == SINGLE:
        return EquilibriumMeasure(SINGLE, l, r, capacity_interval(l, r))

    em = EquilibriumMeasure(SYMMETRIC_PAIR, l, r, 0.5 * math.sqrt(r * r - l * l))
    total = em.mass((-r, r))
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise EquilibriumError(f"symmetric-pair density integrates to {total!r}, not 1")
    logger.debug(f"Equilibrium measure of [-{r}, -{l}] U [{l}, {r}]: capacity {em.capacity!r}")
    return em


def approximate_density(table: RecurrenceTable, spec: MeasureSpec, x: ArrayLike, n: int) -> NDArray[np.float64]:
    """Approximate nu_K'(x) by (1/n) K~_{n+1}(x, x) = mu'(x) K_{n+1}(x, x) / n.

    Converges only in the limit and is not an exact oracle. Singular points of
    mu' return nan.
    """
    if not 1 <= n <= table.n_max:
        raise ValueError(f"degree {n} outside [1, {table.n_max}]")
    x = np.asarray(x, dtype=float)
    A, _, _, log_scale = kernel_diagonal_arrays(table, x, n + 1)
    w = spec.density(x)
    value = w * A * np.exp(2.0 * log_scale) / n
    return np.where(np.isfinite(w), value, np.nan)
