"""
Reproducing kernels on the diagonal and universality diagnostics.

K_n(x, y) = sum_{j<n} p_j(x) p_j(y) and K_n^{(k,l)} sums derivative products.
The kernel order n counts terms, so a degree-n random polynomial uses order
n + 1. Weighted kernels multiply by mu'(x)^(1/2) mu'(y)^(1/2), i.e. by mu'(x)
on the diagonal.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orthozeros.config.manager import config as ortho_config
from orthozeros.errors import CauchySchwarzViolation, WeightUnavailable
from orthozeros.measure.spec import MeasureSpec
from orthozeros.orthopoly.evaluation import eval_all, eval_scaled
from orthozeros.orthopoly.recurrence import RecurrenceTable
from orthozeros.utils.helpers import compensated_sum

logger = logging.getLogger(__name__)

SUPPORTED_PAIRS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class KernelDiagonal:
    """(A, B, C) = (K_n(x,x), K_n^{(0,1)}(x,x), K_n^{(1,1)}(x,x)) at one point."""

    x: float
    n: int
    A: float
    B: float
    C: float
    weight_at_x: float | None = None

    @property
    def radicand(self) -> float:
        """A*C - B^2 with roundoff clamped to zero."""
        return max(self.A * self.C - self.B * self.B, 0.0)

    @property
    def density(self) -> float:
        """Kac-Rice integrand sqrt(A*C - B^2) / A (without the 1/pi)."""
        return math.sqrt(self.radicand) / self.A

    def weighted(self, k: int, l: int) -> float:
        """K~_n^{(k,l)}(x,x) for k, l in {0, 1}."""
        if self.weight_at_x is None:
            raise WeightUnavailable(f"no weight value attached at x={self.x}")
        if (k, l) not in SUPPORTED_PAIRS:
            raise ValueError(f"derivative orders ({k}, {l}) not supported")
        base = {0: self.A, 1: self.B, 2: self.C}[k + l]
        return self.weight_at_x * base


def _reduced_radicand(A: NDArray[np.float64], B: NDArray[np.float64], C: NDArray[np.float64]) -> NDArray[np.float64]:
    """(A*C - B^2) / A^2, clamped at zero after checking it is not negative beyond roundoff."""
    ratio_b = B / A
    ratio_c = C / A
    reduced = ratio_c - ratio_b * ratio_b
    slack = float(ortho_config.kernels.cauchy_schwarz_slack)
    bad = reduced < -slack * ratio_c
    if np.any(bad):
        i = np.flatnonzero(np.atleast_1d(bad))[0]
        raise CauchySchwarzViolation(
            f"(A*C - B^2)/A^2 = {np.atleast_1d(reduced)[i]!r} below roundoff slack (C/A = {np.atleast_1d(ratio_c)[i]!r})")
    return np.maximum(reduced, 0.0)


def check_radicand(A: NDArray[np.float64], B: NDArray[np.float64], C: NDArray[np.float64]) -> NDArray[np.float64]:
    """A*C - B^2, clamped at zero after checking it is not negative beyond roundoff.

    Raises:
        CauchySchwarzViolation: radicand below -slack * A * C somewhere
    """
    return _reduced_radicand(A, B, C) * A * A


def kac_rice_density(A: NDArray[np.float64], B: NDArray[np.float64], C: NDArray[np.float64]) -> NDArray[np.float64]:
    """sqrt(A*C - B^2) / A, evaluated as sqrt(C/A - (B/A)^2) so rescaled kernels never overflow.

    Raises:
        CauchySchwarzViolation: radicand below -slack * A * C somewhere
    """
    return np.sqrt(_reduced_radicand(A, B, C))


def kernel_diagonal_arrays(
    table: RecurrenceTable, x: ArrayLike, n: int
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """Vectorized diagonal kernels of order n.

    Returns:
        (A, B, C, log_scale) where the true kernels are A * exp(2 * log_scale) etc.
        Ratios such as B/A and sqrt(A*C - B^2)/A need no rescaling.
    """
    if not 1 <= n <= table.n_max + 1:
        raise ValueError(f"kernel order {n} outside [1, {table.n_max + 1}]")
    values, derivs, log_scale = eval_scaled(table, x, n - 1)
    A = compensated_sum(values * values)
    B = compensated_sum(values * derivs)
    C = compensated_sum(derivs * derivs)
    return A, B, C, log_scale


def kernel_diagonal(table: RecurrenceTable, x: float, n: int, weight_at_x: float | None = None) -> KernelDiagonal:
    """K_n(x,x), K_n^{(0,1)}(x,x), K_n^{(1,1)}(x,x) with compensated summation.

    Args:
        table: Recurrence table with n_max >= n - 1
        x: Evaluation point
        n: Kernel order (number of terms)
        weight_at_x: mu'(x), attached for the weighted variants

    Raises:
        CauchySchwarzViolation: A*C - B^2 negative beyond roundoff
    """
    A, B, C, log_scale = kernel_diagonal_arrays(table, float(x), n)
    check_radicand(A, B, C)
    factor = math.exp(2.0 * float(log_scale)) if log_scale > 0.0 else 1.0
    return KernelDiagonal(float(x), n, float(A) * factor, float(B) * factor, float(C) * factor, weight_at_x)


def weight_at(spec: MeasureSpec, x: float) -> float:
    """mu'(x) from the closed-form weight.

    Raises:
        WeightUnavailable: x off the support, on a singular factor, or weight not positive
    """
    if spec.singular_at(x):
        raise WeightUnavailable(f"mu' has a singular factor at x={x}")
    w = float(spec.density(x))
    if not (w > 0.0 and math.isfinite(w)):
        raise WeightUnavailable(f"mu'({x}) = {w} is not positive and finite")
    return w


def universality_target(j: int, k: int) -> float:
    """pi^(j+k) * tau_{j,k}: zero for odd j+k, (-1)^((j-k)/2) / (j+k+1) otherwise."""
    if (j + k) % 2:
        return 0.0
    sign = -1.0 if ((j - k) // 2) % 2 else 1.0
    return math.pi ** (j + k) * sign / (j + k + 1)


def universality_ratios(
    table: RecurrenceTable,
    spec: MeasureSpec,
    x: float,
    n: int,
    pairs: list[tuple[int, int]] | tuple[tuple[int, int], ...] = SUPPORTED_PAIRS,
) -> list[tuple[float, float]]:
    """Weighted diagonal ratios K~_{n+1}^{(j,k)} / K~_{n+1}^{j+k+1} and their sine-kernel limits.

    Args:
        table: Recurrence table with n_max >= n
        spec: Measure the table belongs to (supplies mu'(x))
        x: Interior point with mu'(x) > 0
        n: Polynomial degree (kernel order n + 1)
        pairs: Derivative orders, each in {0, 1}^2

    Returns:
        One (ratio, target) per pair

    Raises:
        WeightUnavailable: mu'(x) is not available at x
    """
    for pair in pairs:
        if tuple(pair) not in SUPPORTED_PAIRS:
            raise ValueError(f"derivative orders {pair} not supported (only 0 and 1)")
    kd = kernel_diagonal(table, x, n + 1, weight_at(spec, x))
    base = kd.weighted(0, 0)
    out = []
    for j, k in pairs:
        ratio = kd.weighted(j, k) / base ** (j + k + 1)
        out.append((ratio, universality_target(j, k)))
    logger.debug(f"Universality at x={x}, n={n}: {out}")
    return out


def sinc_deviation(table: RecurrenceTable, spec: MeasureSpec, x: float, n: int, r: float, grid: int) -> float:
    """Largest gap between the scaled kernel and the sine kernel on a (u, v) grid.

    Returns sup over u, v in linspace(-r, r, grid) of
    |K_{n+1}(x + u/K~, x + v/K~) / K_{n+1}(x, x) - sin(pi(u-v))/(pi(u-v))|
    with K~ = K~_{n+1}(x, x).
    """
    if not r > 0.0:
        raise ValueError(f"r must be positive, got {r}")
    if grid < 2:
        raise ValueError(f"grid must be at least 2, got {grid}")
    kd = kernel_diagonal(table, x, n + 1, weight_at(spec, x))
    scale = kd.weighted(0, 0)

    u = np.linspace(-r, r, grid)
    u[np.abs(u) <= 1e-15 * r] = 0.0
    values, _ = eval_all(table, x + u / scale, n)
    gram = values.T @ values
    gram = 0.5 * (gram + gram.T)

    zero = np.flatnonzero(u == 0.0)
    diagonal = gram[zero[0], zero[0]] if zero.size else kd.A
    deviation = np.abs(gram / diagonal - np.sinc(u[:, None] - u[None, :]))
    return float(np.max(deviation))
