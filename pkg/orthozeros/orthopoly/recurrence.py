"""
Three-term recurrences for orthonormal polynomials.

The convention throughout the package is

    x p_j(x) = b_{j+1} p_{j+1}(x) + a_j p_j(x) + b_j p_{j-1}(x),   p_0 = 1/sqrt(mu0),

with ``a[j] = a_j`` for j = 0..n_max-1 and ``b[j-1] = b_j`` for j = 1..n_max.
"""

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import NDArray
from scipy.special import betaln

from orthozeros.config.manager import config as ortho_config
from orthozeros.errors import NonConvergence, UnsupportedSpec
from orthozeros.measure.quadrature import discretize
from orthozeros.measure.spec import JacobiWeight, MeasureSpec

logger = logging.getLogger(__name__)

CSV_COLUMNS = ('j', 'a_j', 'b_j', 'gamma_log_j')


@dataclass(frozen=True, eq=False)
class RecurrenceTable:
    """Recurrence coefficients, total mass and log leading coefficients up to degree n_max."""

    n_max: int
    a: NDArray[np.float64]
    b: NDArray[np.float64]
    mu0: float
    gamma_log: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.a.shape != (self.n_max,) or self.b.shape != (self.n_max,) or self.gamma_log.shape != (self.n_max + 1,):
            raise ValueError(f"inconsistent table shapes for n_max={self.n_max}: a{self.a.shape} b{self.b.shape} gamma{self.gamma_log.shape}")
        if not np.all(self.b > 0.0):
            raise ValueError("off-diagonal recurrence coefficients must be positive")
        if not self.mu0 > 0.0:
            raise ValueError(f"total mass must be positive, got {self.mu0}")
        expected = _gamma_log(self.mu0, self.b)
        assert np.array_equal(expected, self.gamma_log), "gamma_log does not follow the leading-coefficient recursion"
        for arr in (self.a, self.b, self.gamma_log):
            arr.setflags(write=False)

    @classmethod
    def from_coefficients(cls, a: NDArray[np.float64], b: NDArray[np.float64], mu0: float) -> 'RecurrenceTable':
        """Build a table, deriving gamma_log from mu0 and b."""
        a = np.array(a, dtype=float)
        b = np.array(b, dtype=float)
        return cls(len(a), a, b, float(mu0), _gamma_log(float(mu0), b))

    def truncate(self, n_max: int) -> 'RecurrenceTable':
        """Table restricted to degrees <= n_max."""
        if n_max > self.n_max:
            raise ValueError(f"cannot extend table from {self.n_max} to {n_max}")
        return RecurrenceTable.from_coefficients(self.a[:n_max], self.b[:n_max], self.mu0)

    def max_difference(self, other: 'RecurrenceTable') -> float:
        """Largest coefficient difference over the common degrees."""
        n = min(self.n_max, other.n_max)
        return float(max(np.max(np.abs(self.a[:n] - other.a[:n]), initial=0.0),
                         np.max(np.abs(self.b[:n] - other.b[:n]), initial=0.0)))

    def rows(self) -> list[tuple[int, str, str, str]]:
        """CSV rows (j, a_j, b_j, gamma_log_j); a_j is blank at j = n_max and b_j at j = 0."""
        out = []
        for j in range(self.n_max + 1):
            a_j = repr(float(self.a[j])) if j < self.n_max else ''
            b_j = repr(float(self.b[j - 1])) if j >= 1 else ''
            out.append((j, a_j, b_j, repr(float(self.gamma_log[j]))))
        return out

    def to_csv(self, path: Path | str) -> None:
        """Write the table as CSV with columns j, a_j, b_j, gamma_log_j."""
        with open(path, 'w', newline='') as fh:
            writer = csv.writer(fh, lineterminator='\r\n')
            writer.writerow(CSV_COLUMNS)
            writer.writerows(self.rows())

    @classmethod
    def from_csv(cls, path: Path | str) -> 'RecurrenceTable':
        """Read a table written by to_csv (mu0 is recovered from gamma_log_0)."""
        with open(path, newline='') as fh:
            rows = list(csv.DictReader(fh))
        if not rows:
            raise ValueError(f"empty recurrence table file {path}")
        a = [float(r['a_j']) for r in rows[:-1]]
        b = [float(r['b_j']) for r in rows[1:]]
        mu0 = math.exp(-2.0 * float(rows[0]['gamma_log_j']))
        return cls.from_coefficients(np.array(a), np.array(b), mu0)


def _gamma_log(mu0: float, b: NDArray[np.float64]) -> NDArray[np.float64]:
    out = np.empty(len(b) + 1)
    out[0] = -0.5 * math.log(mu0)
    for j in range(1, len(b) + 1):
        out[j] = out[j - 1] - math.log(b[j - 1])
    return out


def _jacobi_coefficients(alpha: float, beta: float, n_max: int) -> tuple[NDArray[np.float64], NDArray[np.float64], float]:
    """Orthonormal Jacobi recurrence on [-1, 1]."""
    ab = alpha + beta
    a = np.empty(n_max)
    b = np.empty(n_max)
    if n_max > 0:
        a[0] = (beta - alpha) / (ab + 2.0)
        b[0] = math.sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) ** 2 * (ab + 3.0)))
    if n_max > 1:
        j = np.arange(1, n_max, dtype=float)
        s = 2.0 * j + ab
        a[1:] = (beta * beta - alpha * alpha) / (s * (s + 2.0))
        k = j + 1.0
        t = 2.0 * k + ab
        b[1:] = np.sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0)))
    mu0 = math.exp((ab + 1.0) * math.log(2.0) + betaln(alpha + 1.0, beta + 1.0))
    return a, b, mu0


def recurrence_analytic(spec: MeasureSpec, n_max: int) -> RecurrenceTable:
    """Closed-form recurrence for a classical Jacobi measure, mapped to its interval.

    Raises:
        UnsupportedSpec: the measure is not classical Jacobi
    """
    if not isinstance(spec.weight, JacobiWeight):
        raise UnsupportedSpec(f"measure '{spec.name}' is not a classical Jacobi measure")
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    lo, hi = spec.support[0]
    a, b, mu0 = _jacobi_coefficients(spec.weight.alpha, spec.weight.beta, n_max)
    scale, center = 0.5 * (hi - lo), 0.5 * (hi + lo)
    if spec.weight.alpha == spec.weight.beta:
        a = np.zeros(n_max)
    return RecurrenceTable.from_coefficients(center + scale * a, scale * b, scale * mu0)


def _stieltjes(x: NDArray[np.float64], w: NDArray[np.float64], n_max: int) -> RecurrenceTable:
    """Discretized Stieltjes procedure on the discrete measure sum w_i delta(x_i)."""
    mu0 = math.fsum(w)
    a = np.empty(n_max)
    b = np.empty(n_max)
    p_prev = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(mu0))
    for j in range(n_max):
        a[j] = np.dot(w, x * p * p)
        r = (x - a[j]) * p
        if j > 0:
            r -= b[j - 1] * p_prev
        b[j] = math.sqrt(np.dot(w, r * r))
        p_prev, p = p, r / b[j]
    return RecurrenceTable.from_coefficients(a, b, mu0)


def recurrence_stieltjes(spec: MeasureSpec, n_max: int) -> RecurrenceTable:
    """Recurrence for any validated measure by the discretized Stieltjes procedure.

    Each smooth piece of the support is discretized with Gauss(-Jacobi) nodes;
    the node count starts at ``[stieltjes] initial_nodes`` (doubled until it
    exceeds n_max) and doubles until consecutive tables agree to
    ``stabilization_tol``.

    Raises:
        NonConvergence: the node cap is reached with a change above ``failure_tol``
    """
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    settings = ortho_config.stieltjes
    nodes = settings.initial_nodes
    while nodes < n_max + 1:
        nodes *= 2

    previous = _stieltjes(*discretize(spec, nodes), n_max)
    while True:
        nodes *= 2
        current = _stieltjes(*discretize(spec, nodes), n_max)
        change = current.max_difference(previous)
        logger.debug(f"Stieltjes '{spec.name}' n_max={n_max}: {nodes} nodes/piece, change {change:.3e}")
        if change <= settings.stabilization_tol:
            break
        if 2 * nodes > settings.max_nodes:
            if change > settings.failure_tol:
                raise NonConvergence(f"Stieltjes coefficients for '{spec.name}' still change by {change:.3e} at {nodes} nodes per piece")
            logger.warning(f"Stieltjes for '{spec.name}' stopped at {nodes} nodes per piece with change {change:.3e}")
            break
        previous = current

    if spec.is_symmetric():
        lo, hi = spec.hull
        current = RecurrenceTable.from_coefficients(np.full(n_max, 0.5 * (lo + hi)), current.b, current.mu0)
    logger.info(f"Built recurrence for '{spec.name}' up to degree {n_max} ({nodes} nodes per piece)")
    return current


def build_recurrence(spec: MeasureSpec, n_max: int) -> RecurrenceTable:
    """Closed form for classical Jacobi measures, Stieltjes otherwise."""
    if isinstance(spec.weight, JacobiWeight):
        return recurrence_analytic(spec, n_max)
    return recurrence_stieltjes(spec, n_max)


def leading_coeff_growth(table: RecurrenceTable, n: int) -> float:
    """gamma_n^(1/n); tends to 1/cap(K) for STU-regular measures."""
    if not 1 <= n <= table.n_max:
        raise ValueError(f"n must be in [1, {table.n_max}], got {n}")
    return math.exp(table.gamma_log[n] / n)
