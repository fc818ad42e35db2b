"""
Zeros of finite orthonormal expansions P(x) = sum_{j<=n} c_j p_j(x).

The comrade matrix is the n x n Jacobi matrix of the recurrence with its last
row corrected by -(b_n / c_n) * c_0..c_{n-1}; its eigenvalues are the zeros
of P. A sign-change scan on a dense grid serves as an independent check.
"""

import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import LinAlgError, eigvals
from scipy.optimize import brentq

from orthozeros.config.manager import config as ortho_config
from orthozeros.errors import DegenerateLeadingCoefficient, EigenFailure
from orthozeros.orthopoly.evaluation import eval_all
from orthozeros.orthopoly.recurrence import RecurrenceTable

logger = logging.getLogger(__name__)

Window = tuple[float, float]


def _coefficients(table: RecurrenceTable, coefficients: ArrayLike) -> NDArray[np.float64]:
    c = np.asarray(coefficients, dtype=float)
    if c.ndim != 1 or c.size < 2:
        raise ValueError("need coefficients c_0..c_n with n >= 1")
    if c.size - 1 > table.n_max:
        raise ValueError(f"degree {c.size - 1} exceeds table n_max {table.n_max}")
    if c[-1] == 0.0:
        raise DegenerateLeadingCoefficient("leading coefficient c_n is zero")
    return c


def comrade_matrix(table: RecurrenceTable, coefficients: ArrayLike) -> NDArray[np.float64]:
    """Jacobi matrix J_n with its last row corrected by the coefficient vector."""
    c = _coefficients(table, coefficients)
    n = c.size - 1
    matrix = np.diag(np.asarray(table.a[:n], dtype=float))
    if n > 1:
        off = np.asarray(table.b[: n - 1], dtype=float)
        matrix += np.diag(off, 1) + np.diag(off, -1)
    matrix[n - 1, :] -= (table.b[n - 1] / c[n]) * c[:n]
    return matrix


def find_zeros(table: RecurrenceTable, coefficients: ArrayLike) -> NDArray[np.complex128]:
    """All n complex zeros of P.

    Raises:
        DegenerateLeadingCoefficient: c_n == 0
        EigenFailure: the eigensolver failed
    """
    matrix = comrade_matrix(table, coefficients)
    try:
        return np.asarray(eigvals(matrix), dtype=complex)
    except (LinAlgError, ValueError) as e:
        raise EigenFailure(f"comrade eigensolve failed for n={matrix.shape[0]}: {e}") from e


def evaluate(table: RecurrenceTable, coefficients: ArrayLike, x: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """P(x) and P'(x)."""
    c = np.asarray(coefficients, dtype=float)
    values, derivs = eval_all(table, x, c.size - 1)
    return np.tensordot(c, values, axes=1), np.tensordot(c, derivs, axes=1)


def in_window(x: NDArray[np.float64], window: Window | None, slack: float | None = None) -> NDArray[np.bool_]:
    """Membership in the open window (a - slack, b + slack)."""
    if window is None:
        return np.ones(np.shape(x), dtype=bool)
    slack = ortho_config.zeros.window_slack if slack is None else slack
    a, b = window
    return (x > a - slack) & (x < b + slack)


def _polish(table: RecurrenceTable, c: NDArray[np.float64], x: NDArray[np.float64], steps: int = 2) -> NDArray[np.float64]:
    """Guarded Newton steps; a step is kept only when it is small and finite."""
    for _ in range(steps):
        value, deriv = evaluate(table, c, x)
        with np.errstate(divide='ignore', invalid='ignore'):
            step = value / deriv
        ok = np.isfinite(step) & (np.abs(step) <= 1e-6 * np.maximum(1.0, np.abs(x)))
        x = np.where(ok, x - step, x)
    return x


def real_zeros_from(
    table: RecurrenceTable,
    coefficients: ArrayLike,
    eigenvalues: NDArray[np.complex128],
    window: Window | None = None,
    polish: bool = True,
) -> NDArray[np.float64]:
    """Real zeros among precomputed comrade eigenvalues; see find_real_zeros."""
    c = np.asarray(coefficients, dtype=float)
    reality_tol = ortho_config.zeros.reality_tol
    dedup_tol = ortho_config.zeros.dedup_tol

    re, im = eigenvalues.real, eigenvalues.imag
    real = np.sort(re[np.abs(im) <= reality_tol * np.maximum(1.0, np.abs(re))])
    if real.size and polish:
        real = np.sort(_polish(table, c, real))
    if real.size > 1:
        keep = np.concatenate(([True], np.diff(real) > dedup_tol * np.maximum(1.0, np.abs(real[1:]))))
        real = real[keep]
    return real[in_window(real, window)]


def find_real_zeros(
    table: RecurrenceTable, coefficients: ArrayLike, window: Window | None = None, polish: bool = True,
) -> NDArray[np.float64]:
    """Sorted real zeros of P, optionally restricted to a window.

    An eigenvalue z is real when |Im z| <= reality_tol * max(1, |Re z|).
    Zeros closer than ``dedup_tol`` are counted once.

    Args:
        table: Recurrence table with n_max >= n
        coefficients: c_0..c_n with c_n != 0
        window: (a, b) or None for the whole line
        polish: Apply guarded Newton refinement to the eigenvalues

    Raises:
        DegenerateLeadingCoefficient: c_n == 0
        EigenFailure: the eigensolver failed
    """
    return real_zeros_from(table, coefficients, find_zeros(table, coefficients), window, polish)


def find_real_zeros_gridscan(
    table: RecurrenceTable, coefficients: ArrayLike, window: Window, grid_factor: int | None = None,
) -> NDArray[np.float64]:
    """Real zeros in a finite window from sign changes on a grid of grid_factor * n points.

    Each bracket is refined by Brent's method to ``[zeros] bisection_tol``.
    Zeros that do not change sign, and pairs closer than the grid spacing, are
    missed.
    """
    c = np.asarray(coefficients, dtype=float)
    if c.ndim != 1 or c.size < 2:
        raise ValueError("need coefficients c_0..c_n with n >= 1")
    grid_factor = ortho_config.zeros.grid_factor if grid_factor is None else grid_factor
    if grid_factor < 8:
        raise ValueError(f"grid_factor must be at least 8, got {grid_factor}")
    a, b = float(window[0]), float(window[1])
    if not (np.isfinite(a) and np.isfinite(b) and a < b):
        raise ValueError(f"grid scan needs a finite window, got [{a}, {b}]")
    n = c.size - 1
    xtol = ortho_config.zeros.bisection_tol

    x = np.linspace(a, b, grid_factor * n + 1)
    f, _ = evaluate(table, c, x)

    def p(t: float) -> float:
        return float(evaluate(table, c, t)[0])

    zeros = [float(t) for t in x[f == 0.0]]
    for i in np.flatnonzero(f[:-1] * f[1:] < 0.0):
        zeros.append(brentq(p, x[i], x[i + 1], xtol=xtol))
    out = np.array(sorted(zeros), dtype=float)
    return out[in_window(out, window)]


def strip_zeros(eigenvalues: NDArray[np.complex128], window: Window | None, height: float | None = None) -> NDArray[np.float64]:
    """Sorted real parts of the zeros in the strip |Im z| <= height over the window."""
    height = ortho_config.zeros.strip_height if height is None else height
    re = eigenvalues.real[np.abs(eigenvalues.imag) <= height]
    return np.sort(re[in_window(re, window)])
