"""
Evaluation of orthonormal polynomials and Gauss rules from a recurrence table.
"""

import logging
import math

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import LinAlgError, eigh_tridiagonal

from orthozeros.config.manager import config as ortho_config
from orthozeros.errors import EigenFailure
from orthozeros.orthopoly.recurrence import RecurrenceTable

logger = logging.getLogger(__name__)


def eval_scaled(
    table: RecurrenceTable, x: ArrayLike, n: int
) -> tuple[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]]:
    """p_0..p_n and p_0'..p_n' at x, with a per-point overflow guard.

    Whenever some |p_j(x)| or |p_j'(x)| exceeds ``[kernels] overflow_threshold``
    every row computed so far is divided by the threshold for that x and the
    log of the factor is added to ``log_scale``. True values are
    ``values * exp(log_scale)``.

    Returns:
        (values, derivatives, log_scale); values/derivatives have shape (n + 1, *x.shape)
    """
    if not 0 <= n <= table.n_max:
        raise ValueError(f"degree {n} outside [0, {table.n_max}]")
    x = np.asarray(x, dtype=float)
    shape = x.shape
    x = np.atleast_1d(x)
    threshold = float(ortho_config.kernels.overflow_threshold)
    log_threshold = math.log(threshold)

    values = np.empty((n + 1,) + x.shape)
    derivs = np.empty((n + 1,) + x.shape)
    log_scale = np.zeros(x.shape)
    values[0] = 1.0 / math.sqrt(table.mu0)
    derivs[0] = 0.0
    a, b = table.a, table.b
    for j in range(n):
        shifted = x - a[j]
        nxt = shifted * values[j]
        dnxt = shifted * derivs[j] + values[j]
        if j > 0:
            nxt -= b[j - 1] * values[j - 1]
            dnxt -= b[j - 1] * derivs[j - 1]
        values[j + 1] = nxt / b[j]
        derivs[j + 1] = dnxt / b[j]

        big = (np.abs(values[j + 1]) > threshold) | (np.abs(derivs[j + 1]) > threshold)
        if np.any(big):
            values[: j + 2, big] /= threshold
            derivs[: j + 2, big] /= threshold
            log_scale[big] += log_threshold
    return values.reshape((n + 1,) + shape), derivs.reshape((n + 1,) + shape), log_scale.reshape(shape)


def eval_all(table: RecurrenceTable, x: ArrayLike, n: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Values and derivatives of p_0..p_n at x by forward recurrence.

    Args:
        table: Recurrence table with n_max >= n
        x: Point or array of points
        n: Highest degree

    Returns:
        (values, derivatives), each of shape (n + 1, *x.shape)
    """
    values, derivs, log_scale = eval_scaled(table, x, n)
    if np.any(log_scale > 0.0):
        factor = np.exp(log_scale)
        return values * factor, derivs * factor
    return values, derivs


def gauss_nodes(table: RecurrenceTable, m: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """m-point Gauss rule from the Jacobi matrix (Golub-Welsch).

    Returns:
        (nodes, weights) with nodes ascending and weights summing to mu0

    Raises:
        EigenFailure: the tridiagonal eigensolver failed
    """
    if not 1 <= m <= table.n_max:
        raise ValueError(f"m must be in [1, {table.n_max}], got {m}")
    if m == 1:
        return np.array([table.a[0]]), np.array([table.mu0])
    try:
        nodes, vectors = eigh_tridiagonal(table.a[:m], table.b[: m - 1])
    except (LinAlgError, ValueError) as e:
        raise EigenFailure(f"tridiagonal eigensolve failed for m={m}: {e}") from e
    weights = table.mu0 * vectors[0, :] ** 2
    return nodes, weights
