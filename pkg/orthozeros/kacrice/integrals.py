"""
Expected number of real zeros by the Kac-Rice integral.

For G(x) = sum_j c_j g_j(x) with i.i.d. N(0, sigma^2) coefficients and g_0 a
nonzero constant, the expected number of zeros in (a, b) is

    (1/pi) * integral_a^b sqrt(A C - B^2) / A dx,

A = sum g_j^2, B = sum g_j g_j', C = sum g_j'^2. sigma does not enter.
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from orthozeros.config.manager import config as ortho_config
from orthozeros.errors import InvalidBasis, UnsupportedSupportClass
from orthozeros.equilibrium.measure import build as build_equilibrium
from orthozeros.kernels.diagonal import kac_rice_density, kernel_diagonal_arrays
from orthozeros.measure.quadrature import Panel, QuadratureResult, adaptive_panels, uniform_panels
from orthozeros.measure.spec import MeasureSpec
from orthozeros.orthopoly.evaluation import eval_all
from orthozeros.orthopoly.recurrence import RecurrenceTable
from orthozeros.utils.helpers import NeumaierAccumulator, compensated_sum

logger = logging.getLogger(__name__)

# basis(x) -> (g_0..g_n, g_0'..g_n'), each of shape (n + 1, *x.shape)
Basis = Callable[[NDArray[np.float64]], tuple[NDArray[np.float64], NDArray[np.float64]]]

FULL_LINE = (-math.inf, math.inf)
INV_SQRT3 = 1.0 / math.sqrt(3.0)


@dataclass(frozen=True)
class KacRiceResult:
    """Expected number of real zeros of a degree-n ensemble in (a, b)."""

    a: float
    b: float
    n: int
    value: float
    est_error: float
    panels_used: int

    @property
    def interval(self) -> tuple[float, float]:
        return self.a, self.b

    def as_dict(self) -> dict:
        return {'n': self.n, 'a': self.a, 'b': self.b, 'value': self.value,
                'est_error': self.est_error, 'panels_used': self.panels_used}


def _rel_tol(rel_tol: float | None) -> float:
    rel_tol = ortho_config.quadrature.rel_tol if rel_tol is None else rel_tol
    if not rel_tol > 0.0:
        raise ValueError(f"rel_tol must be positive, got {rel_tol}")
    return rel_tol


def _seed_panels(n: int) -> int:
    # The density varies on the spacing of zeros, roughly 1/n
    return max(16, n // 2)


def _finish(a: float, b: float, n: int, quad: QuadratureResult) -> KacRiceResult:
    value = quad.value / math.pi
    if value > n * (1.0 + 1e-6):
        logger.warning(f"Expected zero count {value!r} exceeds degree {n} on [{a}, {b}]")
    return KacRiceResult(a, b, n, value, quad.est_error / math.pi, quad.panels)


def adaptive_integrate(
    f: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    a: float,
    b: float,
    rel_tol: float | None = None,
    initial_panels: int = 1,
) -> tuple[float, float, int]:
    """Integrate a vectorized f over [a, b] by globally adaptive Gauss panels.

    Returns:
        (value, est_error, panels); (0, 0, 0) when a == b

    Raises:
        QuadratureNonConvergence: the panel or depth cap is hit
    """
    rel_tol = _rel_tol(rel_tol)
    if a == b:
        return 0.0, 0.0, 0
    if a > b:
        value, err, panels = adaptive_integrate(f, b, a, rel_tol, initial_panels)
        return -value, err, panels
    quad = adaptive_panels(lambda x, lo, hi: f(x), uniform_panels(a, b, initial_panels), rel_tol)
    return quad.value, quad.est_error, quad.panels


def expected_zeros_general(basis: Basis, interval: tuple[float, float], n: int, rel_tol: float | None = None) -> KacRiceResult:
    """Kac-Rice count for an arbitrary C^1 basis g_0..g_n on a finite interval.

    Raises:
        InvalidBasis: g_0 is not a nonzero constant
        QuadratureNonConvergence: the quadrature did not converge
    """
    rel_tol = _rel_tol(rel_tol)
    a, b = float(interval[0]), float(interval[1])
    if a == b:
        return KacRiceResult(a, b, n, 0.0, 0.0, 0)

    probe = np.array([a, 0.5 * (a + b), b])
    g, dg = basis(probe)
    g, dg = np.asarray(g, dtype=float), np.asarray(dg, dtype=float)
    if g.shape[0] != n + 1:
        raise InvalidBasis(f"basis returned {g.shape[0]} functions, expected {n + 1}")
    if g[0, 0] == 0.0 or np.any(g[0] != g[0, 0]) or np.any(dg[0] != 0.0):
        raise InvalidBasis("g_0 must be a nonzero constant")

    def density(x: NDArray[np.float64]) -> NDArray[np.float64]:
        values, derivs = basis(x)
        A = compensated_sum(values * values)
        B = compensated_sum(values * derivs)
        C = compensated_sum(derivs * derivs)
        return kac_rice_density(A, B, C)

    lo, hi = min(a, b), max(a, b)
    quad = adaptive_panels(lambda x, _lo, _hi: density(x), uniform_panels(lo, hi, _seed_panels(n)), rel_tol)
    if a > b:
        quad = QuadratureResult(-quad.value, quad.est_error, quad.panels)
    return _finish(a, b, n, quad)


def monomial_basis(n: int) -> Basis:
    """Basis 1, x, ..., x^n with derivatives."""
    def basis(x: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        x = np.asarray(x, dtype=float)
        powers = np.empty((n + 1,) + x.shape)
        powers[0] = 1.0
        for j in range(1, n + 1):
            powers[j] = powers[j - 1] * x
        derivs = np.zeros_like(powers)
        for j in range(1, n + 1):
            derivs[j] = j * powers[j - 1]
        return powers, derivs
    return basis


def orthonormal_basis(table: RecurrenceTable, n: int) -> Basis:
    """Basis p_0..p_n from a recurrence table."""
    return lambda x: eval_all(table, x, n)


def expected_zeros_orthopoly(
    table: RecurrenceTable,
    spec: MeasureSpec,
    interval: tuple[float, float],
    n: int,
    rel_tol: float | None = None,
    weighted: bool = False,
    sigma: float = 1.0,
) -> KacRiceResult:
    """Kac-Rice count for random orthonormal polynomials sum_{j<=n} c_j p_j.

    Uses A = K_{n+1}(x,x), B = K_{n+1}^{(0,1)}(x,x), C = K_{n+1}^{(1,1)}(x,x).
    With ``weighted`` the integrand is evaluated in the equivalent form
    sqrt(C~/A~^3 - (B~/A~^2)^2) * A~ built from the weighted kernels.

    Args:
        table: Recurrence table with n_max >= n
        spec: Measure of the table
        interval: (a, b) inside the convex hull of the support
        n: Degree of the ensemble
        rel_tol: Quadrature tolerance (default ``[quadrature] rel_tol``)
        weighted: Evaluate the weighted-kernel form
        sigma: Coefficient standard deviation; the count does not depend on it
    """
    rel_tol = _rel_tol(rel_tol)
    if not sigma > 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    if not 1 <= n <= table.n_max:
        raise ValueError(f"degree {n} outside [1, {table.n_max}]")
    a, b = float(interval[0]), float(interval[1])
    lo, hi = spec.hull
    slack = 1e-12 * max(1.0, hi - lo)
    if min(a, b) < lo - slack or max(a, b) > hi + slack:
        raise ValueError(f"interval [{a}, {b}] leaves the support hull [{lo}, {hi}]")
    if a == b:
        return KacRiceResult(a, b, n, 0.0, 0.0, 0)

    def density(x: NDArray[np.float64]) -> NDArray[np.float64]:
        A, B, C, _ = kernel_diagonal_arrays(table, x, n + 1)
        plain = kac_rice_density(A, B, C)
        if not weighted:
            return plain
        w = spec.density(x)
        usable = (w > 0.0) & np.isfinite(w)
        wt = np.where(usable, w, 1.0)
        At, Bt, Ct = wt * A, wt * B, wt * C
        form = np.sqrt(np.maximum(Ct / At ** 3 - (Bt / At ** 2) ** 2, 0.0)) * At
        return np.where(usable, form, plain)

    quad = adaptive_panels(lambda x, _lo, _hi: density(x), uniform_panels(min(a, b), max(a, b), _seed_panels(n)), rel_tol)
    if a > b:
        quad = QuadratureResult(-quad.value, quad.est_error, quad.panels)
    result = _finish(a, b, n, quad)
    logger.debug(f"E[N_{n}({a}, {b})] = {result.value!r} ({result.panels_used} panels)")
    return result


def _kac_density(t: NDArray[np.float64], n: int) -> NDArray[np.float64]:
    """sqrt(A C - B^2) / A for the monomial sums on 0 <= t <= 1."""
    t = np.asarray(t, dtype=float)
    t2 = t * t
    A = NeumaierAccumulator(t.shape)
    B = NeumaierAccumulator(t.shape)
    C = NeumaierAccumulator(t.shape)
    A.add(np.ones_like(t))
    power = np.ones_like(t)  # t^(2(j-1))
    for j in range(1, n + 1):
        B.add(j * power * t)
        C.add(float(j) * j * power)
        power = power * t2
        A.add(power)
    a, b, c = A.result(), B.result(), C.result()
    return kac_rice_density(a, b, c)


def _kac_panels(lo: float, hi: float, n: int) -> list[Panel]:
    """Panels on [lo, hi] within [0, 1], graded geometrically toward t = 1."""
    edges = {lo, hi}
    levels = int(math.ceil(math.log2(max(n, 2)))) + 3
    for k in range(1, levels + 1):
        edge = 1.0 - 2.0 ** (-k)
        if lo < edge < hi:
            edges.add(edge)
    edges_sorted = sorted(edges)
    return [Panel(p, q) for p, q in zip(edges_sorted[:-1], edges_sorted[1:])]


def _kac_pieces(a: float, b: float) -> list[tuple[float, float]]:
    """Map (a, b) to t-ranges in [0, 1] using evenness and rho(x) = rho(1/x) / x^2."""
    ranges = []
    for lo, hi in ((max(a, 0.0), b), (max(-b, 0.0), -a)):
        if not lo < hi:
            continue
        if lo < 1.0:
            ranges.append((lo, min(hi, 1.0)))
        if hi > 1.0:
            ranges.append((0.0 if math.isinf(hi) else 1.0 / hi, 1.0 / max(lo, 1.0)))
    return ranges


def expected_zeros_kac_monomial(n: int, interval: tuple[float, float] = FULL_LINE, rel_tol: float | None = None) -> KacRiceResult:
    """Kac's count for sum_{j<=n} c_j x^j on an interval (default the whole line).

    The density is even and satisfies rho(x) = rho(1/x) / x^2, so every piece of
    the interval is integrated on [0, 1]; the whole line gives
    (4/pi) * integral_0^1 sqrt(A C - B^2) / A dt.
    """
    rel_tol = _rel_tol(rel_tol)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    a, b = float(interval[0]), float(interval[1])
    if a == b:
        return KacRiceResult(a, b, n, 0.0, 0.0, 0)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0

    cache: dict[tuple[float, float], QuadratureResult] = {}
    for piece in _kac_pieces(a, b):
        if piece not in cache and piece[0] < piece[1]:
            cache[piece] = adaptive_panels(lambda t, _lo, _hi: _kac_density(t, n), _kac_panels(*piece, n), rel_tol)
    parts = [cache[p] for p in _kac_pieces(a, b) if p in cache]
    total = math.fsum(q.value for q in parts)
    quad = QuadratureResult(sign * total, math.fsum(q.est_error for q in parts), sum(q.panels for q in parts))
    return _finish(float(interval[0]), float(interval[1]), n, quad)


def sweep_orthopoly(
    table: RecurrenceTable, spec: MeasureSpec, interval: tuple[float, float], ns: Sequence[int], rel_tol: float | None = None,
) -> list[KacRiceResult]:
    """expected_zeros_orthopoly over increasing degrees."""
    return [expected_zeros_orthopoly(table, spec, interval, n, rel_tol) for n in ns]


def sweep_kac(ns: Sequence[int], interval: tuple[float, float] = FULL_LINE, rel_tol: float | None = None) -> list[KacRiceResult]:
    """expected_zeros_kac_monomial over increasing degrees."""
    return [expected_zeros_kac_monomial(n, interval, rel_tol) for n in ns]


def kac_asymptote(n: int) -> float:
    """Leading-order Kac growth (2/pi) ln n."""
    return 2.0 / math.pi * math.log(n)


def limit_prediction(spec: MeasureSpec, interval: tuple[float, float]) -> float | None:
    """(1/sqrt 3) * nu_K([a, b]), or None when the support has no closed-form equilibrium measure."""
    try:
        em = build_equilibrium(spec.support)
    except UnsupportedSupportClass:
        return None
    return INV_SQRT3 * em.mass(interval)
