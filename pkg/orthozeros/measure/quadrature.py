"""
Composite Gauss quadrature with dyadic refinement.

Panels carry the exponents of algebraic singularities sitting on their ends;
such panels use Gauss-Jacobi rules so that |x - x_j|^alpha_j is integrated
exactly and only the smooth remainder is sampled. Every panel is evaluated
with an m-point and a 2m-point rule; the difference is the panel error
estimate. Panels whose error is above their share of the tolerance are
bisected until the total estimate meets the tolerance.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray
from scipy.special import roots_jacobi

from orthozeros.config.manager import config as ortho_config
from orthozeros.errors import QuadratureNonConvergence
from orthozeros.measure.spec import MeasureSpec

logger = logging.getLogger(__name__)

# integrand(x, lo, hi): x holds the nodes of a batch of panels, lo/hi the
# matching panel ends (same shape as x)
PanelIntegrand = Callable[[NDArray[np.float64], NDArray[np.float64], NDArray[np.float64]], NDArray[np.float64]]


@dataclass(frozen=True)
class Panel:
    lo: float
    hi: float
    alpha_lo: float = 0.0
    alpha_hi: float = 0.0
    depth: int = 0

    def split(self) -> tuple['Panel', 'Panel']:
        mid = 0.5 * (self.lo + self.hi)
        return (Panel(self.lo, mid, self.alpha_lo, 0.0, self.depth + 1),
                Panel(mid, self.hi, 0.0, self.alpha_hi, self.depth + 1))


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_error: float
    panels: int


@lru_cache(maxsize=256)
def panel_rule(m: int, alpha_lo: float = 0.0, alpha_hi: float = 0.0) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Nodes and weights on [-1, 1] for the weight (1 + t)^alpha_lo (1 - t)^alpha_hi."""
    if alpha_lo == 0.0 and alpha_hi == 0.0:
        t, w = np.polynomial.legendre.leggauss(m)
    else:
        t, w = roots_jacobi(m, alpha_hi, alpha_lo)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def _apply_rule(integrand: PanelIntegrand, panels: list[Panel], m: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Panel values and L1 estimates for one rule order, batched by exponent pair."""
    values = np.empty(len(panels))
    l1 = np.empty(len(panels))
    groups: dict[tuple[float, float], list[int]] = {}
    for i, panel in enumerate(panels):
        groups.setdefault((panel.alpha_lo, panel.alpha_hi), []).append(i)

    for (alpha_lo, alpha_hi), idx in groups.items():
        t, w = panel_rule(m, alpha_lo, alpha_hi)
        lo = np.array([panels[i].lo for i in idx])
        hi = np.array([panels[i].hi for i in idx])
        half = 0.5 * (hi - lo)
        x = lo[:, None] + (t[None, :] + 1.0) * half[:, None]
        lo_b = np.broadcast_to(lo[:, None], x.shape)
        hi_b = np.broadcast_to(hi[:, None], x.shape)
        fx = np.broadcast_to(np.asarray(integrand(x, lo_b, hi_b), dtype=float), x.shape)
        scale = half ** (1.0 + alpha_lo + alpha_hi)
        values[idx] = scale * (fx @ w)
        l1[idx] = scale * (np.abs(fx) @ w)
    return values, l1


def adaptive_panels(
    integrand: PanelIntegrand,
    panels: list[Panel],
    rel_tol: float,
    abs_tol: float = 0.0,
    nodes: int | None = None,
    max_panels: int | None = None,
    max_levels: int | None = None,
) -> QuadratureResult:
    """Globally adaptive composite quadrature over an initial panel list.

    Args:
        integrand: Vectorized integrand (see PanelIntegrand); must not include the
            endpoint factors the panels carry
        panels: Initial panels
        rel_tol: Relative tolerance on the total
        abs_tol: Absolute tolerance floor
        nodes: Points per panel for the low-order rule
        max_panels: Panel cap
        max_levels: Bisection depth cap

    Returns:
        QuadratureResult with value, error estimate and final panel count

    Raises:
        QuadratureNonConvergence: a cap is hit before the tolerance is met
    """
    if not panels:
        return QuadratureResult(0.0, 0.0, 0)
    m = nodes or ortho_config.quadrature.nodes_per_panel
    max_panels = max_panels or ortho_config.quadrature.max_panels
    max_levels = max_levels or ortho_config.quadrature.max_levels

    done: list[tuple[Panel, float, float, float]] = []
    active = list(panels)
    while True:
        low, _ = _apply_rule(integrand, active, m)
        high, l1 = _apply_rule(integrand, active, 2 * m)
        err = np.abs(high - low)
        records = done + [(p, v, e, a) for p, v, e, a in zip(active, high, err, l1)]
        records.sort(key=lambda r: (r[0].lo, r[0].hi))

        total = math.fsum(r[1] for r in records)
        total_err = math.fsum(r[2] for r in records)
        total_l1 = math.fsum(r[3] for r in records)
        tol = max(rel_tol * abs(total), abs_tol, 100.0 * np.finfo(float).eps * total_l1)
        if not math.isfinite(total):
            raise QuadratureNonConvergence(f"non-finite integral estimate over {len(records)} panels")
        if total_err <= tol:
            logger.debug(f"Quadrature converged: value={total!r} err={total_err:.3e} panels={len(records)}")
            return QuadratureResult(total, total_err, len(records))

        share = tol / len(records)
        done, active = [], []
        for panel, value, e, a in records:
            if e > share:
                if panel.depth >= max_levels:
                    raise QuadratureNonConvergence(
                        f"refinement depth {max_levels} reached on [{panel.lo!r}, {panel.hi!r}] (error {total_err:.3e} > {tol:.3e})")
                active.extend(panel.split())
            else:
                done.append((panel, value, e, a))
        if len(done) + len(active) > max_panels:
            raise QuadratureNonConvergence(f"panel cap {max_panels} exceeded (error {total_err:.3e} > {tol:.3e})")


def uniform_panels(a: float, b: float, count: int) -> list[Panel]:
    """Split [a, b] into ``count`` equal panels without singular ends."""
    edges = np.linspace(a, b, count + 1)
    return [Panel(float(lo), float(hi)) for lo, hi in zip(edges[:-1], edges[1:])]


def _measure_panels(spec: MeasureSpec) -> list[Panel]:
    return [Panel(p.lo, p.hi, p.alpha_lo, p.alpha_hi) for p in spec.pieces()]


def _weighted(spec: MeasureSpec, f: Callable[[NDArray[np.float64]], NDArray[np.float64] | float]) -> PanelIntegrand:
    def integrand(x: NDArray[np.float64], lo: NDArray[np.float64], hi: NDArray[np.float64]) -> NDArray[np.float64]:
        # Factors sitting on a panel end are handled by the Gauss-Jacobi rule
        w = spec.level(x)
        for fac in spec.factors():
            on_end = (lo == fac.point) | (hi == fac.point)
            w = w * np.where(on_end, 1.0, np.abs(x - fac.point) ** fac.exponent)
        return np.asarray(f(x), dtype=float) * w

    return integrand


def integrate_details(
    spec: MeasureSpec,
    f: Callable[[NDArray[np.float64]], NDArray[np.float64] | float],
    rel_tol: float | None = None,
    abs_tol: float = 0.0,
) -> QuadratureResult:
    """Integrate f against mu; see integrate."""
    rel_tol = ortho_config.quadrature.moment_rel_tol if rel_tol is None else rel_tol
    if not rel_tol > 0.0:
        raise ValueError(f"rel_tol must be positive, got {rel_tol}")
    return adaptive_panels(_weighted(spec, f), _measure_panels(spec), rel_tol, abs_tol)


def integrate(
    spec: MeasureSpec,
    f: Callable[[NDArray[np.float64]], NDArray[np.float64] | float],
    rel_tol: float | None = None,
) -> float:
    """Return the integral of f with respect to mu.

    The support is split at singular points and breakpoints; panels touching a
    singular point use Gauss-Jacobi rules for its factor.

    Args:
        spec: Validated measure
        f: Vectorized function of x (may return a scalar for constants)
        rel_tol: Relative tolerance (default ``[quadrature] moment_rel_tol``)

    Raises:
        QuadratureNonConvergence: refinement exceeded its cap
    """
    return integrate_details(spec, f, rel_tol).value


def discretize(spec: MeasureSpec, nodes: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Discrete measure with ``nodes`` Gauss(-Jacobi) points per smooth piece of the support.

    The result integrates p(x) * w(x) exactly for polynomials p of degree < 2 * nodes
    on every piece whose remaining weight factors are constant.
    """
    xs, ws = [], []
    for piece in spec.pieces():
        t, w = panel_rule(nodes, piece.alpha_lo, piece.alpha_hi)
        half = 0.5 * (piece.hi - piece.lo)
        x = piece.lo + (t + 1.0) * half
        lo = np.full_like(x, piece.lo)
        hi = np.full_like(x, piece.hi)
        regular = _weighted(spec, lambda z: 1.0)(x, lo, hi)
        xs.append(x)
        ws.append(w * half ** (1.0 + piece.alpha_lo + piece.alpha_hi) * regular)
    return np.concatenate(xs), np.concatenate(ws)
