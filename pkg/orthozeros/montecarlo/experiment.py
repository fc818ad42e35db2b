"""
Monte Carlo zero counting.
"""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from orthozeros.config.manager import config as ortho_config
from orthozeros.errors import OrthoZerosError, TrialError
from orthozeros.measure.spec import MeasureSpec
from orthozeros.montecarlo.sampling import sample_polynomial, trial_generator
from orthozeros.montecarlo.zeros import (
    Window,
    find_real_zeros,
    find_real_zeros_gridscan,
    find_zeros,
    in_window,
    real_zeros_from,
    strip_zeros,
)
from orthozeros.orthopoly.recurrence import RecurrenceTable

logger = logging.getLogger(__name__)

DEFAULT_BINS = 20
_MAX_RESAMPLES = 16


@dataclass(frozen=True)
class TrialRecord:
    trial_id: int
    coefficients: NDArray[np.float64]
    real_zeros: NDArray[np.float64]
    count_in_window: int
    strip_zeros: NDArray[np.float64] = field(default_factory=lambda: np.empty(0))


@dataclass(frozen=True)
class Histogram:
    """Bin edges and masses; bins are [lo, hi) except the last, which is closed."""

    edges: NDArray[np.float64]
    masses: NDArray[np.float64]

    @property
    def total(self) -> float:
        return math.fsum(self.masses)

    def mass_between(self, lo: float, hi: float) -> float:
        """Total mass of the bins lying inside [lo, hi]."""
        inside = (self.edges[:-1] >= lo) & (self.edges[1:] <= hi)
        return math.fsum(self.masses[inside])

    def rows(self) -> list[tuple[float, float, float]]:
        return [(float(lo), float(hi), float(m)) for lo, hi, m in zip(self.edges[:-1], self.edges[1:], self.masses)]


@dataclass(frozen=True)
class ZeroCountStats:
    """Summary of a Monte Carlo run.

    ``histogram`` bins the real parts of all zeros in the strip
    |Im z| <= strip_height (the counting-measure limit is nu_K);
    ``real_histogram`` bins real zeros only.
    ``component_shares`` is the fraction of the strip zeros whose real part
    lies in each support interval, in support order.
    """

    trials: int
    n: int
    window: Window
    sigma: float
    seed: int
    mean_count: float
    std_error: float
    histogram: Histogram
    real_histogram: Histogram
    counts: tuple[int, ...]
    component_shares: tuple[float, ...] = ()
    records: tuple[TrialRecord, ...] = ()

    def as_dict(self) -> dict:
        return {
            'trials': self.trials, 'n': self.n, 'a': self.window[0], 'b': self.window[1],
            'sigma': self.sigma, 'seed': self.seed, 'mean_count': self.mean_count, 'std_error': self.std_error,
            'histogram_total': self.histogram.total, 'real_histogram_total': self.real_histogram.total,
        }


def _edges(bins: int | ArrayLike, window: Window) -> NDArray[np.float64]:
    if isinstance(bins, (int, np.integer)):
        if bins < 1:
            raise ValueError(f"bins must be positive, got {bins}")
        a, b = window
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValueError("a bin count needs a finite window")
        return np.linspace(a, b, int(bins) + 1)
    edges = np.asarray(bins, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0.0):
        raise ValueError("bin edges must be a strictly increasing sequence of at least two values")
    return edges


def zero_histogram(zeros: ArrayLike, bins: int | ArrayLike, n: int, trials: int, window: Window = (-1.0, 1.0)) -> Histogram:
    """Zeros per trial per degree in each bin.

    Args:
        zeros: Pooled zeros (or real parts) from all trials
        bins: Bin edges, or a bin count over ``window``
        n: Degree
        trials: Number of trials pooled
    """
    edges = _edges(bins, window)
    counts, _ = np.histogram(np.asarray(zeros, dtype=float), bins=edges)
    return Histogram(edges, counts / float(n * trials))


def component_shares(zeros: ArrayLike, support: Sequence[tuple[float, float]]) -> tuple[float, ...]:
    """Fraction of ``zeros`` falling in each closed interval of ``support``."""
    zeros = np.asarray(zeros, dtype=float)
    if zeros.size == 0:
        return tuple(0.0 for _ in support)
    return tuple(int(np.count_nonzero((zeros >= lo) & (zeros <= hi))) / zeros.size for lo, hi in support)


def _resolve_threads(threads: int | None) -> int:
    threads = ortho_config.montecarlo.threads if threads is None else threads
    if threads < 1:
        raise ValueError(f"threads must be at least 1, got {threads}")
    return threads


def _run_trial(
    table: RecurrenceTable, n: int, sigma: float, seed: int, trial_id: int, window: Window, strip_height: float,
) -> TrialRecord:
    rng = trial_generator(seed, trial_id)
    try:
        for _ in range(_MAX_RESAMPLES):
            c = sample_polynomial(table, n, sigma, rng)
            if c[-1] != 0.0:
                break
            logger.warning(f"Trial {trial_id}: zero leading coefficient, resampling")
        eigenvalues = find_zeros(table, c)
        real = real_zeros_from(table, c, eigenvalues)
    except TrialError:
        raise
    except (OrthoZerosError, np.linalg.LinAlgError, FloatingPointError) as e:
        raise TrialError(trial_id, str(e)) from e

    count = int(np.count_nonzero(in_window(real, window)))
    if real.size > n:
        raise TrialError(trial_id, f"{real.size} real zeros exceed degree {n}")
    return TrialRecord(trial_id, c, real, count, strip_zeros(eigenvalues, window, strip_height))


def run_experiment(
    table: RecurrenceTable,
    spec: MeasureSpec,
    n: int,
    trials: int | None = None,
    window: Window | None = None,
    sigma: float | None = None,
    seed: int | None = None,
    threads: int | None = None,
    bins: int | Sequence[float] = DEFAULT_BINS,
    strip_height: float | None = None,
    keep_records: bool = False,
) -> ZeroCountStats:
    """Count real zeros of ``trials`` random degree-n expansions.

    Trial t draws its coefficients from its own substream of ``seed``; the
    result is bit-identical for any thread count.

    Args:
        table: Recurrence table with n_max >= n
        spec: Measure of the table (default window is its support hull)
        n: Degree
        trials: Number of trials (default ``[montecarlo] trials``)
        window: Counting window (a, b)
        sigma: Coefficient standard deviation (default ``[montecarlo] sigma``)
        seed: 64-bit seed (default ``[montecarlo] seed``)
        threads: Worker threads (default ``[montecarlo] threads``)
        bins: Histogram bin edges or bin count over the window
        strip_height: Half-height of the strip for the all-zeros histogram
        keep_records: Keep every TrialRecord in the result

    Returns:
        ZeroCountStats

    Raises:
        TrialError: a trial failed; carries its trial id
    """
    trials = ortho_config.montecarlo.trials if trials is None else trials
    sigma = ortho_config.montecarlo.sigma if sigma is None else sigma
    seed = ortho_config.montecarlo.seed if seed is None else seed
    strip_height = ortho_config.zeros.strip_height if strip_height is None else strip_height
    window = tuple(spec.hull) if window is None else (float(window[0]), float(window[1]))
    threads = _resolve_threads(threads)
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if not sigma > 0.0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    edges = _edges(bins, window)

    logger.info(f"Monte Carlo: n={n} trials={trials} window={window} sigma={sigma} seed={seed} threads={threads}")

    def one(trial_id: int) -> TrialRecord:
        return _run_trial(table, n, sigma, seed, trial_id, window, strip_height)

    if threads == 1:
        records = [one(t) for t in range(trials)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(one, range(trials)))

    counts = np.array([r.count_in_window for r in records], dtype=np.int64)
    mean = float(counts.sum()) / trials
    std_error = float(np.std(counts, ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0

    pooled_real = np.sort(np.concatenate([r.real_zeros for r in records]))
    pooled_strip = np.sort(np.concatenate([r.strip_zeros for r in records]))
    stats = ZeroCountStats(
        trials=trials, n=n, window=window, sigma=sigma, seed=seed, mean_count=mean, std_error=std_error,
        histogram=zero_histogram(pooled_strip, edges, n, trials),
        real_histogram=zero_histogram(pooled_real, edges, n, trials),
        counts=tuple(int(c) for c in counts),
        component_shares=component_shares(pooled_strip, spec.support),
        records=tuple(records) if keep_records else (),
    )
    logger.info(f"Monte Carlo done: mean count {mean!r} +/- {std_error!r}")
    return stats


def oracle_agreement(
    table: RecurrenceTable, n: int, trials: int, window: Window, seed: int, sigma: float = 1.0, zero_tol: float = 1e-8,
) -> float:
    """Fraction of trials where the comrade and grid-scan zero sets agree.

    Agreement means equal counts and every zero within ``zero_tol``.
    Disagreements are logged with their coefficient vectors.
    """
    agree = 0
    for trial_id in range(trials):
        c = sample_polynomial(table, n, sigma, trial_generator(seed, trial_id))
        comrade = find_real_zeros(table, c, window)
        scan = find_real_zeros_gridscan(table, c, window)
        if comrade.size == scan.size and np.all(np.abs(comrade - scan) <= zero_tol * np.maximum(1.0, np.abs(scan))):
            agree += 1
        else:
            logger.info(f"Trial {trial_id}: comrade {comrade.size} zeros, grid scan {scan.size}; c={c.tolist()}")
    return agree / trials
