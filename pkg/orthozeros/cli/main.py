"""
orthozeros command line.

Each subcommand runs one experiment and emits CSV tables plus a JSON summary
(``--out DIR``) or prints its CSV to stdout.
"""

import argparse
import logging
import math
import sys
from collections.abc import Callable, Sequence

import numpy as np

from orthozeros import __version__
from orthozeros.cli.experiment import ExperimentConfig, dump_experiment, parse_experiment
from orthozeros.cli.output import Artifacts, check_writable
from orthozeros.config.manager import config as ortho_config
from orthozeros.equilibrium.measure import EquilibriumMeasure, approximate_density, build
from orthozeros.errors import ConfigParseError, OrthoZerosError, UnsupportedSupportClass
from orthozeros.kacrice.integrals import (
    FULL_LINE,
    expected_zeros_orthopoly,
    kac_asymptote,
    limit_prediction,
    sweep_kac,
)
from orthozeros.kernels.diagonal import sinc_deviation, universality_ratios
from orthozeros.montecarlo.experiment import run_experiment
from orthozeros.orthopoly.recurrence import CSV_COLUMNS, build_recurrence, leading_coeff_growth

logger = logging.getLogger(__name__)
# Seed and version of every run, emitted whatever the configured level
run_logger = logging.getLogger("orthozeros.run")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

SUMMARY = 'summary.json'


def setup_logging(verbosity: int = 0) -> None:
    """Configure logging from the ``[logging]`` settings; each -v lowers the level one step."""
    level = getattr(logging, ortho_config.logging.level, logging.WARNING)
    if verbosity >= 2:
        level = min(level, logging.DEBUG)
    elif verbosity == 1:
        level = min(level, logging.INFO)
    logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=LOG_DATEFMT)
    logging.getLogger().setLevel(level)
    run_logger.setLevel(min(level, logging.INFO))


def _finite(value: float | None) -> float | None:
    if value is None or not math.isfinite(value):
        return None
    return float(value)


def _summary(cfg: ExperimentConfig, results: list[dict], seed: int | None = None, interval: tuple[float, float] | None = None, **extra: object) -> dict:
    interval = cfg.interval if interval is None else interval
    if interval is not None and not all(math.isfinite(v) for v in interval):
        interval = None
    summary = {
        'version': __version__,
        'mode': cfg.mode,
        'measure': {'name': cfg.measure.name, 'support': [list(i) for i in cfg.measure.support]},
        'seed': seed,
        'interval': list(interval) if interval is not None else None,
        'rel_tol': cfg.rel_tol,
        'results': [{k: _finite(v) if isinstance(v, float) else v for k, v in r.items()} for r in results],
    }
    summary.update(extra)
    return summary


def _equilibrium_or_none(cfg: ExperimentConfig) -> EquilibriumMeasure | None:
    try:
        return build(cfg.measure)
    except UnsupportedSupportClass:
        return None


def run_expected_zeros(cfg: ExperimentConfig) -> Artifacts:
    spec, interval = cfg.measure, cfg.window()
    table = build_recurrence(spec, max(cfg.degrees))
    limit = limit_prediction(spec, interval)
    rows, results = [], []
    for n in cfg.degrees:
        r = expected_zeros_orthopoly(table, spec, interval, n, cfg.rel_tol, cfg.weighted, cfg.sigma)
        over_n = r.value / n
        ratio = over_n / limit if limit else None
        rows.append((n, r.a, r.b, r.value, r.est_error, r.panels_used, over_n, limit, ratio))
        results.append({**r.as_dict(), 'value_over_n': over_n, 'limit': limit, 'ratio': ratio})
        logger.info(f"n={n}: E[N] = {r.value!r}, E[N]/n = {over_n!r}")

    artifacts = Artifacts()
    artifacts.add_csv('expected_zeros.csv',
                      ('n', 'a', 'b', 'value', 'est_error', 'panels_used', 'value_over_n', 'limit', 'ratio'), rows)
    artifacts.add_json(SUMMARY, _summary(cfg, results, interval=interval, lower_bound=limit))
    return artifacts


def run_monte_carlo(cfg: ExperimentConfig) -> Artifacts:
    spec, window = cfg.measure, cfg.window()
    table = build_recurrence(spec, cfg.n)
    stats = run_experiment(table, spec, cfg.n, cfg.trials, window, cfg.sigma, cfg.seed, cfg.threads, cfg.bins,
                           keep_records=cfg.records)
    em = _equilibrium_or_none(cfg)

    rows = []
    for (lo, hi, mass), (_, _, real_mass) in zip(stats.histogram.rows(), stats.real_histogram.rows()):
        rows.append((lo, hi, mass, em.mass((lo, hi)) if em else None, real_mass))

    artifacts = Artifacts()
    artifacts.add_csv('histogram.csv', ('bin_lo', 'bin_hi', 'empirical_mass', 'nu_mass', 'real_mass'), rows)
    components = [(lo, hi, share, em.mass((lo, hi)) if em else None)
                  for (lo, hi), share in zip(spec.support, stats.component_shares)]
    artifacts.add_csv('components.csv', ('component_lo', 'component_hi', 'strip_share', 'nu_mass'), components)
    if cfg.records:
        artifacts.add_csv('counts.csv', ('trial_id', 'count'), enumerate(stats.counts))
    artifacts.add_json(SUMMARY, _summary(cfg, [stats.as_dict()], seed=cfg.seed, interval=window))
    return artifacts


def run_universality(cfg: ExperimentConfig) -> Artifacts:
    spec = cfg.measure
    table = build_recurrence(spec, max(cfg.degrees))
    rows, results = [], []
    for n in cfg.degrees:
        deviation = sinc_deviation(table, spec, cfg.x, n, cfg.sinc_radius, cfg.sinc_grid)
        for (j, k), (ratio, target) in zip(cfg.pairs, universality_ratios(table, spec, cfg.x, n, cfg.pairs)):
            rows.append((n, cfg.x, j, k, ratio, target, abs(ratio - target), deviation))
            results.append({'n': n, 'x': cfg.x, 'j': j, 'k': k, 'ratio': ratio, 'target': target, 'sinc_deviation': deviation})

    artifacts = Artifacts()
    artifacts.add_csv('universality.csv', ('n', 'x', 'j', 'k', 'ratio', 'target', 'abs_error', 'sinc_deviation'), rows)
    artifacts.add_json(SUMMARY, _summary(cfg, results))
    return artifacts


def run_equilibrium(cfg: ExperimentConfig) -> Artifacts:
    spec = cfg.measure
    em = _equilibrium_or_none(cfg)
    if em is None and not cfg.approximate:
        raise UnsupportedSupportClass(f"no closed-form equilibrium measure for {spec.support}; pass --approximate")

    lo, hi = spec.hull
    xs = np.linspace(lo, hi, cfg.samples)
    exact = em.density(xs) if em else [None] * xs.size
    approx = approximate_density(build_recurrence(spec, cfg.n), spec, xs, cfg.n) if cfg.approximate else [None] * xs.size

    a, b = cfg.window()
    edges = np.linspace(a, b, cfg.bins + 1)
    masses = [(p, q, em.mass((p, q)) if em else None) for p, q in zip(edges[:-1], edges[1:])]

    artifacts = Artifacts()
    artifacts.add_csv('equilibrium_density.csv', ('x', 'density', 'approximate_density'),
                      [(x, d, ad) for x, d, ad in zip(xs, exact, approx)])
    artifacts.add_csv('equilibrium_mass.csv', ('bin_lo', 'bin_hi', 'nu_mass'), masses)
    result = {'support_class': em.support_class if em else 'approximate',
              'capacity': em.capacity if em else None,
              'total_mass': em.mass((lo, hi)) if em else None,
              'approximate': cfg.approximate}
    artifacts.add_json(SUMMARY, _summary(cfg, [result], interval=(a, b)))
    return artifacts


def run_kac(cfg: ExperimentConfig) -> Artifacts:
    interval = cfg.interval if cfg.interval is not None else FULL_LINE
    rows, results = [], []
    for r in sweep_kac(cfg.degrees, interval, cfg.rel_tol):
        asymptote = kac_asymptote(r.n) if r.n > 1 else None
        ratio = r.value / asymptote if asymptote else None
        rows.append((r.n, r.a, r.b, r.value, r.est_error, r.panels_used, asymptote, ratio))
        results.append({**r.as_dict(), 'a': _finite(r.a), 'b': _finite(r.b), 'asymptote': asymptote, 'ratio': ratio})

    artifacts = Artifacts()
    artifacts.add_csv('kac.csv', ('n', 'a', 'b', 'value', 'est_error', 'panels_used', 'asymptote', 'ratio'), rows)
    artifacts.add_json(SUMMARY, _summary(cfg, results, interval=interval))
    return artifacts


def run_compare(cfg: ExperimentConfig) -> Artifacts:
    spec, window = cfg.measure, cfg.window()
    table = build_recurrence(spec, max(cfg.degrees))
    rows, results = [], []
    for n in cfg.degrees:
        quad = expected_zeros_orthopoly(table, spec, window, n, cfg.rel_tol)
        stats = run_experiment(table, spec, n, cfg.trials, window, cfg.sigma, cfg.seed, cfg.threads, cfg.bins)
        z = (stats.mean_count - quad.value) / stats.std_error if stats.std_error > 0.0 else None
        rows.append((n, window[0], window[1], quad.value, stats.mean_count, stats.std_error, z))
        results.append({'n': n, 'a': window[0], 'b': window[1], 'quadrature_value': quad.value,
                        'mc_mean': stats.mean_count, 'mc_std_error': stats.std_error, 'z_score': z})
        logger.info(f"n={n}: quadrature {quad.value!r}, Monte Carlo {stats.mean_count!r} (z={z})")

    artifacts = Artifacts()
    artifacts.add_csv('compare.csv', ('n', 'a', 'b', 'quadrature_value', 'mc_mean', 'mc_std_error', 'z_score'), rows)
    artifacts.add_json(SUMMARY, _summary(cfg, results, seed=cfg.seed, interval=window))
    return artifacts


def run_recurrence(cfg: ExperimentConfig) -> Artifacts:
    table = build_recurrence(cfg.measure, cfg.n)
    em = _equilibrium_or_none(cfg)
    result = {'n_max': table.n_max, 'mu0': table.mu0,
              'leading_coeff_growth': leading_coeff_growth(table, table.n_max),
              'inverse_capacity': 1.0 / em.capacity if em else None}

    artifacts = Artifacts()
    artifacts.add_csv('recurrence.csv', CSV_COLUMNS, table.rows())
    artifacts.add_json(SUMMARY, _summary(cfg, [result]))
    return artifacts


RUNNERS: dict[str, Callable[[ExperimentConfig], Artifacts]] = {
    'expected-zeros': run_expected_zeros,
    'monte-carlo': run_monte_carlo,
    'universality': run_universality,
    'equilibrium': run_equilibrium,
    'kac': run_kac,
    'compare': run_compare,
    'recurrence': run_recurrence,
}


def run(cfg: ExperimentConfig) -> Artifacts:
    """Run one experiment and return its artifacts (nothing is written here)."""
    run_logger.info(f"orthozeros {__version__}: mode={cfg.mode} measure={cfg.measure.name} seed={cfg.seed}")
    return RUNNERS[cfg.mode](cfg)


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(',') if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from e


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from e


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--measure", "-m", default=None, help="Built-in measure name or measure file (default: legendre)")
    common.add_argument("--n", type=int, default=None, help="Degree")
    common.add_argument("--n-sweep", type=_int_list, default=None, help="Strictly increasing degrees, e.g. 25,50,100")
    common.add_argument("--interval", type=_float_list, default=None, help="Window a,b (use --interval=-1,1 for negative a)")
    common.add_argument("--trials", type=int, default=None, help="Monte Carlo trials (default: from settings)")
    common.add_argument("--sigma", type=float, default=None, help="Coefficient standard deviation (default: from settings)")
    common.add_argument("--seed", type=int, default=None, help="64-bit seed (default: from settings)")
    common.add_argument("--rel-tol", type=float, default=None, help="Quadrature relative tolerance (default: from settings)")
    common.add_argument("--threads", type=int, default=None, help="Worker threads (default: $ORTHO_ZEROS_THREADS or settings)")
    common.add_argument("--bins", type=int, default=None, help="Histogram bins over the window")
    common.add_argument("--out", "-o", default=None, help="Output directory (default: print CSV to stdout)")
    common.add_argument("--config", "-c", default=None, help="Experiment file")
    common.add_argument("--settings", default=None, help="Settings file (overrides $ORTHO_ZEROS_CONFIG)")
    common.add_argument("--dump-config", action="store_true", help="Print the resolved experiment and exit")
    common.add_argument("--verbose", "-v", action="count", default=0, help="More logging (-vv for debug)")

    parser = argparse.ArgumentParser(prog="orthozeros", description="Expected real zeros of random orthogonal polynomials")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="mode", required=True)

    sp = sub.add_parser("expected-zeros", parents=[common], help="Kac-Rice expected zero counts")
    sp.add_argument("--weighted", action="store_true", default=None, help="Use the weighted-kernel form of the integrand")

    sp = sub.add_parser("monte-carlo", parents=[common], help="Simulated zero counts and histograms")
    sp.add_argument("--records", action="store_true", default=None, help="Also write per-trial counts")

    sp = sub.add_parser("universality", parents=[common], help="Kernel ratios against the sine kernel")
    sp.add_argument("--x", type=float, default=None, help="Interior point")
    sp.add_argument("--pairs", type=_int_list, default=None, help="Flat derivative orders j,k,... (default 0,0,0,1,1,0,1,1)")
    sp.add_argument("--sinc-radius", type=float, default=None, help="Half-width of the (u, v) grid")
    sp.add_argument("--sinc-grid", type=int, default=None, help="Points per axis of the (u, v) grid")

    sp = sub.add_parser("equilibrium", parents=[common], help="Equilibrium density samples and masses")
    sp.add_argument("--samples", type=int, default=None, help="Density sample points")
    sp.add_argument("--approximate", action="store_true", default=None, help="Add (1/n) weighted Christoffel function column (approximate)")

    sub.add_parser("kac", parents=[common], help="Kac's monomial ensemble")
    sub.add_parser("compare", parents=[common], help="Quadrature against Monte Carlo")
    sub.add_parser("recurrence", parents=[common], help="Dump the recurrence table")
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    keys = ('measure', 'n', 'n_sweep', 'interval', 'trials', 'sigma', 'seed', 'rel_tol', 'threads', 'out', 'bins',
            'x', 'pairs', 'sinc_radius', 'sinc_grid', 'samples', 'approximate', 'weighted', 'records')
    overrides = {key: getattr(args, key, None) for key in keys}
    overrides['mode'] = args.mode
    return overrides


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.settings:
        ortho_config.reload(args.settings)
    setup_logging(args.verbose)

    try:
        cfg = parse_experiment(args.config, _overrides(args))
    except ConfigParseError as e:
        logger.error(f"Configuration error: {e}")
        print(f"orthozeros: {e}", file=sys.stderr)
        return EXIT_CONFIG

    if args.dump_config:
        print('\n'.join(dump_experiment(cfg)))
        return EXIT_OK

    try:
        if cfg.out:
            check_writable(cfg.out)
        artifacts = run(cfg)
    except (ConfigParseError, ValueError) as e:
        logger.error(f"Invalid experiment: {e}")
        print(f"orthozeros: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OrthoZerosError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"orthozeros: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_NUMERICAL

    artifacts.emit(cfg.out, sys.stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
