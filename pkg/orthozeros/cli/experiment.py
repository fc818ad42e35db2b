"""
Experiment configuration for the command line.

An experiment file has an ``[experiment]`` section validated against
``data/config/experiment.spec`` and an optional ``[measure]`` section in the
measure-file layout. Command-line flags override file values; unset numeric
values fall back to the settings file.
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path

from configobj import ConfigObj, ConfigObjError
from validate import Validator

from orthozeros.config.manager import config as ortho_config
from orthozeros.errors import ConfigParseError, OrthoZerosError
from orthozeros.measure.spec import MeasureSpec, load_measure, measure_from_section, measure_to_dict
from orthozeros.utils.helpers import get_data_path

logger = logging.getLogger(__name__)

MODES = ('expected-zeros', 'monte-carlo', 'universality', 'equilibrium', 'kac', 'compare', 'recurrence')
THREADS_ENV_VAR = 'ORTHO_ZEROS_THREADS'


@dataclass(frozen=True)
class ExperimentConfig:
    """A fully resolved experiment: no value is left to a default."""

    mode: str
    measure_source: str
    measure: MeasureSpec
    n: int
    n_sweep: tuple[int, ...]
    interval: tuple[float, float] | None
    trials: int
    sigma: float
    seed: int
    rel_tol: float
    threads: int
    out: str
    bins: int
    x: float
    pairs: tuple[tuple[int, int], ...]
    sinc_radius: float
    sinc_grid: int
    samples: int
    approximate: bool
    weighted: bool
    records: bool

    @property
    def degrees(self) -> tuple[int, ...]:
        """The n-sweep, or (n,) when no sweep is given."""
        return self.n_sweep or (self.n,)

    def window(self) -> tuple[float, float]:
        """The configured interval, or the support hull."""
        return self.interval if self.interval is not None else self.measure.hull


def resolve_threads(flag: int | None) -> int:
    """Thread count from the flag, else ``ORTHO_ZEROS_THREADS``, else ``[montecarlo] threads``.

    Raises:
        ConfigParseError: the environment variable is not a positive integer
    """
    if flag is not None:
        if flag < 1:
            raise ConfigParseError(f"--threads must be at least 1, got {flag}")
        return flag
    if env := os.environ.get(THREADS_ENV_VAR):
        try:
            threads = int(env)
        except ValueError as e:
            raise ConfigParseError(f"{THREADS_ENV_VAR}={env!r} is not an integer") from e
        if threads < 1:
            raise ConfigParseError(f"{THREADS_ENV_VAR} must be at least 1, got {threads}")
        return threads
    return ortho_config.montecarlo.threads


def _read(source: Path | str | list[str] | None) -> ConfigObj:
    spec = str(get_data_path('config', 'experiment.spec'))
    try:
        if source is None:
            return ConfigObj(configspec=spec)
        if isinstance(source, (str, Path)):
            return ConfigObj(str(source), configspec=spec, file_error=True)
        return ConfigObj(source, configspec=spec)
    except (ConfigObjError, OSError) as e:
        raise ConfigParseError(f"cannot read experiment config {source}: {e}") from e


def _measure(cfg: ConfigObj, source: str) -> MeasureSpec:
    if 'measure' not in cfg.sections:
        return load_measure(source)
    section = ConfigObj(cfg['measure'].dict(), configspec=str(get_data_path('config', 'measure.spec')))
    result = section.validate(Validator(), preserve_errors=True)
    if result is not True:
        raise ConfigParseError(f"invalid [measure] section: {result}")
    return measure_from_section(section)


def _pairs(flat: list[int]) -> tuple[tuple[int, int], ...]:
    if len(flat) % 2:
        raise ConfigParseError(f"pairs need an even number of entries, got {flat}")
    pairs = tuple((int(flat[i]), int(flat[i + 1])) for i in range(0, len(flat), 2))
    for pair in pairs:
        if not set(pair) <= {0, 1}:
            raise ConfigParseError(f"derivative orders must be 0 or 1, got {pair}")
    return pairs


def parse_experiment(source: Path | str | list[str] | None = None, overrides: dict | None = None) -> ExperimentConfig:
    """Parse and resolve an experiment.

    Args:
        source: Experiment file path, INI lines, or None for defaults only
        overrides: ``[experiment]`` keys set on the command line (None values ignored)

    Returns:
        Resolved ExperimentConfig

    Raises:
        ConfigParseError: syntax, validation or consistency errors
    """
    cfg = _read(source)
    if 'experiment' not in cfg:
        cfg['experiment'] = {}
    for key, value in (overrides or {}).items():
        if value is not None:
            cfg['experiment'][key] = value

    result = cfg.validate(Validator(), preserve_errors=True)
    if result is not True:
        raise ConfigParseError(f"invalid experiment config: {result}")
    exp = cfg['experiment']

    n_sweep = tuple(int(n) for n in exp['n_sweep'])
    if any(b <= a for a, b in zip(n_sweep[:-1], n_sweep[1:])):
        raise ConfigParseError(f"n_sweep must be strictly increasing, got {list(n_sweep)}")
    if any(n < 1 for n in n_sweep):
        raise ConfigParseError(f"n_sweep entries must be positive, got {list(n_sweep)}")

    interval = None
    if exp['interval']:
        if len(exp['interval']) != 2 or exp['interval'][0] > exp['interval'][1]:
            raise ConfigParseError(f"interval must be 'a,b' with a <= b, got {exp['interval']}")
        interval = (float(exp['interval'][0]), float(exp['interval'][1]))

    sigma = ortho_config.montecarlo.sigma if exp['sigma'] is None else float(exp['sigma'])
    rel_tol = ortho_config.quadrature.rel_tol if exp['rel_tol'] is None else float(exp['rel_tol'])
    if not sigma > 0.0:
        raise ConfigParseError(f"sigma must be positive, got {sigma}")
    if not rel_tol > 0.0:
        raise ConfigParseError(f"rel_tol must be positive, got {rel_tol}")

    try:
        measure = _measure(cfg, exp['measure'])
    except ConfigParseError:
        raise
    except OrthoZerosError as e:
        raise ConfigParseError(f"invalid measure: {e}") from e

    return ExperimentConfig(
        mode=exp['mode'],
        measure_source=exp['measure'],
        measure=measure,
        n=int(exp['n']),
        n_sweep=n_sweep,
        interval=interval,
        trials=ortho_config.montecarlo.trials if exp['trials'] is None else int(exp['trials']),
        sigma=sigma,
        seed=ortho_config.montecarlo.seed if exp['seed'] is None else int(exp['seed']),
        rel_tol=rel_tol,
        threads=resolve_threads(exp['threads']),
        out=exp['out'],
        bins=int(exp['bins']),
        x=float(exp['x']),
        pairs=_pairs(exp['pairs']),
        sinc_radius=float(exp['sinc_radius']),
        sinc_grid=int(exp['sinc_grid']),
        samples=int(exp['samples']),
        approximate=bool(exp['approximate']),
        weighted=bool(exp['weighted']),
        records=bool(exp['records']),
    )


def dump_experiment(cfg: ExperimentConfig) -> list[str]:
    """Normalized INI lines; parse_experiment(dump_experiment(cfg)) == cfg."""
    out = ConfigObj()
    out['experiment'] = {
        'mode': cfg.mode,
        'measure': cfg.measure_source,
        'n': cfg.n,
        'n_sweep': list(cfg.n_sweep),
        'interval': list(cfg.interval) if cfg.interval is not None else [],
        'trials': cfg.trials,
        'sigma': cfg.sigma,
        'seed': cfg.seed,
        'rel_tol': cfg.rel_tol,
        'threads': cfg.threads,
        'out': cfg.out,
        'bins': cfg.bins,
        'x': cfg.x,
        'pairs': [v for pair in cfg.pairs for v in pair],
        'sinc_radius': cfg.sinc_radius,
        'sinc_grid': cfg.sinc_grid,
        'samples': cfg.samples,
        'approximate': cfg.approximate,
        'weighted': cfg.weighted,
        'records': cfg.records,
    }
    out['measure'] = measure_to_dict(cfg.measure)
    return out.write()
