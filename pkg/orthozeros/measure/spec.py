"""
Orthogonality measures with compact support on the real line.

A measure is a support (finite union of disjoint closed intervals) plus a
weight: either a classical Jacobi weight on a single interval or a generalized
Jacobi weight v(x) * prod |x - x_j|^alpha_j with piecewise-constant v > 0.
Specs are parsed from configobj INI files validated against
``data/config/measure.spec``.
"""

import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike, NDArray
from configobj import ConfigObj, ConfigObjError, Section
from validate import Validator

from orthozeros.errors import (
    ConfigParseError,
    ExponentOutOfRange,
    InvalidInterval,
    OverlappingIntervals,
    SingularPointOutsideSupport,
    UnsupportedSpec,
)
from orthozeros.utils.helpers import get_data_path

logger = logging.getLogger(__name__)

# Relative tolerance for "point lies on the support" and symmetry checks
_POINT_TOL = 1e-12


@dataclass(frozen=True)
class JacobiWeight:
    """Classical Jacobi weight (1 - t)^alpha (1 + t)^beta, t the interval mapped to [-1, 1]."""

    alpha: float = 0.0
    beta: float = 0.0


@dataclass(frozen=True)
class SingularFactor:
    """Factor |x - point|^exponent of a generalized Jacobi weight."""

    point: float
    exponent: float


@dataclass(frozen=True)
class GeneralizedJacobiWeight:
    """v(x) * prod |x - x_j|^alpha_j with v constant between breakpoints.

    ``levels`` has one positive value per piece: levels[k] applies between
    breakpoints[k-1] and breakpoints[k].
    """

    singular: tuple[SingularFactor, ...] = ()
    breakpoints: tuple[float, ...] = ()
    levels: tuple[float, ...] = (1.0,)


@dataclass(frozen=True)
class Piece:
    """A smooth stretch of the support; exponents of the factors sitting on its ends."""

    lo: float
    hi: float
    alpha_lo: float = 0.0
    alpha_hi: float = 0.0


@dataclass(frozen=True)
class MeasureSpec:
    """Orthogonality measure: support intervals plus weight description."""

    support: tuple[tuple[float, float], ...]
    weight: JacobiWeight | GeneralizedJacobiWeight = field(default_factory=GeneralizedJacobiWeight)
    name: str = ''

    @property
    def is_classical(self) -> bool:
        return isinstance(self.weight, JacobiWeight)

    @property
    def hull(self) -> tuple[float, float]:
        """Convex hull of the support."""
        return self.support[0][0], self.support[-1][1]

    def factors(self) -> tuple[SingularFactor, ...]:
        """Singular factors, with a classical Jacobi weight rewritten as two endpoint factors."""
        if isinstance(self.weight, JacobiWeight):
            lo, hi = self.support[0]
            out = []
            if self.weight.beta != 0.0:
                out.append(SingularFactor(lo, self.weight.beta))
            if self.weight.alpha != 0.0:
                out.append(SingularFactor(hi, self.weight.alpha))
            return tuple(out)
        return self.weight.singular

    def _levels(self) -> tuple[tuple[float, ...], tuple[float, ...]]:
        if isinstance(self.weight, JacobiWeight):
            lo, hi = self.support[0]
            return (), ((2.0 / (hi - lo)) ** (self.weight.alpha + self.weight.beta),)
        return self.weight.breakpoints, self.weight.levels

    def contains(self, x: ArrayLike) -> NDArray[np.bool_]:
        """True where x lies in the (closed) support."""
        x = np.asarray(x, dtype=float)
        inside = np.zeros(x.shape, dtype=bool)
        for lo, hi in self.support:
            inside |= (x >= lo) & (x <= hi)
        return inside

    def level(self, x: ArrayLike) -> NDArray[np.float64]:
        """The piecewise-constant factor v(x) (ignores the support)."""
        breakpoints, levels = self._levels()
        idx = np.searchsorted(np.asarray(breakpoints, dtype=float), np.asarray(x, dtype=float), side='right')
        return np.asarray(levels, dtype=float)[idx]

    def density(self, x: ArrayLike, exclude: tuple[float, ...] = ()) -> NDArray[np.float64]:
        """mu'(x), zero off the support.

        Args:
            x: Evaluation points
            exclude: Singular points whose factors are left out (used by panel rules
                that integrate those factors exactly)
        """
        x = np.asarray(x, dtype=float)
        w = self.level(x)
        for factor in self.factors():
            if factor.point in exclude:
                continue
            with np.errstate(divide='ignore'):
                w = w * np.abs(x - factor.point) ** factor.exponent
        return np.where(self.contains(x), w, 0.0)

    def singular_at(self, x: float) -> bool:
        """True when a singular factor (nonzero exponent) sits at x."""
        scale = max(1.0, abs(x))
        return any(abs(f.point - x) <= _POINT_TOL * scale for f in self.factors())

    def pieces(self) -> list[Piece]:
        """Split the support at singular points and breakpoints."""
        exponents = {f.point: f.exponent for f in self.factors()}
        breakpoints, _ = self._levels()
        cuts = set(exponents) | set(breakpoints)
        out = []
        for lo, hi in self.support:
            inner = sorted(c for c in cuts if lo < c < hi)
            ends = [lo, *inner, hi]
            for p, q in zip(ends[:-1], ends[1:]):
                out.append(Piece(p, q, exponents.get(p, 0.0), exponents.get(q, 0.0)))
        return out

    def is_symmetric(self) -> bool:
        """True when support and weight are both symmetric about the hull midpoint."""
        lo, hi = self.hull
        center = 0.5 * (lo + hi)
        tol = _POINT_TOL * max(1.0, hi - lo)

        def mirrored(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
            return sorted((2 * center - p, v) for p, v in points)

        spans = [(a, b) for a, b in self.support]
        mirror = sorted((2 * center - b, 2 * center - a) for a, b in spans)
        if any(abs(a - c) > tol or abs(b - d) > tol for (a, b), (c, d) in zip(spans, mirror)):
            return False

        if isinstance(self.weight, JacobiWeight):
            return self.weight.alpha == self.weight.beta

        factors = sorted((f.point, f.exponent) for f in self.factors())
        if any(abs(p - q) > tol or e != g for (p, e), (q, g) in zip(factors, mirrored(factors))):
            return False
        # v must take mirrored values about the center
        probe = np.array([lo + (hi - lo) * t for t in (0.03, 0.11, 0.29, 0.41, 0.47)])
        return bool(np.allclose(self.level(probe), self.level(2 * center - probe), rtol=0.0, atol=0.0))


def validate(spec: MeasureSpec) -> MeasureSpec:
    """Check the hypotheses on a measure and return its normalized form.

    Intervals are sorted and singular points deduplicated (repeated points have
    their exponents added, zero exponents are dropped).

    Raises:
        InvalidInterval: an interval with l >= r or non-finite ends
        OverlappingIntervals: intervals that intersect or touch
        ExponentOutOfRange: an exponent <= -1
        SingularPointOutsideSupport: a factor located off the support
        UnsupportedSpec: a classical Jacobi weight on more than one interval
    """
    if not spec.support:
        raise InvalidInterval("support is empty")
    support = tuple(sorted((float(lo), float(hi)) for lo, hi in spec.support))
    for lo, hi in support:
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
            raise InvalidInterval(f"invalid support interval [{lo}, {hi}]")
    for (_, r0), (l1, _) in zip(support[:-1], support[1:]):
        if l1 <= r0:
            raise OverlappingIntervals(f"support intervals overlap at [{l1}, {r0}]")

    weight = spec.weight
    if isinstance(weight, JacobiWeight):
        if len(support) != 1:
            raise UnsupportedSpec("a classical Jacobi weight needs a single support interval")
        for label, value in (('alpha', weight.alpha), ('beta', weight.beta)):
            if not value > -1.0:
                raise ExponentOutOfRange(f"Jacobi {label} = {value} must exceed -1")
        return replace(spec, support=support)

    merged: dict[float, float] = {}
    for factor in weight.singular:
        merged[float(factor.point)] = merged.get(float(factor.point), 0.0) + float(factor.exponent)
    singular = []
    for point, exponent in sorted(merged.items()):
        if not exponent > -1.0:
            raise ExponentOutOfRange(f"exponent {exponent} at x = {point} must exceed -1")
        scale = max(1.0, abs(point))
        if not any(lo - _POINT_TOL * scale <= point <= hi + _POINT_TOL * scale for lo, hi in support):
            raise SingularPointOutsideSupport(f"singular point {point} is not in the support")
        if exponent != 0.0:
            singular.append(SingularFactor(point, exponent))

    breakpoints = tuple(sorted(float(b) for b in weight.breakpoints))
    levels = tuple(float(v) for v in weight.levels)
    if len(levels) != len(breakpoints) + 1:
        raise ConfigParseError(f"need {len(breakpoints) + 1} levels for {len(breakpoints)} breakpoints, got {len(levels)}")
    if any(not (v > 0.0 and math.isfinite(v)) for v in levels):
        raise ConfigParseError(f"weight levels must be positive and finite: {levels}")
    if len(set(breakpoints)) != len(breakpoints):
        raise ConfigParseError(f"duplicate breakpoints: {breakpoints}")

    normalized = GeneralizedJacobiWeight(tuple(singular), breakpoints, levels)
    return replace(spec, support=support, weight=normalized)


# Named constructors

def jacobi(alpha: float = 0.0, beta: float = 0.0, interval: tuple[float, float] = (-1.0, 1.0), name: str = '') -> MeasureSpec:
    """Classical Jacobi measure on a single interval."""
    return validate(MeasureSpec((tuple(interval),), JacobiWeight(alpha, beta), name or f"jacobi({alpha},{beta})"))


def legendre(interval: tuple[float, float] = (-1.0, 1.0)) -> MeasureSpec:
    return jacobi(0.0, 0.0, interval, name='legendre')


def chebyshev(interval: tuple[float, float] = (-1.0, 1.0)) -> MeasureSpec:
    return jacobi(-0.5, -0.5, interval, name='chebyshev')


def generalized(
    support: list[tuple[float, float]],
    singular: list[tuple[float, float]] = (),
    breakpoints: list[float] = (),
    levels: list[float] = (1.0,),
    name: str = '',
) -> MeasureSpec:
    """Generalized Jacobi measure from plain lists."""
    weight = GeneralizedJacobiWeight(tuple(SingularFactor(p, e) for p, e in singular), tuple(breakpoints), tuple(levels))
    return validate(MeasureSpec(tuple(tuple(i) for i in support), weight, name))


# Config parsing

def _floats(value: list | str | float) -> list[float]:
    if isinstance(value, str):
        value = [v for v in value.split(',') if v.strip()]
    elif not isinstance(value, (list, tuple)):
        value = [value]
    return [float(v) for v in value if str(v).strip() != '']


def measure_from_section(section: Section | dict) -> MeasureSpec:
    """Build and validate a spec from a parsed (and spec-validated) measure section.

    Raises:
        ConfigParseError: missing or malformed keys
    """
    try:
        bounds = _floats(section['support']['intervals'])
        if len(bounds) == 0 or len(bounds) % 2:
            raise ConfigParseError(f"support intervals need an even number of values, got {bounds}")
        support = tuple((bounds[i], bounds[i + 1]) for i in range(0, len(bounds), 2))
        wsec = section['weight']
        kind = wsec.get('kind', 'generalized')
        if kind == 'jacobi':
            weight: JacobiWeight | GeneralizedJacobiWeight = JacobiWeight(float(wsec.get('alpha', 0.0)), float(wsec.get('beta', 0.0)))
        elif kind == 'generalized':
            points = _floats(wsec.get('singular_points', []))
            exponents = _floats(wsec.get('singular_exponents', []))
            if len(points) != len(exponents):
                raise ConfigParseError(f"{len(points)} singular points but {len(exponents)} exponents")
            weight = GeneralizedJacobiWeight(
                tuple(SingularFactor(p, e) for p, e in zip(points, exponents)),
                tuple(_floats(wsec.get('breakpoints', []))),
                tuple(_floats(wsec.get('levels', [1.0])) or [1.0]),
            )
        else:
            raise ConfigParseError(f"unknown weight kind '{kind}'")
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigParseError(f"malformed measure section: {e}") from e
    return validate(MeasureSpec(support, weight, str(section.get('name', ''))))


def measure_to_dict(spec: MeasureSpec) -> dict:
    """Nested dict in the measure-file layout; inverse of measure_from_section."""
    bounds = [v for interval in spec.support for v in interval]
    if isinstance(spec.weight, JacobiWeight):
        weight = {'kind': 'jacobi', 'alpha': spec.weight.alpha, 'beta': spec.weight.beta}
    else:
        weight = {
            'kind': 'generalized',
            'breakpoints': list(spec.weight.breakpoints),
            'levels': list(spec.weight.levels),
            'singular_points': [f.point for f in spec.weight.singular],
            'singular_exponents': [f.exponent for f in spec.weight.singular],
        }
    return {'name': spec.name, 'support': {'intervals': bounds}, 'weight': weight}


def _validated(cfg: ConfigObj, source: str) -> ConfigObj:
    result = cfg.validate(Validator(), preserve_errors=True)
    if result is not True:
        raise ConfigParseError(f"invalid measure file {source}: {result}")
    return cfg


def parse_measure_text(lines: list[str], source: str = '<text>') -> MeasureSpec:
    """Parse a measure from INI lines."""
    try:
        cfg = ConfigObj(lines, configspec=str(get_data_path('config', 'measure.spec')))
    except ConfigObjError as e:
        raise ConfigParseError(f"cannot parse measure {source}: {e}") from e
    return measure_from_section(_validated(cfg, source))


def load_measure(name_or_path: str | Path) -> MeasureSpec:
    """Load a measure from a file path or a built-in name (``data/measures/<name>.ini``).

    Raises:
        ConfigParseError: unknown name, unreadable or invalid file
    """
    path = Path(name_or_path)
    if not path.exists():
        builtin = get_data_path('measures', f"{name_or_path}.ini")
        if not builtin.exists():
            raise ConfigParseError(f"unknown measure '{name_or_path}' (not a file or built-in name)")
        path = builtin
    try:
        cfg = ConfigObj(str(path), configspec=str(get_data_path('config', 'measure.spec')), file_error=True)
    except (ConfigObjError, OSError) as e:
        raise ConfigParseError(f"cannot read measure file {path}: {e}") from e
    spec = measure_from_section(_validated(cfg, str(path)))
    if not spec.name:
        spec = replace(spec, name=path.stem)
    logger.debug(f"Loaded measure '{spec.name}' from {path}")
    return spec


def builtin_measures() -> list[str]:
    """Names of the measure files shipped in ``data/measures``."""
    return sorted(p.stem for p in get_data_path('measures').glob('*.ini'))
