"""
Exception hierarchy for orthozeros.

Every error raised on purpose by the library derives from OrthoZerosError so
callers (and the command line) can tell library failures from bugs.
"""


class OrthoZerosError(Exception):
    """Base class for all orthozeros errors."""
    pass


class ConfigParseError(OrthoZerosError):
    """Raised when a settings, measure or experiment file cannot be parsed or validated."""
    pass


# Measures

class MeasureError(OrthoZerosError):
    """Raised for an orthogonality measure that violates its hypotheses."""
    pass


class OverlappingIntervals(MeasureError):
    """Support intervals intersect or touch."""
    pass


class InvalidInterval(MeasureError):
    """An interval has l >= r or non-finite ends."""
    pass


class ExponentOutOfRange(MeasureError):
    """A Jacobi or singular-factor exponent is <= -1."""
    pass


class SingularPointOutsideSupport(MeasureError):
    """A singular factor is located outside the support."""
    pass


class UnsupportedSpec(MeasureError):
    """The operation needs a different kind of measure (e.g. classical Jacobi)."""
    pass


class WeightUnavailable(MeasureError):
    """mu'(x) is zero, infinite or undefined at the requested point."""
    pass


# Numerics

class NumericalError(OrthoZerosError):
    """Base class for failures of numerical procedures."""
    pass


class NonConvergence(NumericalError):
    """An iterative or adaptive procedure hit its cap before meeting its tolerance."""
    pass


class QuadratureNonConvergence(NonConvergence):
    """Adaptive quadrature exceeded its panel or depth cap."""
    pass


class EigenFailure(NumericalError):
    """The eigensolver did not converge."""
    pass


class DegenerateLeadingCoefficient(NumericalError):
    """The leading coefficient of a random polynomial is zero."""
    pass


class CauchySchwarzViolation(NumericalError):
    """A*C - B^2 is negative beyond roundoff slack."""
    pass


class InvalidBasis(NumericalError):
    """A Kac-Rice basis whose first function is not a nonzero constant."""
    pass


class TrialError(NumericalError):
    """A Monte Carlo trial failed; carries the failing trial id."""

    def __init__(self, trial_id: int, message: str) -> None:
        super().__init__(f"trial {trial_id}: {message}")
        self.trial_id = trial_id


# Potential theory

class EquilibriumError(OrthoZerosError):
    """Base class for equilibrium-measure errors."""
    pass


class UnsupportedSupportClass(EquilibriumError):
    """No closed form is available for this support."""
    pass
