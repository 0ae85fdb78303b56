"""Exception hierarchy shared across the package.

Parameter-validation errors are named after the invariant they report so
callers (and the CLI) can surface the first violation by name.
"""


class QFrictionError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------------------
# parameter validation

class ValidationError(QFrictionError, ValueError):
    """A physical parameter violates a model invariant."""


class MassNonPositive(ValidationError):
    pass


class FrequencyNonPositive(ValidationError):
    pass


class SpeedOutOfRange(ValidationError):
    pass


class DistanceNonPositive(ValidationError):
    pass


class MediumSpeedOutOfRange(ValidationError):
    pass


# ---------------------------------------------------------------------------
# special functions

class DomainError(QFrictionError, ValueError):
    """Argument outside the mathematical domain of a special function."""


# ---------------------------------------------------------------------------
# quadrature

class QuadratureError(QFrictionError):
    """Base class for integration failures."""


class NonConvergent(QuadratureError):
    """Tolerance not met within the subdivision budget.

    Carries the best available estimate in ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NonFiniteSample(QuadratureError):
    """The integrand returned NaN or infinity.

    ``abscissa`` is the offending sample point, ``panel`` the enclosing
    integration panel.
    """

    def __init__(self, abscissa, panel):
        super().__init__(
            f"integrand is non-finite at x={abscissa!r} in panel {panel!r}"
        )
        self.abscissa = abscissa
        self.panel = panel


class OscillationUnderresolved(QuadratureError):
    """Half-period panelling would exceed the panel budget."""


class TailBoundExceeded(QuadratureError):
    """Requested tolerance unreachable with the chosen domain truncation."""


# ---------------------------------------------------------------------------
# dispersive kinematics

class DegenerateKinematics(QFrictionError):
    """The on-shell quadratic degenerates (atom speed equals wave speed)."""


class ThresholdViolated(QFrictionError):
    """Friction process kinematically forbidden (v <= u)."""


class EvanescenceViolated(QFrictionError):
    """Momentum lies outside the evanescent regime (W^2 <= 0)."""


# ---------------------------------------------------------------------------
# CLI

class ConfigError(QFrictionError, ValueError):
    """Invalid run configuration (bad flag value, range, or config file)."""
