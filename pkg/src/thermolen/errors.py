"""Exception hierarchy.

Domain guards raise instead of returning non-finite numbers so that the
quadrature and optimization layers receive explicit degeneracy signals.
"""


class ThermolenError(Exception):
    """Base class for all library errors."""


class ConfigError(ThermolenError):
    """Invalid model configuration or malformed config/path document."""


class NonPhysicalState(ThermolenError):
    """State outside the model domain (v <= b, implied T <= 0, ...)."""


class DegenerateState(ThermolenError):
    """Material functions undefined: (dp/dv)_T = 0, so kappa_T is infinite."""


class NegativeQuadraticForm(ThermolenError):
    """Length integrand went negative beyond the rounding clamp (unstable state)."""


class DepthExceeded(ThermolenError):
    """Adaptive quadrature hit the recursion cap before meeting tolerance."""


class UnsupportedModel(ThermolenError):
    """Operation's hypothesis excludes this model family."""
