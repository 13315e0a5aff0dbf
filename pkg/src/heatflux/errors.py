"""Exception types shared across the package."""


class HeatFluxError(Exception):
    """Base class for all errors raised by heatflux."""


class ConfigError(HeatFluxError, ValueError):
    """Material or run configuration is outside the supported model."""


class DomainError(HeatFluxError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class NotConverged(HeatFluxError, RuntimeError):
    """Adaptive quadrature ran out of panels before meeting its tolerance.

    The best available estimate is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class TooCoarse(HeatFluxError, ValueError):
    """Time series is sampled too coarsely to resolve its oscillations."""


class DegenerateFit(HeatFluxError, ValueError):
    """Maximum-curve fit is singular (gamma * tau_max == 3/2)."""


class OutOfValidity(UserWarning):
    """An approximation is evaluated outside the range where it applies."""
