"""Transient and stationary radiative heat flux between two dipolar particles."""

__version__ = "0.1.0"

from .errors import ConfigError, DegenerateFit, DomainError, NotConverged, OutOfValidity, TooCoarse  # noqa: F401
from .materials import SIC, DrudeLorentzParams, Particle, derived_material, thermal_scales  # noqa: F401
from .stationary import PairConfig, sic_pair, stationary_flux  # noqa: F401
from .transient import flux_at, flux_series, limit_tau0  # noqa: F401
