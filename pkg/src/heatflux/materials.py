"""Physical constants, Drude-Lorentz permittivity and dipole polarizability.

All quantities are SI: rad/s for angular frequencies, m for lengths, s for
times and K for temperatures.  Polarizabilities carry units of m^3 (the
Gaussian-style ``(eps - 1)/(eps + 2) R^3`` convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    c: float
    hbar: float
    kB: float


# CODATA 2018 exact / recommended values.
CONSTANTS = PhysicalConstants(c=299_792_458.0, hbar=1.054571817e-34, kB=1.380649e-23)


@dataclass(frozen=True)
class DrudeLorentzParams:
    """Single-oscillator permittivity eps(w) = eps_inf - wp^2 / (w^2 - w0^2 + i g w)."""

    eps_inf: float
    omega0: float
    omegap: float
    gamma: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise ConfigError(f"gamma must be > 0, got {self.gamma!r}")
        if not self.eps_inf > 0.25:
            raise ConfigError(f"eps_inf must exceed 1/4, got {self.eps_inf!r}")
        if self.eps_inf == 1.0 and self.omegap != 0.0:
            raise ConfigError("eps_inf == 1 makes beta_tilde undefined")
        if self.omega0 < 0 or self.omegap < 0:
            raise ConfigError("omega0 and omegap must be non-negative")

    @property
    def beta_sq(self) -> float:
        return self.omega0**2 + self.omegap**2 / (self.eps_inf + 2.0) - self.gamma**2 / 4.0

    @property
    def beta_tilde_sq(self) -> float:
        if self.omegap == 0.0:
            return self.omega0**2 - self.gamma**2 / 4.0
        return self.omega0**2 + self.omegap**2 / (self.eps_inf - 1.0) - self.gamma**2 / 4.0


# Silicon carbide, Spitzer et al. parameters.
SIC = DrudeLorentzParams(eps_inf=6.7, omega0=1.49e14, omegap=2.71e14, gamma=8.93e11)


@dataclass(frozen=True)
class DerivedMaterial:
    beta: float
    beta_tilde: float
    omega0_alpha: float
    alpha_inf: float
    gamma: float
    # Lorentzian weight 3 wp^2 R^3 / (eps_inf + 2)^2 shared by Re/Im alpha.
    amplitude: float


@dataclass(frozen=True)
class Particle:
    material: DrudeLorentzParams
    radius: float
    volume: float = field(init=False)

    def __post_init__(self):
        if not self.radius > 0:
            raise ConfigError(f"radius must be > 0, got {self.radius!r}")
        object.__setattr__(self, "volume", 4.0 * math.pi * self.radius**3 / 3.0)


@dataclass(frozen=True)
class ThermalScales:
    omega_T: float
    lambda_T: float


def permittivity(p: DrudeLorentzParams, omega):
    omega = np.asarray(omega, dtype=float)
    return p.eps_inf - p.omegap**2 / (omega**2 - p.omega0**2 + 1j * p.gamma * omega)


def polarizability_freq(pt: Particle, omega):
    """Rational form (eps - 1)/(eps + 2) R^3."""
    eps = permittivity(pt.material, omega)
    return (eps - 1.0) / (eps + 2.0) * pt.radius**3


def derived_material(pt: Particle) -> DerivedMaterial:
    m = pt.material
    if m.beta_sq <= 0:
        raise ConfigError(f"beta^2 = {m.beta_sq:.3e} <= 0: overdamped polarizability")
    if m.beta_tilde_sq <= 0:
        raise ConfigError(f"beta_tilde^2 = {m.beta_tilde_sq:.3e} <= 0: overdamped permittivity")
    r3 = pt.radius**3
    return DerivedMaterial(
        beta=math.sqrt(m.beta_sq),
        beta_tilde=math.sqrt(m.beta_tilde_sq),
        omega0_alpha=math.sqrt(m.omega0**2 + m.omegap**2 / (m.eps_inf + 2.0)),
        alpha_inf=(m.eps_inf - 1.0) / (m.eps_inf + 2.0) * r3,
        gamma=m.gamma,
        amplitude=3.0 * m.omegap**2 * r3 / (m.eps_inf + 2.0) ** 2,
    )


def lorentz_denominator(mat: DerivedMaterial, omega):
    """(w^2 - w0a^2)^2 + g^2 w^2."""
    omega = np.asarray(omega, dtype=float)
    return (omega**2 - mat.omega0_alpha**2) ** 2 + (mat.gamma * omega) ** 2


def im_alpha(mat: DerivedMaterial, omega):
    omega = np.asarray(omega, dtype=float)
    return mat.amplitude * mat.gamma * omega / lorentz_denominator(mat, omega)


def re_alpha_dispersive(mat: DerivedMaterial, omega):
    """Re alpha - alpha_inf, the dispersive part of the real polarizability."""
    omega = np.asarray(omega, dtype=float)
    return -mat.amplitude * (omega**2 - mat.omega0_alpha**2) / lorentz_denominator(mat, omega)


def polarizability_parts(pt: Particle, omega):
    """Explicit (Re alpha, Im alpha) from the resonance-frequency form."""
    mat = derived_material(pt)
    return mat.alpha_inf + re_alpha_dispersive(mat, omega), im_alpha(mat, omega)


def polarizability_time(pt: Particle, t):
    """Time-domain response: weight of delta(t) and the smooth causal tail.

    Returns ``(alpha_inf, smooth)`` where ``smooth`` has units m^3/s.
    """
    mat = derived_material(pt)
    t = np.asarray(t, dtype=float)
    tp = np.where(t > 0, t, 0.0)
    tail = mat.amplitude / mat.beta * np.exp(-0.5 * mat.gamma * tp) * np.sin(mat.beta * tp)
    smooth = np.where(t > 0, tail, 0.0)
    return mat.alpha_inf, smooth[()] if smooth.ndim == 0 else smooth


def thermal_scales(T: float, const: PhysicalConstants = CONSTANTS) -> ThermalScales:
    if not T > 0:
        raise DomainError(f"temperature must be > 0 K, got {T!r}")
    return ThermalScales(
        omega_T=const.kB * T / const.hbar,
        lambda_T=const.hbar * const.c / (const.kB * T),
    )


def planck_factor(omega, omega_T):
    """Thermal occupation 1/(exp(w/wT) - 1); underflows to 0 past x ~ 709."""
    x = np.asarray(omega, dtype=float) / omega_T
    with np.errstate(over="ignore"):
        out = 1.0 / np.expm1(x)
    return out[()] if out.ndim == 0 else out
