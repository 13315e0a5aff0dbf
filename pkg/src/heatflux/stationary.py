"""Stationary heat transfer and field energy densities between two dipoles.

Fluxes are returned per unit V1*V2 (J s^-1 m^-6) unless ``normalized=False``;
energy densities per unit V1 (J m^-3 m^-3).  Channels are keyed by the
inverse power of the separation they scale with.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NotConverged
from .greens import VACUUM, EnvTraceProvider
from .materials import (
    CONSTANTS,
    SIC,
    DerivedMaterial,
    DrudeLorentzParams,
    Particle,
    derived_material,
    im_alpha,
    thermal_scales,
)
from .quadrature import QuadResult, QuadSpec, default_cutoffs, integrate

HBAR, C = CONSTANTS.hbar, CONSTANTS.c


@dataclass(frozen=True)
class PairConfig:
    particle1: Particle
    particle2: Particle
    d: float
    T1: float

    def __post_init__(self):
        if not self.d > 0:
            raise ConfigError(f"separation must be > 0, got {self.d!r}")
        if not self.T1 > 0:
            raise ConfigError(f"temperature must be > 0, got {self.T1!r}")
        lam = thermal_scales(self.T1).lambda_T
        for p in (self.particle1, self.particle2):
            if p.radius > self.d / 10 or p.radius > lam / 10:
                warnings.warn(
                    f"radius {p.radius:.3g} m is not small against d={self.d:.3g} m "
                    f"or lambda_T={lam:.3g} m; dipole approximation is doubtful",
                    stacklevel=3,
                )

    def swapped(self) -> "PairConfig":
        return PairConfig(self.particle2, self.particle1, self.d, self.T1)

    def with_distance(self, d: float) -> "PairConfig":
        return PairConfig(self.particle1, self.particle2, d, self.T1)


def sic_pair(d: float, T1: float, radius: float = 5e-9, material: DrudeLorentzParams = SIC) -> PairConfig:
    """Two identical particles (SiC by default) at separation ``d``."""
    p = Particle(material, radius)
    return PairConfig(p, p, d, T1)


@dataclass(frozen=True)
class PairState:
    """Frequency-independent quantities shared by every spectral kernel."""

    cfg: PairConfig
    mat1: DerivedMaterial
    mat2: DerivedMaterial
    omega_T: float
    V1: float
    V2: float
    d: float

    @classmethod
    def from_config(cls, cfg: PairConfig) -> "PairState":
        return cls(
            cfg=cfg,
            mat1=derived_material(cfg.particle1),
            mat2=derived_material(cfg.particle2),
            omega_T=thermal_scales(cfg.T1).omega_T,
            V1=cfg.particle1.volume,
            V2=cfg.particle2.volume,
            d=cfg.d,
        )

    @property
    def norm(self) -> float:
        return self.V1 * self.V2

    def resonances(self):
        return [(m.omega0_alpha, m.gamma) for m in (self.mat1, self.mat2)]

    def quad_spec(self, rel_tol=1e-8, abs_tol=0.0, omega_max=None, max_panels=400_000) -> QuadSpec:
        lo1, hi1 = default_cutoffs(self.cfg.T1, self.mat1)
        _, hi2 = default_cutoffs(self.cfg.T1, self.mat2)
        return QuadSpec(rel_tol, abs_tol, lo1, omega_max or max(hi1, hi2), max_panels)


def thermal_weight(omega, omega_T, power):
    """w^power / (exp(w/wT) - 1), evaluated as w^(power-1) * wT * x/expm1(x)."""
    omega = np.asarray(omega, dtype=float)
    x = omega / omega_T
    with np.errstate(over="ignore", invalid="ignore"):
        xe = np.where(x < 1e-300, 1.0, x / np.expm1(x))
    xe = np.where(np.isfinite(xe), xe, 0.0)
    return omega ** (power - 1) * omega_T * xe


@dataclass(frozen=True)
class StationaryResult:
    value: float
    channels: dict
    normalized: bool
    quad: QuadResult | None = field(default=None, repr=False)


def _flux_channels(st: PairState, omega):
    """Stationary transfer spectrum split into d^-2, d^-4, d^-6 rows (absolute)."""
    omega = np.asarray(omega, dtype=float)
    d = st.d
    base = 4.0 * HBAR / (math.pi * C**4) * thermal_weight(omega, st.omega_T, 5)
    base = base * im_alpha(st.mat1, omega) * im_alpha(st.mat2, omega)
    ck = C / omega
    return np.stack([base / d**2, base * ck**2 / d**4, base * 3.0 * ck**4 / d**6])


def stationary_flux_spectrum(cfg: PairConfig, omega, normalized: bool = True):
    st = PairState.from_config(cfg)
    out = _flux_channels(st, omega).sum(axis=0)
    return out / st.norm if normalized else out


def _finish(quad: QuadResult, scale: float, normalized: bool, what: str) -> StationaryResult:
    if not quad.converged:
        raise NotConverged(f"{what}: quadrature did not converge", quad)
    vals = np.atleast_1d(quad.value) / scale
    chans = {p: float(v) for p, v in zip((2, 4, 6), vals)}
    return StationaryResult(float(vals.sum()), chans, normalized, quad)


def stationary_flux(cfg: PairConfig, spec: QuadSpec | None = None, normalized: bool = True) -> StationaryResult:
    """Stationary heat transfer H_st (= flux) in vacuum, with channel breakdown."""
    st = PairState.from_config(cfg)
    spec = spec or st.quad_spec()
    quad = integrate(lambda w: _flux_channels(st, w), spec, resonance=st.resonances())
    return _finish(quad, st.norm if normalized else 1.0, normalized, "stationary_flux")


def stationary_flux_generic(cfg: PairConfig, env: EnvTraceProvider = VACUUM, spec: QuadSpec | None = None,
                            normalized: bool = True) -> StationaryResult:
    """Stationary transfer for an arbitrary environment trace Tr{G G^dagger}."""
    st = PairState.from_config(cfg)
    spec = spec or st.quad_spec()

    def f(w):
        w = np.asarray(w, dtype=float)
        return (32.0 * math.pi * HBAR / C**4 * thermal_weight(w, st.omega_T, 5)
                * im_alpha(st.mat1, w) * im_alpha(st.mat2, w) * env.trace_EE(st.d, w))

    quad = integrate(f, spec, resonance=st.resonances())
    if not quad.converged:
        raise NotConverged("stationary_flux_generic: quadrature did not converge", quad)
    scale = st.norm if normalized else 1.0
    return StationaryResult(quad.value / scale, {}, normalized, quad)


def _density_channels(st: PairState, omega, with_near_field: bool):
    omega = np.asarray(omega, dtype=float)
    d = st.d
    base = HBAR / (2.0 * math.pi**2 * C**4) * thermal_weight(omega, st.omega_T, 4) * im_alpha(st.mat1, omega)
    ck = C / omega
    rows = [base / d**2, base * ck**2 / d**4]
    rows.append(base * 3.0 * ck**4 / d**6 if with_near_field else np.zeros_like(base))
    return np.stack(rows)


def _density(cfg, spec, normalized, near):
    st = PairState.from_config(cfg)
    spec = spec or st.quad_spec()

    def f(w):
        rows = _density_channels(st, w, near)
        return rows if near else rows[:2]

    quad = integrate(f, spec, resonance=st.resonances())
    res = _finish(quad, st.V1 if normalized else 1.0, normalized, "energy density")
    if not near:
        res.channels[6] = 0.0
    return res


def stationary_energy_density_H(cfg: PairConfig, spec: QuadSpec | None = None, normalized: bool = True):
    """Magnetic energy density at particle 2 (no d^-6 channel)."""
    return _density(cfg, spec, normalized, near=False)


def stationary_energy_density_E0(cfg: PairConfig, spec: QuadSpec | None = None, normalized: bool = True):
    """Electric energy density at particle 2 not involving its response."""
    return _density(cfg, spec, normalized, near=True)


def energy_density_E0_spectrum(cfg: PairConfig, omega, normalized: bool = True):
    st = PairState.from_config(cfg)
    out = _density_channels(st, omega, True).sum(axis=0)
    return out / st.V1 if normalized else out
