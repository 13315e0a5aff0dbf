"""Extrema of flux time series and the closed-form relaxation models."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFit, DomainError, OutOfValidity, TooCoarse
from .stationary import PairConfig
from .transient import flux_series

SERIES_CHANNELS = ("total", "udot", "transfer")


@dataclass(frozen=True)
class TimeSeries:
    taus: np.ndarray
    total: np.ndarray
    udot: np.ndarray
    transfer: np.ndarray

    def __post_init__(self):
        taus = np.asarray(self.taus, dtype=float)
        if taus.ndim != 1 or taus.size < 2:
            raise ValueError("taus must be a 1-D array with at least two entries")
        if np.any(np.diff(taus) <= 0):
            raise ValueError("taus must be strictly increasing")
        for name in SERIES_CHANNELS:
            v = np.asarray(getattr(self, name), dtype=float)
            if v.shape != taus.shape:
                raise ValueError(f"{name} has shape {v.shape}, expected {taus.shape}")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "taus", taus)

    def channel(self, name: str) -> np.ndarray:
        if name not in SERIES_CHANNELS:
            raise KeyError(f"unknown channel {name!r}; choose from {SERIES_CHANNELS}")
        return getattr(self, name)

    @classmethod
    def from_values(cls, taus, values):
        """Single-channel series (stored as ``total``; other channels zero)."""
        v = np.asarray(values, dtype=float)
        z = np.zeros_like(v)
        return cls(np.asarray(taus, dtype=float), v, z, z.copy())


def build_series(cfg: PairConfig, taus, normalized: bool = True) -> TimeSeries:
    udot, transfer = flux_series(cfg, taus, normalized=normalized)
    return TimeSeries(np.asarray(taus, dtype=float), udot + transfer, udot, transfer)


@dataclass(frozen=True)
class ExtremaSet:
    """Rows are (tau, value); ``averages`` uses adjacent max/min midpoints."""

    maxima: np.ndarray
    minima: np.ndarray
    averages: np.ndarray

    def global_max(self):
        if self.maxima.size == 0:
            raise ValueError("no maxima")
        k = int(np.argmax(self.maxima[:, 1]))
        return float(self.maxima[k, 0]), float(self.maxima[k, 1])

    def global_min(self):
        if self.minima.size == 0:
            raise ValueError("no minima")
        k = int(np.argmin(self.minima[:, 1]))
        return float(self.minima[k, 0]), float(self.minima[k, 1])


def _refine(t, v, idx):
    """Vertex of the parabola through (i-1, i, i+1) for each index."""
    t1, v1 = t[idx], v[idx]
    # local coordinates around the middle sample; non-uniform grids allowed
    h0, h2 = t[idx - 1] - t1, t[idx + 1] - t1
    s0, s2 = (v[idx - 1] - v1) / h0, (v[idx + 1] - v1) / h2
    curv = (s2 - s0) / (h2 - h0)
    slope = s0 - curv * h0
    with np.errstate(divide="ignore", invalid="ignore"):
        u = -slope / (2 * curv)
    ok = (curv != 0) & (u > h0) & (u < h2)
    u = np.where(ok, u, 0.0)
    vv = np.where(ok, v1 + slope * u + curv * u * u, v1)
    return np.column_stack([t1 + u, vv])


def find_extrema(series: TimeSeries, channel: str = "total", period: float | None = None) -> ExtremaSet:
    """Local maxima/minima by sign changes of the first difference.

    With ``period`` given, the series must carry at least 16 samples per
    period, and a span of 3+ periods without two extrema raises TooCoarse.
    """
    t = series.taus
    v = series.channel(channel)
    span = t[-1] - t[0]
    if period is not None:
        if not period > 0:
            raise ValueError("period must be > 0")
        if np.max(np.diff(t)) > period / 16:
            raise TooCoarse(f"sampling step {np.max(np.diff(t)):.3e} exceeds period/16 = {period / 16:.3e}")
    dv = np.diff(v)
    # plateaus are attributed to their last sample
    up = dv[:-1] > 0
    down = dv[1:] <= 0
    imax = np.nonzero(up & down)[0] + 1
    imin = np.nonzero((dv[:-1] < 0) & (dv[1:] >= 0))[0] + 1
    if period is not None and span >= 3 * period and imax.size + imin.size < 2:
        raise TooCoarse("fewer than two extrema over three or more periods")
    maxima = _refine(t, v, imax) if imax.size else np.empty((0, 2))
    minima = _refine(t, v, imin) if imin.size else np.empty((0, 2))
    return ExtremaSet(maxima, minima, _midpoints(maxima, minima))


def _midpoints(maxima, minima):
    """Average points between each pair of neighbouring extrema of opposite kind."""
    if maxima.size == 0 or minima.size == 0:
        return np.empty((0, 2))
    allx = np.concatenate([maxima, minima])
    kind = np.concatenate([np.ones(len(maxima)), -np.ones(len(minima))])
    order = np.argsort(allx[:, 0], kind="stable")
    allx, kind = allx[order], kind[order]
    pair = kind[:-1] != kind[1:]
    return 0.5 * (allx[:-1][pair] + allx[1:][pair])


def flux_average_model(H_st: float, gamma: float, tau):
    """Exponential relaxation H_st (1 - e^{-gamma tau}) of the oscillation average."""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau < 0):
        raise DomainError("flux_average_model needs tau >= 0")
    out = -H_st * np.expm1(-gamma * tau)
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class FitParams:
    a: float
    b: float
    tau_max: float
    phi_max: float
    H_st: float
    gamma: float


def fit_max_params(tau_max: float, phi_max: float, H_st: float, gamma: float) -> FitParams:
    """Parameters of the maxima curve pinned to its global maximum."""
    if not tau_max > 0:
        raise DomainError("tau_max must be > 0")
    g, tm = gamma, tau_max
    q = 0.5 * g * tm - 0.75
    if abs(g * tm - 1.5) < 1e-6:
        raise DegenerateFit(f"gamma * tau_max = {g * tm:.9f} is too close to 3/2")
    a = ((0.5 * g * tm + 0.75) * H_st + q * (H_st - phi_max) * math.exp(g * tm)) / (0.5 * g * tm**1.75)
    b = (g * tm**0.25 * H_st - a * (g * tm - 0.75)) * math.exp(-0.5 * g * tm) / q
    return FitParams(a, b, tau_max, phi_max, H_st, gamma)


def oscillation_amplitude(fp: FitParams, tau):
    tau = np.asarray(tau, dtype=float)
    g = fp.gamma
    return tau**0.75 * (fp.a * np.exp(-g * tau) + fp.b * np.exp(-0.5 * g * tau))


def flux_max_model(fp: FitParams, tau):
    """Average relaxation plus the tau^(3/4) envelope of the maxima."""
    tau = np.asarray(tau, dtype=float)
    out = flux_average_model(fp.H_st, fp.gamma, tau) + oscillation_amplitude(fp, tau)
    return out[()] if out.ndim == 0 else out


def near_field_approx(fp: FitParams, omega0_alpha: float, tau):
    """Average minus eta(tau) cos(w0a tau): maxima fall where the cosine is -1."""
    tau = np.asarray(tau, dtype=float)
    out = flux_average_model(fp.H_st, fp.gamma, tau) - oscillation_amplitude(fp, tau) * np.cos(omega0_alpha * tau)
    return out[()] if out.ndim == 0 else out


def far_field_approx(H_st: float, gamma: float, omega0_alpha: float, tau):
    """Average plus a small oscillation at twice the resonance frequency."""
    tau = np.asarray(tau, dtype=float)
    if np.any(tau <= math.pi / (2 * omega0_alpha)):
        warnings.warn("far-field formula is not applicable for tau <= pi/(2 w0a)", OutOfValidity, stacklevel=2)
    out = flux_average_model(H_st, gamma, np.maximum(tau, 0.0)) - gamma / (2 * omega0_alpha) * H_st * np.sin(
        2 * omega0_alpha * tau)
    return out[()] if out.ndim == 0 else out


def loglog_slope(x, y) -> float:
    """Least-squares slope of log|y| against log x."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    return float(np.polyfit(np.log(x), np.log(np.abs(y)), 1)[0])
