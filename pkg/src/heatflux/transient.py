"""Time-dependent heat flux between two dipoles after the field front arrives.

Everything is a function of the retarded time ``tau = t - d/c``.  All
observables vanish for ``tau < 0``; ``tau == 0`` carries a delta pulse that
cannot be represented and is rejected.

The frequency kernels are bilinear in the two sets of time functions
``(1, e^{-g tau/2} cos(b tau), e^{-g tau/2} sin(b tau))`` and
``(1, cos(w tau), sin(w tau))``.  :func:`flux_at` integrates the kernel at a
single tau with adaptive quadrature; :func:`flux_series` exploits the
bilinear structure to evaluate thousands of tau values with one set of
frequency weights.
"""

from __future__ import annotations

import functools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotConverged
from .materials import CONSTANTS, DerivedMaterial, im_alpha, re_alpha_dispersive
from .quadrature import QuadSpec, _gk_panels, integrate, panel_rule
from .stationary import PairConfig, PairState, stationary_energy_density_H, thermal_weight

HBAR, C = CONSTANTS.hbar, CONSTANTS.c
K4 = 4.0 * HBAR / (math.pi * C**4)
CHANNELS = (2, 3, 4, 5, 6)


def _check_tau(tau):
    tau = float(tau)
    if tau == 0.0:
        raise DomainError("tau == 0 is the delta-pulse instant and is not represented")
    return tau


def _one_minus_cos(x):
    return 2.0 * np.sin(0.5 * x) ** 2


@dataclass(frozen=True)
class FluxDecomposition:
    """Total flux = stored-energy change + dissipated heat (J s^-1 m^-6)."""

    total: float
    udot: float
    transfer: float
    tau: float

    @classmethod
    def build(cls, udot, transfer, tau):
        return cls(udot + transfer, udot, transfer, tau)


@dataclass(frozen=True)
class KernelChannels:
    """Interaction kernel per distance power, split by response type.

    ``transfer`` rows scale with Im alpha_2, ``energy`` rows with
    Re alpha_2 - alpha_inf.  Row ``k`` belongs to ``d^-CHANNELS[k]``.
    """

    transfer: np.ndarray
    energy: np.ndarray

    def total_transfer(self):
        return self.transfer.sum(axis=0)

    def total_energy(self):
        return self.energy.sum(axis=0)

    def channel(self, power: int):
        k = CHANNELS.index(power)
        return self.transfer[k], self.energy[k]


# ---------------------------------------------------------------- closed forms

def damped_sine_integrals(omega, tau, beta, gamma):
    """S = int_0^tau e^{-g s/2} sin(b s) sin(w s) ds and the matching cosine C."""
    w = np.asarray(omega, dtype=float)
    tau = float(tau)
    if not tau > 0:
        raise DomainError("damped_sine_integrals needs tau > 0")
    g = float(gamma)
    om2 = beta**2 + g**2 / 4.0
    den = (w**2 - om2) ** 2 + (g * w) ** 2
    e = math.exp(-0.5 * g * tau)
    cb, sb = math.cos(beta * tau), math.sin(beta * tau)
    cw, sw = np.cos(w * tau), np.sin(w * tau)
    dw = w**2 - om2
    s = 0.5 * (2 * g * beta * w - e * (2 * g * beta * w * cb * cw + g * (w**2 + om2) * sb * sw
                                       - 2 * beta * dw * cb * sw + 2 * w * (dw + g**2 / 2) * sb * cw)) / den
    c = (-beta * dw - e * (-beta * dw * cb * cw - w * (dw + g**2 / 2) * sb * sw
                           - g * beta * w * cb * sw + 0.5 * g * (w**2 + om2) * sb * cw)) / den
    return s, c


def interaction_integrals(omega, tau, mat2: DerivedMaterial, d: float) -> KernelChannels:
    """The five interaction integrals in their consolidated closed forms."""
    w = np.asarray(omega, dtype=float)
    tau = _check_tau(tau)
    if tau < 0:
        z = np.zeros((5,) + w.shape)
        return KernelChannels(z, z.copy())
    g, bt, om2 = mat2.gamma, mat2.beta, mat2.omega0_alpha**2
    im2 = im_alpha(mat2, w)
    re2 = re_alpha_dispersive(mat2, w)
    e = math.exp(-0.5 * g * tau)
    cb, sb = math.cos(bt * tau), math.sin(bt * tau)
    cw, sw = np.cos(w * tau), np.sin(w * tau)
    omc = _one_minus_cos(w * tau)
    w2 = w * w

    t2 = im2 + im2 * e * (-cb * cw - om2 * (3 * w2 - om2) / (2 * bt * w**3) * sb * sw
                          - g / w * (cb * sw - w / (2 * bt) * sb * cw) + g**2 / (2 * bt * w) * sb * sw)
    u2 = re2 * om2 / w2 * e * (-cb * sw + w / bt * sb * cw)

    t3 = im2 * e * (-(w2 - om2) ** 2 / (2 * bt * w**3) * sb * cw + g / w * cb * cw - g**2 / (2 * bt * w) * sb * cw)
    u3 = -re2 * e * (w2 - om2) / w2 * cb * cw

    t4 = im2 + im2 * (cw + e * (-cb * (1 + cw) - (2 * w**4 - om2 * w2 + om2**2) / (2 * bt * w**3) * sb * sw
                                + g / w * (cb * sw + w / (2 * bt) * sb * (1 + 3 * cw))
                                - g**2 / (2 * bt * w) * sb * sw))
    u4 = re2 * (-sw + e * (-(2 * w2 - om2) / w2 * cb * sw
                           + w / bt * sb * (om2 / w2 - (w2 - 2 * om2) / w2 * cw)))

    t5 = im2 * (sw - e * ((w2 + om2) / (2 * bt * w) * sb - g / bt * sb * sw))
    u5 = re2 * (cw - e * (cb + (w2 - om2) / (bt * w) * sb * sw))

    t6 = im2 + im2 * (-cw + e * (cb * omc - (w2 + om2) / (2 * bt * w) * sb * sw + g / (2 * bt) * sb * omc))
    u6 = re2 * (sw + e * (-cb * sw - w / bt * sb * omc))

    scale = [2 * w**3 / (C**4 * d**2), 2 * w2 / (C**3 * d**3), 2 * w / (C**2 * d**4),
             6 / (C * d**5) * np.ones_like(w), 6 / (w * d**6)]
    tr = np.stack([s * t for s, t in zip(scale, (t2, t3, t4, t5, t6))])
    en = np.stack([s * u for s, u in zip(scale, (u2, u3, u4, u5, u6))])
    return KernelChannels(tr, en)


def interaction_integrals_reconstructed(omega, tau, mat2: DerivedMaterial, d: float) -> KernelChannels:
    """Same integrals assembled from f, f' and the damped sine/cosine integrals.

    Only the channel totals are meaningful here (no transfer/energy split):
    the full value is placed in ``transfer`` and ``energy`` is zero.
    """
    w = np.asarray(omega, dtype=float)
    tau = _check_tau(tau)
    if tau < 0:
        z = np.zeros((5,) + w.shape)
        return KernelChannels(z, z.copy())
    g, bt, amp = mat2.gamma, mat2.beta, mat2.amplitude
    s, c = damped_sine_integrals(w, tau, bt, g)
    e = math.exp(-0.5 * g * tau)
    f = e * math.sin(bt * tau)
    fp = e * (-0.5 * g * math.sin(bt * tau) + bt * math.cos(bt * tau))
    cw, sw = np.cos(w * tau), np.sin(w * tau)
    omc = _one_minus_cos(w * tau)
    k = amp / bt
    rows = [
        2 / (C**4 * d**2) * k * w * (-sw * fp + w * cw * f + w**2 * s),
        2 / (C**3 * d**3) * k * cw * fp,
        2 / (C**2 * d**4) * k * (sw * fp / w + (1 + 2 * cw) * f + w * (1 + cw) * s - w * sw * c),
        6 / (C * d**5) * k * (sw * f / w + cw * c + sw * s),
        6 / d**6 * k * (omc * s / w + sw * c / w),
    ]
    tr = np.stack([np.broadcast_to(r, w.shape) for r in rows])
    return KernelChannels(tr, np.zeros_like(tr))


# ------------------------------------------------------------- spectral kernel

def _kernel(st: PairState, w, a0, ecb, esb, b0, cw, sw, omc):
    """Transfer and stored-energy spectra (absolute, per unit w).

    ``a0, ecb, esb`` are the coefficients of 1, e^{-g tau/2}cos(b tau),
    e^{-g tau/2}sin(b tau); ``b0, cw, sw, omc`` those of 1, cos(w tau),
    sin(w tau) and 1 - cos(w tau).
    """
    m2 = st.mat2
    g, bt, om2 = m2.gamma, m2.beta, m2.omega0_alpha**2
    d = st.d
    x = C / (w * d)
    x2, x3, x4 = x * x, x**3, x**4
    w2 = w * w
    pref = K4 * thermal_weight(w, st.omega_T, 5) * im_alpha(st.mat1, w) / d**2
    im2 = im_alpha(m2, w)
    re2 = re_alpha_dispersive(m2, w)

    t_exp = (
        -ecb * cw - om2 * (3 * w2 - om2) / (2 * bt * w**3) * esb * sw
        - g / w * (ecb * sw - w / (2 * bt) * esb * cw) + g**2 / (2 * bt * w) * esb * sw
        + x * (-(w2 - om2) ** 2 / (2 * bt * w**3) - g**2 / (2 * bt * w)) * esb * cw
        + x * g / w * ecb * cw
        + x2 * (-ecb * (b0 + cw) - (2 * w**4 - om2 * w2 + om2**2) / (2 * bt * w**3) * esb * sw
                + g / w * (ecb * sw + w / (2 * bt) * esb * (b0 + 3 * cw)) - g**2 / (2 * bt * w) * esb * sw)
        + 3 * x3 * (-(w2 + om2) / (2 * bt * w) * esb * b0 + g / bt * esb * sw)
        + 3 * x4 * (ecb * omc - (w2 + om2) / (2 * bt * w) * esb * sw + g / (2 * bt) * esb * omc)
    )
    transfer = pref * im2 * (
        a0 * b0 * (1 + x2 + 3 * x4)
        + a0 * (x2 * cw + 3 * x3 * sw - 3 * x4 * cw)
        + t_exp
    )

    u_exp = (
        om2 / w2 * (-ecb * sw + w / bt * esb * cw)
        - x * (w2 - om2) / w2 * ecb * cw
        + x2 * (-(2 * w2 - om2) / w2 * ecb * sw + w / bt * esb * (om2 / w2 * b0 - (w2 - 2 * om2) / w2 * cw))
        - 3 * x3 * (ecb * b0 + (w2 - om2) / (bt * w) * esb * sw)
        + 3 * x4 * (-ecb * sw - w / bt * esb * omc)
    )
    empty = (st.V2 + 4 * math.pi * m2.alpha_inf) / (4 * math.pi)
    udot = pref * (a0 * (empty + re2) * (-x2 * sw + 3 * x3 * cw + 3 * x4 * sw) + re2 * u_exp)
    return transfer, udot


def _direct(st: PairState, w, tau):
    e = math.exp(-0.5 * st.mat2.gamma * tau)
    bt = st.mat2.beta
    ph = w * tau
    return _kernel(st, w, 1.0, e * math.cos(bt * tau), e * math.sin(bt * tau), 1.0,
                   np.cos(ph), np.sin(ph), _one_minus_cos(ph))


def udot_spectrum(cfg: PairConfig, omega, tau, normalized: bool = True):
    """Spectral density of the stored-energy change at particle 2."""
    tau = _check_tau(tau)
    w = np.asarray(omega, dtype=float)
    if tau < 0:
        return np.zeros_like(w)
    st = PairState.from_config(cfg)
    out = _direct(st, w, tau)[1]
    return out / st.norm if normalized else out


def transfer_spectrum(cfg: PairConfig, omega, tau, normalized: bool = True):
    """Spectral density of the heat dissipated in particle 2."""
    tau = _check_tau(tau)
    w = np.asarray(omega, dtype=float)
    if tau < 0:
        return np.zeros_like(w)
    st = PairState.from_config(cfg)
    out = _direct(st, w, tau)[0]
    return out / st.norm if normalized else out


def interaction_spectra_from_channels(cfg: PairConfig, omega, tau, channels: KernelChannels,
                                      normalized: bool = True):
    """(udot, transfer) spectra built from an interaction-kernel channel set."""
    st = PairState.from_config(cfg)
    w = np.asarray(omega, dtype=float)
    front = 2 * HBAR / math.pi * thermal_weight(w, st.omega_T, 2) * im_alpha(st.mat1, w)
    empty = (st.V2 + 4 * math.pi * st.mat2.alpha_inf) / (4 * math.pi)
    x = C / (w * st.d)
    ph = w * tau
    v_term = K4 * thermal_weight(w, st.omega_T, 5) * im_alpha(st.mat1, w) / st.d**2 * empty * (
        -x**2 * np.sin(ph) + 3 * x**3 * np.cos(ph) + 3 * x**4 * np.sin(ph))
    udot = v_term + front * channels.total_energy()
    transfer = front * channels.total_transfer()
    if normalized:
        udot, transfer = udot / st.norm, transfer / st.norm
    return udot, transfer


# ------------------------------------------------------------ frequency weights

_A_BASIS = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
_B_BASIS = ((1.0, 0.0, 0.0, 1.0), (0.0, 1.0, 0.0, -1.0), (0.0, 0.0, 1.0, 0.0))


def _weights(st: PairState, w):
    """Kernel coefficients W[q, a, b, n] for q in (transfer, udot)."""
    out = np.empty((2, 3, 3) + np.shape(w))
    for i, (a0, ec, es) in enumerate(_A_BASIS):
        for j, (b0, cw, sw, omc) in enumerate(_B_BASIS):
            t, u = _kernel(st, w, a0, ec, es, b0, cw, sw, omc)
            out[0, i, j], out[1, i, j] = t, u
    return out


@dataclass(frozen=True)
class _Envelope:
    breakpoints: np.ndarray
    scale: np.ndarray  # L1 size of the transfer and udot kernels


@functools.lru_cache(maxsize=64)
def _envelope(cfg: PairConfig) -> _Envelope:
    st = PairState.from_config(cfg)
    spec = st.quad_spec(rel_tol=1e-9)

    def env(w):
        return np.abs(_weights(st, w)).sum(axis=(1, 2))

    q = integrate(env, spec, resonance=st.resonances())
    bp = q.breakpoints
    # trim panels that carry a negligible share of the envelope at either end
    val, _ = _gk_panels(env, bp[:-1], bp[1:])
    tot = val.sum(axis=-1, keepdims=True)
    # an identically zero row (lossless absorber) carries no share
    share = np.divide(val, tot, out=np.zeros_like(val), where=tot > 0).max(axis=0)
    tail = np.cumsum(share[::-1])[::-1]
    head = np.cumsum(share)
    keep = (tail > 1e-15) & (head > 1e-15)
    idx = np.nonzero(keep)[0]
    bp = bp[idx[0]: idx[-1] + 2]
    scale = np.asarray(q.value, dtype=float)
    return _Envelope(bp, np.where(scale > 0, scale, 1.0))


def kernel_scale(cfg: PairConfig, normalized: bool = True):
    """L1 norms (transfer, udot) of the kernels, 1 where a kernel vanishes identically."""
    s = _envelope(cfg).scale
    return s / PairState.from_config(cfg).norm if normalized else s.copy()


# ------------------------------------------------------------------ integrals

def flux_at(cfg: PairConfig, tau: float, rel_tol: float = 1e-8, normalized: bool = True) -> FluxDecomposition:
    """Total flux at one retarded time by adaptive frequency quadrature.

    The tolerance is relative to the L1 size of each kernel because the
    stored-energy term changes sign.
    """
    tau = _check_tau(tau)
    if tau < 0:
        return FluxDecomposition.build(0.0, 0.0, tau)
    st = PairState.from_config(cfg)
    scale = _envelope(cfg).scale
    period = 2 * math.pi / tau
    base = st.quad_spec()
    need = int(8 * (base.omega_max - base.omega_min) / period) + 4096
    spec = QuadSpec(rel_tol, rel_tol, base.omega_min, base.omega_max, max(base.max_panels, 4 * need))

    def f(w):
        t, u = _direct(st, w, tau)
        return np.stack([t / scale[0], u / scale[1]])

    q = integrate(f, spec, osc_period_hint=period, resonance=st.resonances())
    if not q.converged:
        raise NotConverged(f"flux_at(tau={tau:.3e}): quadrature did not converge", q)
    t, u = q.value[0] * scale[0], q.value[1] * scale[1]
    norm = st.norm if normalized else 1.0
    return FluxDecomposition.build(float(u / norm), float(t / norm), tau)


def _thread_count():
    env = os.environ.get("HEATFLUX_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


_BLOCK = 2_000_000  # tau x node entries per trig block


def flux_series(cfg: PairConfig, taus, normalized: bool = True, periods_per_panel: float = 0.75):
    """(udot, transfer) on an array of retarded times.

    Integrates the separable kernel weights against cos/sin(w tau) on a
    composite Kronrod rule whose panels never exceed ``periods_per_panel``
    oscillation periods of the largest tau in each block.
    """
    taus = np.asarray(taus, dtype=float)
    if np.any(taus == 0.0):
        raise DomainError("tau == 0 is the delta-pulse instant and is not represented")
    st = PairState.from_config(cfg)
    bp = _envelope(cfg).breakpoints
    udot = np.zeros(taus.shape)
    transfer = np.zeros(taus.shape)
    pos = np.nonzero(taus > 0)[0]
    if pos.size == 0:
        return udot, transfer
    order = pos[np.argsort(taus[pos], kind="stable")]
    ts = taus[order]

    # octave groups share a quadrature rule
    groups = []
    start = 0
    while start < ts.size:
        stop = int(np.searchsorted(ts, 2.0 * ts[start], side="right"))
        groups.append((start, max(stop, start + 1)))
        start = groups[-1][1]

    g, bt = st.mat2.gamma, st.mat2.beta
    res = np.empty((2, ts.size))
    tasks = []
    for lo, hi in groups:
        t_max = ts[hi - 1]
        nodes, wts = panel_rule(bp, max_width=periods_per_panel * 2 * math.pi / t_max)
        W = _weights(st, nodes) * wts  # (2, 3, 3, N)
        const = W[:, :, 0, :].sum(axis=-1)  # (2, 3)
        Wc = W[:, :, 1, :].reshape(6, -1).T  # (N, 6)
        Ws = W[:, :, 2, :].reshape(6, -1).T
        step = max(1, _BLOCK // nodes.size)
        for s in range(lo, hi, step):
            tasks.append((s, min(hi, s + step), nodes, const, Wc, Ws))

    def run(task):
        s, e, nodes, const, Wc, Ws = task
        t = ts[s:e]
        ph = np.outer(t, nodes)
        cpart = (np.cos(ph) @ Wc).reshape(-1, 2, 3)
        spart = (np.sin(ph) @ Ws).reshape(-1, 2, 3)
        amp = np.stack([np.ones_like(t), np.exp(-0.5 * g * t) * np.cos(bt * t),
                        np.exp(-0.5 * g * t) * np.sin(bt * t)], axis=-1)  # (m, 3)
        tot = const[None] + cpart + spart  # (m, 2, 3)
        return s, e, np.einsum("mqa,ma->qm", tot, amp)

    with ThreadPoolExecutor(max_workers=_thread_count()) as ex:
        for s, e, vals in ex.map(run, tasks):
            res[:, s:e] = vals

    norm = st.norm if normalized else 1.0
    transfer[order] = res[0] / norm
    udot[order] = res[1] / norm
    return udot, transfer


def default_tau_grid(cfg: PairConfig, tau_max: float, tau_min: float | None = None, samples_per_period: int = 64):
    """Uniform tau grid resolving the resonance oscillation (and thermal relaxation when cold)."""
    st = PairState.from_config(cfg)
    period = 2 * math.pi / max(st.mat1.omega0_alpha, st.mat2.omega0_alpha)
    if cfg.T1 < 100:
        period = min(period, 1.0 / (4 * st.omega_T))
    h = period / samples_per_period
    lo = h if tau_min is None else tau_min
    n = int(math.floor((tau_max - lo) / h + 1e-9)) + 1
    return lo + h * np.arange(n)


# ------------------------------------------------------------ energy densities

def energy_density_H(cfg: PairConfig, tau: float, normalized: bool = True) -> float:
    """Magnetic energy density at particle 2: stationary as soon as tau > 0."""
    tau = _check_tau(tau)
    if tau < 0:
        return 0.0
    return stationary_energy_density_H(cfg, normalized=normalized).value


def _density_integral(cfg, tau, rel_tol, f_builder, what):
    st = PairState.from_config(cfg)
    base = st.quad_spec()
    period = 2 * math.pi / tau
    need = int(8 * (base.omega_max - base.omega_min) / period) + 4096
    f, scale = f_builder(st)
    spec = QuadSpec(rel_tol, rel_tol, base.omega_min, base.omega_max, max(base.max_panels, 4 * need))
    q = integrate(lambda w: f(w) / scale, spec, osc_period_hint=period, resonance=st.resonances())
    if not q.converged:
        raise NotConverged(f"{what}(tau={tau:.3e}): quadrature did not converge", q)
    return st, float(q.value * scale)


def energy_density_E0(cfg: PairConfig, tau: float, rel_tol: float = 1e-9, normalized: bool = True) -> float:
    """Electric energy density at particle 2 from the field of particle 1 alone."""
    tau = _check_tau(tau)
    if tau < 0:
        return 0.0

    def build(st):
        d = st.d

        def f(w):
            x = C / (w * d)
            ph = w * tau
            base = HBAR / (2 * math.pi**2 * C**4) * thermal_weight(w, st.omega_T, 4) * im_alpha(st.mat1, w) / d**2
            return base * (1 + x**2 * (1 + 2 * np.cos(ph)) + 6 * x**3 * np.sin(ph) + 6 * x**4 * _one_minus_cos(ph))

        def env(w):
            x = C / (w * d)
            base = HBAR / (2 * math.pi**2 * C**4) * thermal_weight(w, st.omega_T, 4) * im_alpha(st.mat1, w) / d**2
            return base * (1 + 3 * x**2 + 6 * x**3 + 12 * x**4)

        return f, _l1(st, env)

    st, val = _density_integral(cfg, tau, rel_tol, build, "energy_density_E0")
    return val / st.V1 if normalized else val


def ddt_uE0(cfg: PairConfig, tau: float, rel_tol: float = 1e-9, normalized: bool = True) -> float:
    """Rate of change of the electric energy inside the empty volume V2."""
    tau = _check_tau(tau)
    if tau < 0:
        return 0.0

    def build(st):
        d = st.d
        k = HBAR * st.V2 / (math.pi**2 * C**4)

        def f(w):
            x = C / (w * d)
            ph = w * tau
            base = k * thermal_weight(w, st.omega_T, 5) * im_alpha(st.mat1, w) / d**2
            return base * (-x**2 * np.sin(ph) + 3 * x**3 * np.cos(ph) + 3 * x**4 * np.sin(ph))

        def env(w):
            x = C / (w * d)
            return k * thermal_weight(w, st.omega_T, 5) * im_alpha(st.mat1, w) / d**2 * (x**2 + 3 * x**3 + 3 * x**4)

        return f, _l1(st, env)

    st, val = _density_integral(cfg, tau, rel_tol, build, "ddt_uE0")
    return val / st.norm if normalized else val


def _l1(st: PairState, env):
    q = integrate(env, st.quad_spec(rel_tol=1e-6), resonance=st.resonances())
    return float(q.value)


def limit_tau0(cfg: PairConfig, normalized: bool = True, rel_tol: float = 1e-10):
    """Closed-form (udot, transfer) as tau -> 0+.  Only d^-3 and d^-5 survive."""
    st = PairState.from_config(cfg)
    m2, d = st.mat2, st.d
    spec = st.quad_spec(rel_tol=rel_tol)
    om2 = m2.omega0_alpha**2

    def f(w):
        n2 = thermal_weight(w, st.omega_T, 2) * im_alpha(st.mat1, w)
        return np.stack([
            n2 * re_alpha_dispersive(m2, w) * (w**2 - om2),
            n2,
            n2 * w * im_alpha(m2, w),
        ])

    q = integrate(f, spec, resonance=st.resonances())
    if not q.converged:
        raise NotConverged("limit_tau0: quadrature did not converge", q)
    i_re, i_plain, i_im = q.value
    udot3 = -4 * HBAR / (math.pi * C**3 * d**3) * i_re
    udot5 = 3 * (st.V2 + 4 * math.pi * m2.alpha_inf) * HBAR / (math.pi**2 * C * d**5) * i_plain
    transfer = 4 * HBAR * m2.gamma / (math.pi * C**3 * d**3) * i_im
    norm = st.norm if normalized else 1.0
    return float((udot3 + udot5) / norm), float(transfer / norm)


__all__ = [
    "CHANNELS", "FluxDecomposition", "KernelChannels", "interaction_integrals", "interaction_integrals_reconstructed",
    "damped_sine_integrals", "ddt_uE0", "default_tau_grid", "energy_density_E0", "energy_density_H",
    "flux_at", "flux_series", "interaction_spectra_from_channels", "kernel_scale", "limit_tau0",
    "transfer_spectrum", "udot_spectrum",
]
