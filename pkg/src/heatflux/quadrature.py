"""Adaptive Gauss-Kronrod integration along the frequency axis.

The spectra integrated in this package combine a Planck cutoff, a sharp
polarizability resonance of width ~gamma and, for transient observables,
cos(w tau)/sin(w tau) factors.  :func:`integrate` handles all three with
nested G7/K15 panels and bisection on the local error.  The integrand may be
vector valued (shape ``(..., n)`` for ``n`` frequencies); every component is
then held to its own tolerance and the panel set is shared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .materials import DerivedMaterial, thermal_scales

# QUADPACK qk15 abscissae/weights (positive half, centre last).
_XK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK[:-1], _WK[::-1]])
# Gauss nodes are the odd-indexed Kronrod nodes.
_g_half = np.zeros(8)
_g_half[1::2] = _WG
GAUSS_WEIGHTS = np.concatenate([_g_half[:-1], _g_half[::-1]])

# Upper bound on panels evaluated in one call to the integrand.
_EVAL_CHUNK = 4096


@dataclass(frozen=True)
class QuadSpec:
    rel_tol: float = 1e-8
    abs_tol: float = 0.0
    omega_min: float = 1.0
    omega_max: float = 2.0
    max_panels: int = 400_000

    def __post_init__(self):
        if not 0 < self.omega_min < self.omega_max:
            raise ValueError("need 0 < omega_min < omega_max")
        if not 0 < self.rel_tol <= 1e-2:
            raise ValueError("rel_tol must lie in (0, 1e-2]")
        if self.max_panels < 16:
            raise ValueError("max_panels must be >= 16")
        if self.abs_tol < 0:
            raise ValueError("abs_tol must be >= 0")


@dataclass(frozen=True)
class QuadResult:
    value: object
    err_estimate: object
    panels_used: int
    converged: bool
    breakpoints: np.ndarray | None = None


def default_cutoffs(T1: float, mat: DerivedMaterial) -> tuple[float, float]:
    """Integration window: Planck tail beyond 50 w_T or resonance tail beyond 40 gamma."""
    wT = thermal_scales(T1).omega_T
    return 1e-8 * wT, max(50.0 * wT, mat.omega0_alpha + 40.0 * mat.gamma)


def initial_breakpoints(lo, hi, osc_period_hint=None, resonance=None, n_base=16):
    """Starting partition of [lo, hi].

    ``resonance`` is ``(omega0_alpha, gamma)`` or a sequence of such pairs;
    panels of width gamma/4 are laid over +-16 gamma around each peak.
    """
    width = (hi - lo) / n_base
    if osc_period_hint is not None:
        width = min(width, osc_period_hint / 8.0)
    n = int(math.ceil((hi - lo) / width - 1e-9))
    pts = [np.linspace(lo, hi, n + 1)]
    if resonance is not None:
        if np.ndim(resonance) == 1:
            resonance = [resonance]
        for w0, g in resonance:
            local = w0 + 0.25 * g * np.arange(-64, 65)
            pts.append(local[(local > lo) & (local < hi)])
    bp = np.unique(np.concatenate(pts))
    # drop slivers produced by the union
    keep = np.concatenate([[True], np.diff(bp) > 1e-12 * (hi - lo)])
    bp = bp[keep]
    bp[-1] = hi
    return bp


def _gk_panels(f, a, b):
    """Kronrod value and |K15 - G7| for each panel; leading axes from f."""
    vals, errs = [], []
    for s in range(0, a.size, _EVAL_CHUNK):
        aa, bb = a[s:s + _EVAL_CHUNK], b[s:s + _EVAL_CHUNK]
        half = 0.5 * (bb - aa)
        mid = 0.5 * (bb + aa)
        x = (mid[:, None] + half[:, None] * NODES[None, :]).ravel()
        y = np.asarray(f(x), dtype=float)
        y = y.reshape(y.shape[:-1] + (aa.size, NODES.size))
        k = (y @ KRONROD_WEIGHTS) * half
        g = (y @ GAUSS_WEIGHTS) * half
        vals.append(k)
        errs.append(np.abs(k - g))
    return np.concatenate(vals, axis=-1), np.concatenate(errs, axis=-1)


def integrate(f, spec: QuadSpec, osc_period_hint=None, resonance=None, breakpoints=None) -> QuadResult:
    """Integrate ``f`` over [spec.omega_min, spec.omega_max].

    ``osc_period_hint`` is the oscillation period in w (2 pi / tau) when the
    integrand carries cos(w tau) or sin(w tau).  An explicit ``breakpoints``
    array overrides the automatic starting partition.  The result is
    deterministic: panels are kept in order and summed by index.
    """
    if breakpoints is None:
        breakpoints = initial_breakpoints(spec.omega_min, spec.omega_max, osc_period_hint, resonance)
    a = np.asarray(breakpoints[:-1], dtype=float)
    b = np.asarray(breakpoints[1:], dtype=float)
    if a.size > spec.max_panels:
        raise ValueError(f"initial partition needs {a.size} panels > max_panels={spec.max_panels}")

    val, err = _gk_panels(f, a, b)
    total_width = spec.omega_max - spec.omega_min
    converged = False
    while True:
        total = val.sum(axis=-1)
        total_err = err.sum(axis=-1)
        tol = np.maximum(spec.rel_tol * np.abs(total), spec.abs_tol)
        if np.all(total_err <= tol):
            converged = True
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = err / np.where(tol > 0, tol, np.inf)[..., None]
            ratio = np.where(np.isnan(ratio), np.inf, ratio)
        if ratio.ndim > 1:
            ratio = ratio.reshape(-1, ratio.shape[-1]).max(axis=0)
        split = ratio > (b - a) / total_width
        # panels already at floating-point resolution cannot be bisected
        split &= (b - a) > 1e-13 * np.maximum(np.abs(a), np.abs(b))
        n_split = int(split.sum())
        if n_split == 0 or a.size + n_split > spec.max_panels:
            break
        mid = 0.5 * (a[split] + b[split])
        new_a = np.concatenate([a[split], mid])
        new_b = np.concatenate([mid, b[split]])
        nv, ne = _gk_panels(f, new_a, new_b)
        a = np.concatenate([a[~split], new_a])
        b = np.concatenate([b[~split], new_b])
        val = np.concatenate([val[..., ~split], nv], axis=-1)
        err = np.concatenate([err[..., ~split], ne], axis=-1)
        order = np.argsort(a, kind="stable")
        a, b = a[order], b[order]
        val, err = val[..., order], err[..., order]

    total = val.sum(axis=-1)
    total_err = err.sum(axis=-1)
    bp = np.concatenate([a, b[-1:]])
    if np.ndim(total) == 0:
        total, total_err = float(total), float(total_err)
    return QuadResult(total, total_err, int(a.size), converged, bp)


def panel_rule(breakpoints, max_width=None):
    """Nodes and weights of a composite K15 rule on the given partition.

    Panels wider than ``max_width`` are split evenly first.  Used to
    evaluate many Fourier integrals of the same weight functions at once.
    """
    bp = np.asarray(breakpoints, dtype=float)
    a, b = bp[:-1], bp[1:]
    if max_width is not None:
        pieces = np.maximum(1, np.ceil((b - a) / max_width - 1e-9).astype(int))
        if np.any(pieces > 1):
            rep_a = np.repeat(a, pieces)
            rep_w = np.repeat((b - a) / pieces, pieces)
            idx = np.concatenate([np.arange(p) for p in pieces])
            starts = rep_a + idx * rep_w
            ends = starts + rep_w
            a, b = starts, ends
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    nodes = (mid[:, None] + half[:, None] * NODES[None, :]).ravel()
    weights = (half[:, None] * KRONROD_WEIGHTS[None, :]).ravel()
    return nodes, weights
