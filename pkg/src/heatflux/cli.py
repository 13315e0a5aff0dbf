"""Command-line drivers: distance sweeps, time series, spectra, extrema and oracles.

Exit codes: 0 ok, 2 configuration or sampling error, 3 quadrature did not
converge, 4 an oracle failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .analysis import (
    SERIES_CHANNELS,
    TimeSeries,
    build_series,
    far_field_approx,
    find_extrema,
    fit_max_params,
    flux_average_model,
    near_field_approx,
)
from .config import PRESETS, RunConfig, load_config, preset
from .errors import ConfigError, DegenerateFit, DomainError, NotConverged, OutOfValidity, TooCoarse
from .materials import derived_material, thermal_scales
from .stationary import PairState, stationary_flux, stationary_flux_spectrum
from .transient import _thread_count, flux_at, transfer_spectrum, udot_spectrum
from .validation import run_all

EXIT_OK, EXIT_CONFIG, EXIT_CONVERGENCE, EXIT_ORACLE = 0, 2, 3, 4

EQUATIONS = {
    "stationary": "vacuum dipole-dipole stationary transfer; d^-2, d^-4, d^-6 channels",
    "transient": "retarded-time flux = energy change + heat transfer; closed-form time integrals, vacuum",
    "spectrum": "frequency integrands of energy change, heat transfer and stationary transfer",
    "extrema": "sign-change extrema with parabolic refinement; tau^(3/4) maxima envelope fit",
    "validate": "closed forms vs quadrature, Green-tensor traces, stationary limit, energy derivative",
}


class Table:
    """Column-named rows plus header metadata, rendered as CSV or JSON."""

    def __init__(self, columns, meta):
        self.columns = list(columns)
        self.meta = dict(meta)
        self.rows = []

    def add(self, *row):
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} fields, expected {len(self.columns)}")
        self.rows.append(row)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            rows = [[_json_value(v) for v in r] for r in self.rows]
            return json.dumps({"meta": self.meta, "columns": self.columns, "rows": rows}, indent=1) + "\n"
        buf = io.StringIO()
        for k, v in self.meta.items():
            buf.write(f"# {k}: {v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([_csv_value(v) for v in r])
        return buf.getvalue()


def _csv_value(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.16e}"
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    return str(v)


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def _resolve(args) -> RunConfig:
    if args.config and args.preset:
        raise ConfigError("give either --config or --preset, not both")
    cfg = load_config(args.config) if args.config else preset(args.preset or "sic-300k-nearfield")
    kw = {}
    if args.rel_tol is not None:
        kw["rel_tol"] = args.rel_tol
    if args.output is not None:
        kw["output_path"] = args.output
    if args.format is not None:
        kw["output_format"] = args.format
    return cfg.replace(**kw) if kw else cfg


def _meta(cfg: RunConfig | None, command: str, args, **extra):
    meta = {"tool": f"heatflux {__version__}", "command": command, "equations": EQUATIONS[command]}
    if cfg is not None:
        meta["config_hash"] = cfg.digest()
        meta["distance_m"] = repr(cfg.distance_m)
        meta["temperature_K"] = repr(cfg.temperature_K)
    meta["seed"] = args.seed
    for k, v in extra.items():
        meta[k] = v if isinstance(v, str) else repr(v)
    return meta


def _emit(table: Table, cfg: RunConfig | None, args):
    fmt = args.format or (cfg.output_format if cfg else "csv")
    path = args.output or (cfg.output_path if cfg else None)
    text = table.render(fmt)
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pair_spec(cfg: RunConfig, pair):
    st = PairState.from_config(pair)
    return st.quad_spec(rel_tol=cfg.rel_tol or 1e-8, omega_max=cfg.omega_max)


# ------------------------------------------------------------------ commands

def cmd_stationary(args) -> int:
    cfg = _resolve(args)
    if not args.d_min < args.d_max:
        raise ConfigError("--d-min must be smaller than --d-max")
    if args.d_min <= 0 or args.points_per_decade < 1:
        raise ConfigError("--d-min and --points-per-decade must be positive")
    decades = math.log10(args.d_max / args.d_min)
    n = max(2, int(round(decades * args.points_per_decade)) + 1)
    ds = np.geomspace(args.d_min, args.d_max, n)
    ds[0], ds[-1] = args.d_min, args.d_max  # geomspace may round the endpoints

    def point(d):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)  # dipole-size warning at tiny d
            pair = cfg.pair(float(d))
        return stationary_flux(pair, _pair_spec(cfg, pair))

    with ThreadPoolExecutor(max_workers=_thread_count()) as ex:
        results = list(ex.map(point, ds))
    table = Table(["d_m", "flux_norm_J_s^-1_m^-6", "frac_d2", "frac_d4", "frac_d6"],
                  _meta(cfg, "stationary", args, lambda_T_m=thermal_scales(cfg.temperature_K).lambda_T))
    for d, r in zip(ds, results):
        table.add(float(d), r.value, *(r.channels[p] / r.value for p in (2, 4, 6)))
    _emit(table, cfg, args)
    return EXIT_OK


def _approx_column(cfg: RunConfig, series: TimeSeries, h_st: float):
    """Near- or far-field closed-form approximation on the series grid."""
    pair = cfg.pair()
    mat = derived_material(pair.particle2)
    lam = thermal_scales(cfg.temperature_K).lambda_T
    t = series.taus
    if pair.d >= lam:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", OutOfValidity)
            out = far_field_approx(h_st, mat.gamma, mat.omega0_alpha, t)
        return "far", np.where(t > math.pi / (2 * mat.omega0_alpha), out, np.nan)
    try:
        tm, phi = find_extrema(series, "total").global_max()
        fp = fit_max_params(tm, phi, h_st, mat.gamma)
    except (ValueError, DegenerateFit):
        return "near", np.full(t.shape, np.nan)
    return "near", near_field_approx(fp, mat.omega0_alpha, t)


def _series_for(cfg: RunConfig, args) -> TimeSeries:
    pair = cfg.pair()
    st = PairState.from_config(pair)
    period = 2 * math.pi / st.mat2.omega0_alpha
    if args.samples_per_period < 16:
        raise ConfigError("--samples-per-period must be at least 16")
    h = period / args.samples_per_period
    tau_min = args.tau_min if args.tau_min is not None else h
    if not tau_min > 0:
        raise ConfigError("--tau-min must be > 0")
    if not args.tau_max > tau_min:
        raise ConfigError("--tau-max must exceed --tau-min")
    n = int(math.floor((args.tau_max - tau_min) / h + 1e-9)) + 1
    taus = tau_min + h * np.arange(n)
    if args.method == "series":
        return build_series(pair, taus)
    rel = cfg.rel_tol or 1e-8

    def point(t):
        return flux_at(pair, float(t), rel_tol=rel)

    with ThreadPoolExecutor(max_workers=_thread_count()) as ex:
        res = list(ex.map(point, taus))
    u = np.array([r.udot for r in res])
    tr = np.array([r.transfer for r in res])
    return TimeSeries(taus, u + tr, u, tr)


def cmd_transient(args) -> int:
    cfg = _resolve(args)
    pair = cfg.pair()
    series = _series_for(cfg, args)
    h_st = stationary_flux(pair, _pair_spec(cfg, pair)).value
    gamma = derived_material(pair.particle2).gamma
    avg = flux_average_model(h_st, gamma, series.taus)
    regime, approx = _approx_column(cfg, series, h_st)
    meta = _meta(cfg, "transient", args, method=args.method, delay_d_over_c_s=pair.d / 299_792_458.0,
                 H_st=h_st, approx_regime=regime)
    table = Table(["tau_s", "total", "udot", "transfer", "avg_model", "approx"], meta)
    for row in zip(series.taus, series.total, series.udot, series.transfer, avg, approx):
        table.add(*map(float, row))
    _emit(table, cfg, args)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    cfg = _resolve(args)
    pair = cfg.pair()
    if not args.tau > 0:
        raise ConfigError("--tau must be > 0")
    st = PairState.from_config(pair)
    spec = _pair_spec(cfg, pair)
    lo = args.omega_min if args.omega_min is not None else spec.omega_min
    hi = args.omega_max if args.omega_max is not None else min(spec.omega_max, 4 * st.mat2.omega0_alpha)
    if not 0 < lo < hi:
        raise ConfigError("need 0 < omega-min < omega-max")
    w = np.linspace(lo, hi, args.points)
    u = udot_spectrum(pair, w, args.tau)
    t = transfer_spectrum(pair, w, args.tau)
    s = stationary_flux_spectrum(pair, w)
    table = Table(["omega_rad_s", "udot_spectrum", "transfer_spectrum", "stationary_spectrum"],
                  _meta(cfg, "spectrum", args, tau_s=args.tau))
    for row in zip(w, u, t, s):
        table.add(*map(float, row))
    _emit(table, cfg, args)
    return EXIT_OK


def _read_series(path: str) -> TimeSeries:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh if not ln.startswith("#")]
    except OSError as exc:
        raise ConfigError(f"cannot read series {path!r}: {exc}") from None
    rows = list(csv.DictReader(lines))
    if not rows or "tau_s" not in rows[0]:
        raise ConfigError(f"{path!r} needs a tau_s column")
    try:
        taus = np.array([float(r["tau_s"]) for r in rows])
        cols = {}
        for name in SERIES_CHANNELS:
            cols[name] = np.array([float(r[name]) for r in rows]) if name in rows[0] else None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{path!r}: unreadable number ({exc})") from None
    if cols["total"] is None:
        if cols["udot"] is None or cols["transfer"] is None:
            raise ConfigError(f"{path!r} needs a total column or both udot and transfer")
        cols["total"] = cols["udot"] + cols["transfer"]
    zeros = np.zeros_like(taus)
    return TimeSeries(taus, cols["total"],
                      cols["udot"] if cols["udot"] is not None else zeros,
                      cols["transfer"] if cols["transfer"] is not None else zeros)


def cmd_extrema(args) -> int:
    cfg = _resolve(args)
    pair = cfg.pair()
    mat = derived_material(pair.particle2)
    period = 2 * math.pi / mat.omega0_alpha
    series = _read_series(args.input) if args.input else _series_for(cfg, args)
    h_st = stationary_flux(pair, _pair_spec(cfg, pair)).value
    table = Table(["record", "channel", "tau_s", "value"],
                  _meta(cfg, "extrema", args, source=args.input or "computed", H_st=h_st))
    step = float(np.max(np.diff(series.taus)))
    if step > period / 16:
        raise TooCoarse(f"sampling step {step:.3e} s exceeds period/16 = {period / 16:.3e} s")
    fit_src = None
    found, flat = 0, []
    for ch in SERIES_CHANNELS:
        if not np.any(series.channel(ch)):
            continue
        try:
            ex = find_extrema(series, ch, period=period)
        except TooCoarse:
            # sampling is fine (checked above), so the channel is simply monotone
            flat.append(ch)
            continue
        found += 1
        for kind, arr in (("max", ex.maxima), ("min", ex.minima), ("avg", ex.averages)):
            for tau, v in arr:
                table.add(kind, ch, float(tau), float(v))
        if ch == "total" and ex.maxima.size:
            fit_src = ex.global_max()
    if not found:
        raise TooCoarse(f"no extrema in any channel over {series.taus[-1] - series.taus[0]:.3e} s")
    if flat:
        table.meta["monotone_channels"] = ",".join(flat)
    if fit_src is not None:
        fp = fit_max_params(fit_src[0], fit_src[1], h_st, mat.gamma)
        for name in ("a", "b", "tau_max", "phi_max"):
            table.add("fit", name, math.nan, float(getattr(fp, name)))
    _emit(table, cfg, args)
    return EXIT_OK


def cmd_validate(args) -> int:
    reports = run_all(seed=args.seed, n_samples=args.n_samples)
    table = Table(["oracle", "samples", "max_rel_err", "tolerance", "pass"],
                  _meta(None, "validate", args, n_samples=args.n_samples if args.n_samples else "default"))
    for r in reports:
        print(r.line(), file=sys.stderr)
        table.add(r.name, r.samples, float(r.max_rel_err), float(r.tolerance), bool(r.passed))
    _emit(table, None, args)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_ORACLE


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="INI run configuration")
    common.add_argument("--preset", choices=sorted(PRESETS), help="built-in scenario (default sic-300k-nearfield)")
    common.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="heatflux", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"heatflux {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("stationary", parents=[common], help="stationary transfer vs distance")
    s.add_argument("--d-min", type=float, default=1e-8)
    s.add_argument("--d-max", type=float, default=1e-1)
    s.add_argument("--points-per-decade", type=int, default=32)
    s.set_defaults(func=cmd_stationary)

    def series_flags(q):
        q.add_argument("--tau-min", type=float, default=None, help="default: one sampling step")
        q.add_argument("--tau-max", type=float, default=6e-12)
        q.add_argument("--samples-per-period", type=int, default=64)
        q.add_argument("--method", choices=("series", "adaptive"), default="series")

    t = sub.add_parser("transient", parents=[common], help="flux, energy change and transfer vs retarded time")
    series_flags(t)
    t.set_defaults(func=cmd_transient)

    sp = sub.add_parser("spectrum", parents=[common], help="frequency integrands at one retarded time")
    sp.add_argument("--tau", type=float, required=True)
    sp.add_argument("--omega-min", type=float, default=None)
    sp.add_argument("--omega-max", type=float, default=None)
    sp.add_argument("--points", type=int, default=2000)
    sp.set_defaults(func=cmd_spectrum)

    e = sub.add_parser("extrema", parents=[common], help="maxima, minima, averages and envelope fit")
    e.add_argument("--input", metavar="CSV", help="series CSV (tau_s plus total and/or udot, transfer)")
    series_flags(e)
    e.set_defaults(func=cmd_extrema)

    v = sub.add_parser("validate", parents=[common], help="run the oracle suite")
    v.add_argument("--n-samples", type=int, default=None)
    v.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError, TooCoarse) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NotConverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
