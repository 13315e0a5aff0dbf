"""Time series and extrema summaries for the four SiC scenarios (near/far field, 300 K/30 K)."""

import argparse
import math
from pathlib import Path

import numpy as np

from heatflux.analysis import build_series, find_extrema, flux_average_model
from heatflux.errors import TooCoarse
from heatflux.materials import derived_material
from heatflux.stationary import sic_pair, stationary_flux

SCENARIOS = {
    "sic-300k-nearfield": (100e-9, 300.0, 6e-12),
    "sic-300k-farfield": (1e-3, 300.0, 6e-12),
    "sic-30k-nearfield": (100e-9, 30.0, 1e-12),
    "sic-30k-farfield": (1e-3, 30.0, 6e-12),
}


def run(name, out: Path, samples_per_period: int):
    d, T, tau_max = SCENARIOS[name]
    cfg = sic_pair(d, T)
    mat = derived_material(cfg.particle2)
    period = 2 * math.pi / mat.omega0_alpha
    h = period / samples_per_period
    taus = h * np.arange(1, int(tau_max / h) + 1)
    s = build_series(cfg, taus)
    h_st = stationary_flux(cfg).value
    avg = flux_average_model(h_st, mat.gamma, taus)
    np.savetxt(out / f"{name}.csv", np.column_stack([taus, s.total, s.udot, s.transfer, avg]),
               delimiter=",", fmt="%.16e", header="tau_s,total,udot,transfer,avg_model", comments="")
    print(f"{name}: H_st={h_st:.4e}  d/c={d / 299_792_458.0:.3e} s")
    for ch in ("total", "udot", "transfer"):
        try:
            ex = find_extrema(s, ch, period=period)
        except TooCoarse:
            print(f"  {ch:8s} monotone over the window")
            continue
        parts = []
        if ex.maxima.size:
            t, v = ex.global_max()
            parts.append(f"max {v / h_st:+.4f} H_st at {t * 1e12:.4f} ps")
        if ex.minima.size:
            t, v = ex.global_min()
            parts.append(f"min {v / h_st:+.4f} H_st at {t * 1e12:.4f} ps")
        print(f"  {ch:8s} " + "; ".join(parts))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("scenario", nargs="*", default=list(SCENARIOS), help=f"any of {list(SCENARIOS)}")
    ap.add_argument("--out", type=Path, default=Path("out"))
    ap.add_argument("--samples-per-period", type=int, default=64)
    args = ap.parse_args()
    unknown = set(args.scenario) - set(SCENARIOS)
    if unknown:
        ap.error(f"unknown scenario(s) {sorted(unknown)}")
    args.out.mkdir(parents=True, exist_ok=True)
    for name in args.scenario:
        run(name, args.out, args.samples_per_period)


if __name__ == "__main__":
    main()
