"""Envelope fit of the total-flux maxima at 300 K, 100 nm, and the far-field formula error at 1 mm."""

import argparse
import warnings
from pathlib import Path

import numpy as np

from heatflux.analysis import (
    build_series,
    far_field_approx,
    find_extrema,
    fit_max_params,
    flux_max_model,
)
from heatflux.errors import OutOfValidity
from heatflux.materials import derived_material
from heatflux.stationary import sic_pair, stationary_flux
from heatflux.transient import default_tau_grid


def near_fit(out: Path):
    cfg = sic_pair(100e-9, 300.0)
    mat = derived_material(cfg.particle2)
    s = build_series(cfg, default_tau_grid(cfg, 6e-12))
    h_st = stationary_flux(cfg).value
    ex = find_extrema(s, "total")
    tm, phi = ex.global_max()
    fp = fit_max_params(tm, phi, h_st, mat.gamma)
    mx = ex.maxima[ex.maxima[:, 0] > 0.5e-12]
    model = flux_max_model(fp, mx[:, 0])
    err = np.abs(model - mx[:, 1]) / mx[:, 1]
    np.savetxt(out / "maxima_fit.csv", np.column_stack([mx, model]), delimiter=",", fmt="%.16e",
               header="tau_s,max_total,model", comments="")
    print(f"tau_max={tm * 1e12:.4f} ps  phi_max={phi:.4e}  a={fp.a:.4e}  b={fp.b:.4e}  "
          f"max model error (tau>0.5 ps)={err.max():.3%}")


def far_formula(out: Path):
    cfg = sic_pair(1e-3, 300.0)
    mat = derived_material(cfg.particle2)
    taus = np.geomspace(9.1e-15, 9.1e-12, 3000)
    s = build_series(cfg, taus)
    h_st = stationary_flux(cfg).value
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutOfValidity)
        approx = far_field_approx(h_st, mat.gamma, mat.omega0_alpha, taus)
    err = np.abs(approx - s.total) / np.abs(s.total)
    np.savetxt(out / "farfield_formula.csv", np.column_stack([taus, s.total, approx, err]), delimiter=",",
               fmt="%.16e", header="tau_s,total,approx,rel_err", comments="")
    k = int(np.argmax(err))
    late = taus > 5e-12
    print(f"far-field formula: max rel err {err[k]:.3%} at {taus[k]:.3e} s; "
          f"max for tau > 5 ps {err[late].max():.3%}; gamma/(2 w0a) = {mat.gamma / (2 * mat.omega0_alpha):.3%}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("out"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    near_fit(args.out)
    far_formula(args.out)


if __name__ == "__main__":
    main()
