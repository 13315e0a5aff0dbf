import csv
import io
import json

import numpy as np
import pytest

from heatflux import __version__
from heatflux.cli import main

CFG = """
[run]
distance_m = 1e-7
temperature_K = 300
[particle1]
eps_inf = 6.7
omega0_rad_s = 1.49e14
omegap_rad_s = 2.71e14
gamma_rad_s = 8.93e11
radius_m = 5e-9
[particle2]
eps_inf = 6.7
omega0_rad_s = 1.49e14
omegap_rad_s = 2.71e14
gamma_rad_s = 8.93e11
radius_m = 5e-9
"""


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def table(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


def header(text):
    return dict(ln[2:].split(": ", 1) for ln in text.splitlines() if ln.startswith("# "))


def test_stationary_single_point(capsys):
    code, out, _ = run(capsys, "stationary", "--d-min", "1e-7", "--d-max", "1.0001e-7", "--points-per-decade", "1")
    assert code == 0
    rows = table(out)
    assert float(rows[0]["flux_norm_J_s^-1_m^-6"]) == pytest.approx(1.15e34, rel=0.02)
    fr = sum(float(rows[0][k]) for k in ("frac_d2", "frac_d4", "frac_d6"))
    assert fr == pytest.approx(1.0, rel=1e-12)
    h = header(out)
    assert h["tool"] == f"heatflux {__version__}"
    assert len(h["config_hash"]) == 16 and "equations" in h
    assert float(rows[0]["d_m"]) == 1e-7  # 17 significant digits round-trip exactly


def test_stationary_sweep_crossover(capsys):
    code, out, _ = run(capsys, "stationary", "--d-min", "1e-8", "--d-max", "1e-1", "--points-per-decade", "4")
    rows = table(out)
    d = np.array([float(r["d_m"]) for r in rows])
    f = np.array([float(r["flux_norm_J_s^-1_m^-6"]) for r in rows])
    slope = np.diff(np.log(f)) / np.diff(np.log(d))
    assert slope[0] == pytest.approx(-6, abs=0.05) and slope[-1] == pytest.approx(-2, abs=0.05)
    # d^-2 takes over at a few microns, below the 7.63 um thermal wavelength
    f2 = np.array([float(r["frac_d2"]) for r in rows])
    cross = d[np.argmax(f2 > 0.5)]
    assert 1e-6 < cross < 7.63e-6


def test_deterministic_output(capsys, tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text(CFG)
    args = ["transient", "--config", str(cfg), "--tau-max", "2e-13"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    _, c, _ = run(capsys, "transient", "--preset", "sic-300k-nearfield", "--tau-max", "2e-13")
    assert header(a)["config_hash"] == header(c)["config_hash"]
    assert a == c


def test_transient_columns_and_delay(capsys):
    code, out, _ = run(capsys, "transient", "--preset", "sic-300k-farfield", "--tau-max", "1e-13")
    assert code == 0
    rows = table(out)
    assert list(rows[0]) == ["tau_s", "total", "udot", "transfer", "avg_model", "approx"]
    h = header(out)
    assert float(h["delay_d_over_c_s"]) == pytest.approx(1e-3 / 299_792_458.0, rel=1e-12)
    assert h["approx_regime"] == "far"
    for r in rows:
        assert float(r["total"]) == float(r["udot"]) + float(r["transfer"])


def test_transient_adaptive_matches_series(capsys):
    base = ["transient", "--tau-min", "1e-13", "--tau-max", "1.1e-13", "--samples-per-period", "16"]
    _, a, _ = run(capsys, *base, "--method", "series")
    _, b, _ = run(capsys, *base, "--method", "adaptive")
    ra, rb = table(a), table(b)
    h = float(header(a)["H_st"])
    for x, y in zip(ra, rb):
        assert abs(float(x["total"]) - float(y["total"])) < 1e-6 * h


def test_spectrum_rows(capsys):
    code, out, _ = run(capsys, "spectrum", "--tau", "1.12e-12", "--points", "400")
    assert code == 0
    rows = table(out)
    w = np.array([float(r["omega_rad_s"]) for r in rows])
    t = np.array([float(r["transfer_spectrum"]) for r in rows])
    assert np.all(np.isfinite(t))
    assert abs(w[np.argmax(t)] - 1.75e14) < 0.02 * 1.75e14


def test_json_format(capsys):
    code, out, _ = run(capsys, "spectrum", "--tau", "1e-12", "--points", "5", "--format", "json")
    doc = json.loads(out)
    assert doc["columns"][0] == "omega_rad_s" and len(doc["rows"]) == 5
    assert doc["meta"]["command"] == "spectrum"


def test_extrema_from_input(capsys, tmp_path):
    _, out, _ = run(capsys, "transient", "--tau-max", "6e-12")
    p = tmp_path / "series.csv"
    p.write_text(out)
    code, ext, _ = run(capsys, "extrema", "--input", str(p))
    assert code == 0
    rows = table(ext)
    fit = {r["channel"]: float(r["value"]) for r in rows if r["record"] == "fit"}
    assert fit["tau_max"] == pytest.approx(2.854e-12, rel=0.03)
    assert fit["phi_max"] == pytest.approx(1.88e34, rel=0.03)


def test_extrema_too_coarse_exit_code(capsys, tmp_path):
    t = np.arange(1, 200) * 5e-15
    p = tmp_path / "coarse.csv"
    p.write_text("tau_s,total\n" + "\n".join(f"{float(x)!r},{float(np.cos(1.75e14 * x))!r}" for x in t))
    code, _, err = run(capsys, "extrema", "--input", str(p))
    assert code == 2 and "period" in err


def test_config_errors_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.ini"
    bad.write_text(CFG + "colour = red\n")
    assert run(capsys, "stationary", "--config", str(bad))[0] == 2
    assert run(capsys, "stationary", "--d-min", "1e-6", "--d-max", "1e-7")[0] == 2
    assert run(capsys, "spectrum", "--tau=-1e-12")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["stationary", "--preset", "nope"])
    assert e.value.code == 2


def test_nonconvergence_exit_3(capsys, monkeypatch):
    from heatflux import cli
    from heatflux.errors import NotConverged

    def fail(*a, **k):
        raise NotConverged("forced")

    monkeypatch.setattr(cli, "stationary_flux", fail)
    assert run(capsys, "stationary", "--d-min", "1e-7", "--d-max", "2e-7")[0] == 3


def test_validate_smoke(capsys, tmp_path):
    out = tmp_path / "report.csv"
    code, _, err = run(capsys, "validate", "--n-samples", "10", "--output", str(out))
    assert code == 0
    assert err.count("PASS") == 6
    rows = table(out.read_text())
    assert all(r["pass"] == "true" for r in rows)


def test_validate_failure_exit_4(capsys, monkeypatch):
    from heatflux import cli
    from heatflux.validation import OracleReport

    monkeypatch.setattr(cli, "run_all", lambda seed, n_samples: [OracleReport("x", 1, 1.0, 1e-8, False)])
    assert run(capsys, "validate")[0] == 4
