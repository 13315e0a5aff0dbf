"""Run configuration: strict INI parsing and built-in scenario presets.

Layout::

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
    ...

    [quadrature]        ; optional
    rel_tol = 1e-8
    omega_max = 2e15

    [output]            ; optional
    path = out.csv
    format = csv
"""

from __future__ import annotations

import configparser
import hashlib
import json
from dataclasses import asdict, dataclass

from .errors import ConfigError
from .materials import SIC, DrudeLorentzParams, Particle
from .stationary import PairConfig

_PARTICLE_KEYS = ("eps_inf", "omega0_rad_s", "omegap_rad_s", "gamma_rad_s", "radius_m")
_SECTIONS = {
    "run": ({"distance_m", "temperature_K"}, set()),
    "particle1": (set(_PARTICLE_KEYS), set()),
    "particle2": (set(_PARTICLE_KEYS), set()),
    "quadrature": (set(), {"rel_tol", "omega_max"}),
    "output": (set(), {"path", "format"}),
}
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ParticleSpec:
    eps_inf: float
    omega0_rad_s: float
    omegap_rad_s: float
    gamma_rad_s: float
    radius_m: float

    def particle(self) -> Particle:
        mat = DrudeLorentzParams(self.eps_inf, self.omega0_rad_s, self.omegap_rad_s, self.gamma_rad_s)
        return Particle(mat, self.radius_m)


@dataclass(frozen=True)
class RunConfig:
    particle1: ParticleSpec
    particle2: ParticleSpec
    distance_m: float
    temperature_K: float
    rel_tol: float | None = None
    omega_max: float | None = None
    output_path: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise ConfigError(f"output format must be one of {FORMATS}, got {self.output_format!r}")
        if self.rel_tol is not None and not 0 < self.rel_tol <= 1e-2:
            raise ConfigError(f"rel_tol must lie in (0, 1e-2], got {self.rel_tol!r}")
        if self.omega_max is not None and not self.omega_max > 0:
            raise ConfigError(f"omega_max must be > 0, got {self.omega_max!r}")
        # re-run the physics-level checks now rather than deep inside a sweep
        from .materials import derived_material

        for p in (self.particle1, self.particle2):
            derived_material(p.particle())
        self.pair()

    def pair(self, distance_m: float | None = None) -> PairConfig:
        return PairConfig(self.particle1.particle(), self.particle2.particle(),
                          self.distance_m if distance_m is None else distance_m, self.temperature_K)

    def physics(self) -> dict:
        """Fields that determine the numbers (output location excluded)."""
        d = asdict(self)
        d.pop("output_path")
        d.pop("output_format")
        return d

    def digest(self) -> str:
        blob = json.dumps(self.physics(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def replace(self, **kw) -> "RunConfig":
        d = asdict(self)
        d["particle1"] = self.particle1
        d["particle2"] = self.particle2
        d.update(kw)
        return RunConfig(**d)


SIC_SPEC = ParticleSpec(SIC.eps_inf, SIC.omega0, SIC.omegap, SIC.gamma, 5e-9)

PRESETS = {
    "sic-300k-nearfield": (100e-9, 300.0),
    "sic-300k-farfield": (1e-3, 300.0),
    "sic-30k-nearfield": (100e-9, 30.0),
    "sic-30k-farfield": (1e-3, 30.0),
}


def preset(name: str) -> RunConfig:
    try:
        d, T = PRESETS[name]
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return RunConfig(SIC_SPEC, SIC_SPEC, d, T)


def _float(section, key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"[{section}] {key} = {raw!r} is not a number") from None


def parse_config(text: str) -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
    cp.optionxform = str  # keep key case; temperature_K is case-sensitive
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    unknown = set(cp.sections()) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown section(s): {sorted(unknown)}")
    values = {}
    for sec, (required, optional) in _SECTIONS.items():
        if not cp.has_section(sec):
            if required:
                raise ConfigError(f"missing section [{sec}]")
            continue
        keys = set(cp[sec].keys())
        extra = keys - required - optional
        if extra:
            raise ConfigError(f"unknown key(s) in [{sec}]: {sorted(extra)}")
        missing = required - keys
        if missing:
            raise ConfigError(f"missing key(s) in [{sec}]: {sorted(missing)}")
        values[sec] = dict(cp[sec])

    def particle(sec):
        return ParticleSpec(*(_float(sec, k, values[sec][k]) for k in _PARTICLE_KEYS))

    quad = values.get("quadrature", {})
    out = values.get("output", {})
    return RunConfig(
        particle1=particle("particle1"),
        particle2=particle("particle2"),
        distance_m=_float("run", "distance_m", values["run"]["distance_m"]),
        temperature_K=_float("run", "temperature_K", values["run"]["temperature_K"]),
        rel_tol=_float("quadrature", "rel_tol", quad["rel_tol"]) if "rel_tol" in quad else None,
        omega_max=_float("quadrature", "omega_max", quad["omega_max"]) if "omega_max" in quad else None,
        output_path=out.get("path"),
        output_format=out.get("format", "csv"),
    )


def load_config(path: str) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from None
    return parse_config(text)


def dump_config(cfg: RunConfig) -> str:
    """INI text that parses back to ``cfg``."""
    lines = ["[run]", f"distance_m = {cfg.distance_m!r}", f"temperature_K = {cfg.temperature_K!r}"]
    for name, p in (("particle1", cfg.particle1), ("particle2", cfg.particle2)):
        lines += ["", f"[{name}]"] + [f"{k} = {getattr(p, k)!r}" for k in _PARTICLE_KEYS]
    if cfg.rel_tol is not None or cfg.omega_max is not None:
        lines += ["", "[quadrature]"]
        if cfg.rel_tol is not None:
            lines.append(f"rel_tol = {cfg.rel_tol!r}")
        if cfg.omega_max is not None:
            lines.append(f"omega_max = {cfg.omega_max!r}")
    if cfg.output_path is not None or cfg.output_format != "csv":
        lines += ["", "[output]", f"format = {cfg.output_format}"]
        if cfg.output_path is not None:
            lines.append(f"path = {cfg.output_path}")
    return "\n".join(lines) + "\n"
