"""Free-space dyadic Green's functions and the traces used by the dipole formulas.

The environment seen by the two particles is abstracted as an object with
``trace_EE(d, omega)`` and ``trace_HH(d, omega)``; :class:`VacuumEnv` is the
only concrete backend.
"""

from __future__ import annotations

import math
from typing import Protocol

import numpy as np

from .errors import DomainError
from .materials import CONSTANTS


def _separation(r1, r2):
    r = np.asarray(r1, dtype=float) - np.asarray(r2, dtype=float)
    d = float(np.linalg.norm(r))
    if d == 0.0:
        raise DomainError("r1 == r2: the coincident-point term is not represented")
    return r, d


def cross_matrix(r):
    """Matrix form of (r x I)."""
    x, y, z = r
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def gf_electric_vacuum(r1, r2, omega, c=CONSTANTS.c):
    r, d = _separation(r1, r2)
    k = omega / c
    kd = k * d
    pref = np.exp(1j * kd) / (4.0 * math.pi * k**2 * d**5)
    return pref * (d**2 * (-1.0 + 1j * kd + kd**2) * np.eye(3) + (3.0 - 3j * kd - kd**2) * np.outer(r, r))


def gf_magnetic_vacuum(r1, r2, omega, c=CONSTANTS.c):
    r, d = _separation(r1, r2)
    kd = omega / c * d
    return np.exp(1j * kd) / (4.0 * math.pi * d**3) * (-1.0 + 1j * kd) * cross_matrix(r)


def trace_EE_vacuum(d, omega, c=CONSTANTS.c):
    """Tr{G_E G_E^dagger} in closed form."""
    kd2 = (np.asarray(omega, dtype=float) / c * d) ** 2
    return (1.0 + 1.0 / kd2 + 3.0 / kd2**2) / (8.0 * math.pi**2 * d**2)


def trace_HH_vacuum(d, omega, c=CONSTANTS.c):
    """Tr{G_H G_H^dagger} in closed form; no d^-6 channel."""
    k = np.asarray(omega, dtype=float) / c
    return k**2 / (8.0 * math.pi**2 * d**2) * (1.0 + 1.0 / (k * d) ** 2)


class EnvTraceProvider(Protocol):
    def trace_EE(self, d, omega): ...

    def trace_HH(self, d, omega): ...


class VacuumEnv:
    """Two particles with nothing else around."""

    def trace_EE(self, d, omega):
        return trace_EE_vacuum(d, omega)

    def trace_HH(self, d, omega):
        return trace_HH_vacuum(d, omega)

    def __repr__(self):
        return "VacuumEnv()"


VACUUM = VacuumEnv()
