"""Physical constants and the dimensionless unit system of the solver.

All solver-internal arithmetic runs in dimensionless coordinates: field
amplitudes in units of E0, the transverse coordinate in units of La and the
propagation coordinate in units of Lb.  SI values appear only at the API
boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    """SI values of the fundamental constants used by the medium model."""

    eps0: float = 8.8541878128e-12  # vacuum permittivity, F/m
    mu0: float = 1.25663706212e-6   # vacuum permeability, H/m
    hbar: float = 1.054571817e-34   # reduced Planck constant, J s
    c: float = 299792458.0          # speed of light, m/s


# Fixed CODATA values, compiled in for reproducibility.
CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class NormalizationUnits:
    """Field and length scales converting SI <-> dimensionless coordinates.

    Lb = 2 * k_p * La**2 holds by construction; the transverse coordinate is
    measured in La, the longitudinal one in Lb and field amplitudes in E0.
    """

    E0: float  # field scale, V/m
    La: float  # transverse length scale, m
    Lb: float  # longitudinal length scale, m

    def __post_init__(self):
        for name in ("E0", "La", "Lb"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"normalization unit {name} must be positive")

    def field_to_dimensionless(self, e_si):
        return e_si / self.E0

    def field_to_si(self, u):
        return u * self.E0


def derive_units(params, lambda_p, constants: PhysicalConstants = CONSTANTS) -> NormalizationUnits:
    """Derive E0, La, Lb from the atomic parameters and the probe wavelength.

    Uses the simplified single-dipole, single-decay convention: mu = mu13 and
    gamma = gamma3 (decay rates are plain rates in 1/s, no 2*pi factor).
    """
    fields = {
        "n": params.n,
        "mu13": params.mu13,
        "gamma3": params.gamma3,
        "lambda_p": lambda_p,
    }
    for name, value in fields.items():
        if not value > 0.0:
            raise DomainError(f"derive_units requires positive {name}, got {value!r}")
    k_p = 2.0 * math.pi / lambda_p
    gamma = params.gamma3
    mu = params.mu13
    e0 = constants.hbar * gamma / mu
    la = math.sqrt(constants.eps0 * gamma * constants.hbar / (params.n * mu * mu * k_p * k_p))
    lb = 2.0 * k_p * la * la
    return NormalizationUnits(E0=e0, La=la, Lb=lb)
