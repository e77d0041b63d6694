"""Closed-form soliton construction, width/amplitude limits and photon flux."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import CONSTANTS, PhysicalConstants
from .errors import DomainError, SingularityError
from .medium import AtomicParams, complex_rates

# 2*ln(2 + sqrt(3)): full width at half maximum of sech in units of its scale.
SECH_FWHM = 2.0 * math.log(2.0 + math.sqrt(3.0))


@dataclass(frozen=True)
class SolitonSpec:
    """Initial bright-soliton description.

    order 1 is the stationary sech profile; order 2 is the same shape with
    doubled peak amplitude, which breathes in a uniform medium.  A nonzero
    transverse_velocity v imprints the tilt phase exp(i v k_p x).
    """

    m: float                        # dimensionless eigenvalue, > 0
    order: int = 1                  # 1 (fundamental) or 2
    center_x: float = 0.0           # transverse offset, m
    transverse_velocity: float = 0.0  # dimensionless phase gradient

    def __post_init__(self):
        if not self.m > 0.0:
            raise DomainError("SolitonSpec.m must be strictly positive")
        if self.order not in (1, 2):
            raise DomainError("SolitonSpec.order must be 1 or 2")


def soliton_profile(spec: SolitonSpec, c_n: float, e0: float, k_p: float,
                    xs: np.ndarray) -> np.ndarray:
    """Sample the analytic bright-soliton envelope (V/m) at z = 0.

    Requires the focusing branch c_n < 0.  The z-dependent phase factor of
    the analytic solution is unity at z = 0.
    """
    if not c_n < 0.0:
        raise DomainError(
            f"bright solitons need a focusing nonlinearity (C_n < 0); got C_n={c_n!r}"
        )
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or np.any(np.diff(xs) <= 0.0):
        raise DomainError("soliton_profile requires strictly increasing x samples")
    kappa = math.sqrt(2.0 * abs(c_n)) * spec.m * e0
    amplitude = 2.0 * spec.m * e0 * (2.0 if spec.order == 2 else 1.0)
    envelope = amplitude / np.cosh(kappa * (xs - spec.center_x))
    if spec.transverse_velocity != 0.0:
        envelope = envelope * np.exp(1j * spec.transverse_velocity * k_p * xs)
    return envelope.astype(complex)


def width_fwhm(params: AtomicParams, e_c: float, e_p_max: float,
               lambda_p: float,
               constants: PhysicalConstants = CONSTANTS) -> float:
    """Analytic soliton FWHM (m) from the coupling/probe amplitude ratio."""
    if not e_p_max > 0.0 or not e_c > 0.0:
        raise DomainError("width_fwhm requires positive field amplitudes")
    re_g4 = complex_rates(params).Gamma4.real
    if re_g4 == 0.0:
        raise SingularityError("width_fwhm is singular at Re(Gamma4) = 0")
    k_p = 2.0 * math.pi / lambda_p
    scale = math.sqrt(
        constants.eps0 * abs(re_g4) * constants.hbar
        / (params.n * params.mu13 ** 2 * k_p ** 2)
    )
    return SECH_FWHM * scale * (e_c / e_p_max)


def amplitude_bound(params: AtomicParams, e_c: float, dominance: float,
                    constants: PhysicalConstants = CONSTANTS) -> float:
    """Largest admissible peak probe amplitude (V/m) at the dominance factor."""
    if not dominance > 1.0:
        raise DomainError("amplitude_bound requires dominance > 1")
    saturation = params.gamma3 * constants.hbar / params.mu13
    return min(saturation, e_c) / dominance


def min_width_bound(params: AtomicParams, lambda_p: float,
                    constants: PhysicalConstants = CONSTANTS) -> float:
    """Smallest admissible soliton FWHM (m); narrower widths break the regime."""
    k_p = 2.0 * math.pi / lambda_p
    return SECH_FWHM * math.sqrt(
        constants.eps0 * params.gamma3 * constants.hbar / (params.n * params.mu13 ** 2)
    ) / k_p


def photon_flux(e_p_max: float, lambda_p: float,
                constants: PhysicalConstants = CONSTANTS) -> float:
    """Peak probe photon flux in photons / mm^2 / ns."""
    if e_p_max < 0.0 or not lambda_p > 0.0:
        raise DomainError("photon_flux requires non-negative amplitude and positive wavelength")
    intensity = 0.5 * constants.c * constants.eps0 * e_p_max ** 2  # W/m^2
    photon_energy = constants.hbar * 2.0 * math.pi * constants.c / lambda_p
    flux_si = intensity / photon_energy  # photons / m^2 / s
    return flux_si * 1e-6 * 1e-9  # -> / mm^2 / ns
