"""Coupling-beam geometry and the induced transverse susceptibility landscape."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import CONSTANTS, PhysicalConstants, derive_units
from .errors import DomainError, NumericalError, SimulationError
from .medium import AtomicParams, kerr_expansion


@dataclass(frozen=True)
class CouplingBeam:
    """Gaussian coupling beam, undepleted and non-diffracting along z.

    The transverse profile is exp(-(x - center_x)**2 / waist**2); the
    optional taper rescales the amplitude along z and must stay within
    (0, 1] over the simulated range.
    """

    peak_amplitude: float  # V/m
    waist: float           # 1/e half-width of the amplitude profile, m
    center_x: float = 0.0  # m
    z_taper: str = "none"  # none | linear | exponential
    z_taper_rate: float = 0.0  # per m

    def __post_init__(self):
        if not self.peak_amplitude > 0.0:
            raise DomainError("CouplingBeam.peak_amplitude must be positive")
        if not self.waist > 0.0:
            raise DomainError("CouplingBeam.waist must be positive")
        if self.z_taper not in ("none", "linear", "exponential"):
            raise DomainError(f"unknown z_taper {self.z_taper!r}")
        if self.z_taper != "none" and self.z_taper_rate < 0.0:
            raise DomainError("CouplingBeam.z_taper_rate must be non-negative")

    def taper(self, z):
        if self.z_taper == "linear":
            return np.maximum(1.0 - self.z_taper_rate * z, 0.0)
        if self.z_taper == "exponential":
            return np.exp(-self.z_taper_rate * z)
        return np.ones_like(np.asarray(z, dtype=float)) if np.ndim(z) else 1.0


def coupling_amplitude(beam: CouplingBeam, x, z):
    """Complex coupling amplitude E_c(x, z) in V/m."""
    x = np.asarray(x, dtype=float)
    profile = np.exp(-((x - beam.center_x) / beam.waist) ** 2)
    return (beam.peak_amplitude * beam.taper(z) * profile).astype(complex)


def susceptibility_profile(params: AtomicParams, beam: CouplingBeam,
                           xs, z: float = 0.0, lambda_p: float | None = None,
                           normalized: bool = False,
                           constants: PhysicalConstants = CONSTANTS):
    """Transverse chi1(x) and chi3(x) induced by the local coupling amplitude.

    With normalized=True the outputs are rescaled to the figure units
    mu**2 n / (eps0 hbar gamma) for chi1 and the same over E0**2 for chi3,
    which requires lambda_p.
    """
    xs = np.asarray(xs, dtype=float)
    if xs.ndim != 1 or np.any(np.diff(xs) <= 0.0):
        raise DomainError("susceptibility_profile requires strictly increasing x samples")
    e_c = coupling_amplitude(beam, xs, z)
    try:
        chi1, chi3 = kerr_expansion(params, e_c, constants)
    except SimulationError:
        # Retry pointwise so the failing transverse sample can be named.
        chi1 = np.empty(xs.shape, dtype=complex)
        chi3 = np.empty(xs.shape, dtype=complex)
        for i, ec_i in enumerate(e_c):
            try:
                chi1[i], chi3[i] = kerr_expansion(params, ec_i, constants)
            except SimulationError as exc:
                raise NumericalError(
                    f"kerr expansion failed at x index {i} (x = {xs[i]!r} m): {exc}"
                ) from exc
    if normalized:
        if lambda_p is None:
            raise DomainError("normalized susceptibility profile requires lambda_p")
        units = derive_units(params, lambda_p, constants)
        k_p = 2.0 * np.pi / lambda_p
        norm = (k_p * units.La) ** 2  # = eps0 hbar gamma / (n mu^2)
        chi1 = chi1 * norm
        chi3 = chi3 * norm * units.E0 ** 2
    return chi1, chi3
