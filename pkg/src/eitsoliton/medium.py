"""Steady-state optical response of the four-level EIT medium.

The full nonlinear susceptibility chi(E_p, E_c), its weak-probe Kerr
expansion chi1 + chi3 |E_p|**2, the cubic-NLSE coefficient and the
weak-probe validity checks all live here.  Every function is pure and
accepts numpy arrays for the field amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constants import CONSTANTS, PhysicalConstants
from .errors import DomainError, NumericalError, SingularityError

_DENOMINATOR_FLOOR = 1e-300


@dataclass(frozen=True)
class AtomicParams:
    """Density, dipole moments, decay rates and detunings of the medium.

    All rates and detunings are plain angular rates in 1/s (no 2*pi
    convention); detunings are signed.
    """

    n: float        # atomic density, 1/m^3
    mu13: float     # probe-transition dipole moment, C m
    mu24: float     # probe-saturation-transition dipole moment, C m
    mu23: float     # coupling-transition dipole moment, C m
    gamma2: float   # ground-state dephasing rate, 1/s
    gamma3: float   # upper-state decay rate, 1/s
    gamma4: float   # second upper-state decay rate, 1/s
    delta13: float = 0.0  # probe detuning, 1/s
    delta23: float = 0.0  # coupling detuning, 1/s
    delta24: float = 0.0  # second probe detuning, 1/s

    def __post_init__(self):
        for name in ("n", "mu13", "mu24", "mu23", "gamma3", "gamma4"):
            if not getattr(self, name) > 0.0:
                raise DomainError(f"AtomicParams.{name} must be strictly positive")
        if self.gamma2 < 0.0:
            raise DomainError("AtomicParams.gamma2 must be non-negative")


@dataclass(frozen=True)
class ComplexRates:
    """Complex detuning/decay combinations entering the susceptibility."""

    Gamma2: complex
    Gamma3: complex
    Gamma4: complex


@dataclass(frozen=True)
class RabiSquares:
    """Squared Rabi frequencies |mu E / (2 hbar)|**2 of the three transitions."""

    omega_p13_sq: float
    omega_p24_sq: float
    omega_c23_sq: float


def complex_rates(params: AtomicParams) -> ComplexRates:
    """Definitional complex rates built from detunings and decay rates."""
    return ComplexRates(
        Gamma2=complex(params.delta23 - params.delta13, -params.gamma2),
        Gamma3=complex(params.delta13, params.gamma3),
        Gamma4=complex(params.delta24 + params.delta13 - params.delta23, params.gamma4),
    )


def rabi_squares(params: AtomicParams, e_p, e_c,
                 constants: PhysicalConstants = CONSTANTS) -> RabiSquares:
    """Squared Rabi frequencies for given probe/coupling amplitudes (V/m)."""
    inv4h2 = 1.0 / (4.0 * constants.hbar ** 2)
    ep2 = np.abs(e_p) ** 2
    ec2 = np.abs(e_c) ** 2
    return RabiSquares(
        omega_p13_sq=params.mu13 ** 2 * ep2 * inv4h2,
        omega_p24_sq=params.mu24 ** 2 * ep2 * inv4h2,
        omega_c23_sq=params.mu23 ** 2 * ec2 * inv4h2,
    )


def susceptibility(params: AtomicParams, e_p, e_c,
                   constants: PhysicalConstants = CONSTANTS):
    """Full four-level susceptibility chi(E_p, E_c), dimensionless.

    Depends on the fields only through |E_p|**2 and |E_c|**2; both arguments
    may be complex scalars or arrays.  The saturated linear term is evaluated
    as (Gamma2 + |Omega_p24|**2/Gamma4) / D, which is the algebraically exact
    form of the 1 - (...)/(...) bracket and avoids catastrophic cancellation
    in the deep-transparency regime.
    """
    g = complex_rates(params)
    r = rabi_squares(params, e_p, e_c, constants)
    op13, op24, oc = r.omega_p13_sq, r.omega_p24_sq, r.omega_c23_sq

    m = g.Gamma2 + op24 / g.Gamma4 + oc / g.Gamma3
    if np.min(np.abs(m)) < _DENOMINATOR_FLOOR:
        raise SingularityError(
            f"susceptibility saturation denominator M vanished at {params!r}, "
            f"|E_p|={np.max(np.abs(e_p))!r}, |E_c|={np.max(np.abs(e_c))!r}"
        )
    cross = oc * op13 / (g.Gamma3 ** 2 * m)
    denom = m + cross
    if np.min(np.abs(denom)) < _DENOMINATOR_FLOOR:
        raise SingularityError(
            f"susceptibility denominator M + |Oc|^2|Op|^2/(Gamma3^2 M) vanished at "
            f"{params!r}"
        )

    saturated_linear = (g.Gamma2 + op24 / g.Gamma4) / denom
    cross_kerr = (
        (params.mu24 ** 2 / params.mu13 ** 2)
        * oc * op13 / (g.Gamma4 * np.conj(g.Gamma3))
        * np.abs((1.0 + op13 / (g.Gamma3 * m)) / denom) ** 2
    )
    prefactor = -params.n * params.mu13 ** 2 / (constants.eps0 * constants.hbar * g.Gamma3)
    return prefactor * (saturated_linear + cross_kerr)


def kerr_expansion(params: AtomicParams, e_c,
                   constants: PhysicalConstants = CONSTANTS,
                   rel_tol: float = 1e-6):
    """Weak-probe expansion chi ~ chi1 + chi3 |E_p|**2.

    chi1 is the zero-probe limit; chi3 is extracted by small-amplitude
    differencing with ratio-2 Richardson extrapolation.  The two
    Richardson estimates at base steps h0 and h0/2 must agree to rel_tol,
    otherwise a NumericalError is raised.  chi3 is returned per (V/m)**2.
    """
    chi1 = susceptibility(params, 0.0, e_c, constants)

    # Differencing scale: the probe amplitude at which either saturation
    # channel becomes order one.  Both shrink with the coupling amplitude,
    # so a fixed step would leave the quadratic regime in dim-coupling
    # regions; a floor keeps the step finite as the scale vanishes.
    g = complex_rates(params)
    oc = rabi_squares(params, 0.0, e_c, constants).omega_c23_sq
    m0 = np.abs(g.Gamma2 + oc / g.Gamma3)
    h_probe = 2.0 * constants.hbar * np.sqrt(np.abs(g.Gamma3) * m0) / params.mu13
    h_cross = 2.0 * constants.hbar * np.sqrt(np.abs(g.Gamma4) * m0) / params.mu24
    e_sat = params.gamma3 * constants.hbar / params.mu13
    scale = np.maximum(np.minimum(h_probe, h_cross), 1e-6 * e_sat)
    h0 = 1e-2 * scale

    def slope(h):
        return (susceptibility(params, h, e_c, constants) - chi1) / (np.abs(h) ** 2)

    f1, f2, f3 = slope(h0), slope(h0 / 2.0), slope(h0 / 4.0)
    r1 = (4.0 * f2 - f1) / 3.0
    r2 = (4.0 * f3 - f2) / 3.0
    # near zero crossings of chi3 the relative test is ill-posed; a
    # disagreement that is invisible against chi1 at the saturation
    # intensity is accepted as converged
    denom = np.maximum(np.abs(r1), np.abs(r2))
    floor = np.abs(chi1) / scale ** 2
    mismatch = np.abs(r1 - r2)
    bad = mismatch > rel_tol * np.maximum(denom, floor) + 1e-300
    if np.any(bad):
        raise NumericalError(
            "kerr_expansion Richardson estimates did not converge "
            f"(max relative mismatch {np.max(mismatch / np.maximum(denom, 1e-300)):.3e})"
        )
    chi3 = (16.0 * r2 - r1) / 15.0
    return chi1, chi3


def nonlinear_coefficient(params: AtomicParams, e_c_peak, omega_p,
                          constants: PhysicalConstants = CONSTANTS):
    """Cubic-NLSE coefficient C_n in 1/m per (V/m)**2; sign follows Re(Gamma4)."""
    g = complex_rates(params)
    re_g4 = g.Gamma4.real
    if re_g4 == 0.0:
        raise SingularityError(
            "nonlinear_coefficient is singular at Re(Gamma4) = 0 "
            f"(delta24 + delta13 - delta23 = 0 for {params!r})"
        )
    ec2 = np.abs(e_c_peak) ** 2
    if np.min(ec2) <= 0.0:
        raise DomainError("nonlinear_coefficient requires a nonzero coupling amplitude")
    return (
        2.0 * constants.mu0 * params.n * params.mu13 ** 2 * params.mu24 ** 2 * omega_p ** 2
        / (params.mu23 ** 2 * ec2 * re_g4 * constants.hbar)
    )


@dataclass(frozen=True)
class ConditionCheck:
    """One dominance inequality: subordinate side, dominant side, their ratio."""

    name: str
    subordinate: float
    dominant: float
    ratio: float
    satisfied: bool


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the weak-probe validity checks at a given dominance factor."""

    dominance: float
    checks: tuple = field(default=())

    @property
    def all_satisfied(self) -> bool:
        return all(c.satisfied for c in self.checks)

    @property
    def violated(self) -> tuple:
        return tuple(c for c in self.checks if not c.satisfied)

    def lines(self):
        out = []
        for c in self.checks:
            status = "ok" if c.satisfied else "VIOLATED"
            out.append(
                f"{c.name}: {c.subordinate:.6g} << {c.dominant:.6g} "
                f"(ratio {c.ratio:.6g}, need >= {self.dominance:g}) {status}"
            )
        return out


def _ratio(subordinate, dominant):
    if subordinate == 0.0:
        return float("inf") if dominant > 0.0 else 0.0
    return dominant / subordinate


def validate_regime(params: AtomicParams, e_p_max, e_c_min,
                    dominance: float = 10.0,
                    constants: PhysicalConstants = CONSTANTS) -> ConditionReport:
    """Check the weak-probe dominance inequalities; report-only, never raises.

    Each strong inequality is read as "dominant side >= dominance * other
    side" (default factor 10).
    """
    g = complex_rates(params)
    r = rabi_squares(params, e_p_max, e_c_min, constants)
    op13 = float(np.sqrt(r.omega_p13_sq))
    op24 = float(np.sqrt(r.omega_p24_sq))
    oc = float(np.sqrt(r.omega_c23_sq))

    probe_sat = r.omega_p24_sq / abs(g.Gamma4)
    coupling_sat = r.omega_c23_sq / abs(g.Gamma3)

    raw = [
        ("probe_weaker_than_coupling",
         max(op13, op24), min(params.gamma3, params.gamma4, oc)),
        ("dephasing_below_probe_saturation",
         abs(g.Gamma2), probe_sat),
        ("probe_saturation_below_coupling_saturation",
         probe_sat, coupling_sat),
        ("two_photon_detuning_exceeds_decay",
         params.gamma4, abs(g.Gamma4.real)),
    ]
    checks = []
    for name, sub, dom in raw:
        ratio = _ratio(sub, dom)
        checks.append(ConditionCheck(name, sub, dom, ratio, ratio >= dominance))
    return ConditionReport(dominance=dominance, checks=tuple(checks))
