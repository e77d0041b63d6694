"""Beam propagation over z on a transverse grid.

The main scheme is a fixed-point-corrected Crank-Nicolson integrator of the
paraxial propagation equation; a symmetric split-step spectral integrator of
the same scenario serves as an independent cross-validation oracle.  Both
run in the dimensionless unit system (E0, La, Lb) and expose SI fields at
the API boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .constants import CONSTANTS, derive_units
from .diagnostics import SnapshotMetrics, metrics
from .errors import ConfigError, DomainError, NumericalError, RegimeError
from .medium import nonlinear_coefficient, susceptibility, validate_regime
from .soliton import SolitonSpec, soliton_profile
from .waveguide import coupling_amplitude


@dataclass(frozen=True)
class Grid:
    """Uniform transverse grid and longitudinal stepping, all in SI."""

    x_min: float
    x_max: float
    nx: int
    dz: float
    nz: int

    def __post_init__(self):
        if self.nx < 16:
            raise DomainError("Grid.nx must be at least 16")
        if not self.x_max > self.x_min:
            raise DomainError("Grid requires x_max > x_min")
        if not self.dz > 0.0:
            raise DomainError("Grid.dz must be positive")
        if self.nz < 1:
            raise DomainError("Grid.nz must be at least 1")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.nx - 1)

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)


@dataclass
class FieldState:
    """Complex probe envelope (V/m) on the transverse grid at position z (m)."""

    z: float
    envelope: np.ndarray

    def __post_init__(self):
        self.envelope = np.asarray(self.envelope, dtype=complex)
        if not np.all(np.isfinite(self.envelope)):
            raise NumericalError("FieldState envelope contains non-finite values")


@dataclass(frozen=True)
class SolverConfig:
    """Numerical options of the propagator."""

    mode: str = "full_chi"            # full_chi | cubic_nlse
    sponge_fraction: float = 0.1      # fraction of the domain per side
    sponge_strength_per_m: float = 0.0  # peak amplitude decay rate, 1/m
    corrector_iterations: int = 2
    snapshot_stride: int = 1
    dominance: float = 10.0
    allow_regime_violation: bool = False

    def __post_init__(self):
        if self.mode not in ("full_chi", "cubic_nlse"):
            raise DomainError(f"unknown solver mode {self.mode!r}")
        if not 0.0 <= self.sponge_fraction <= 0.4:
            raise DomainError("SolverConfig.sponge_fraction must lie in [0, 0.4]")
        if self.sponge_strength_per_m < 0.0:
            raise DomainError("SolverConfig.sponge_strength_per_m must be non-negative")
        if self.corrector_iterations < 1:
            raise DomainError("SolverConfig.corrector_iterations must be at least 1")
        if self.snapshot_stride < 1:
            raise DomainError("SolverConfig.snapshot_stride must be at least 1")


@dataclass(frozen=True)
class Snapshot:
    """Stored field plus its scalar diagnostics at one z position."""

    z: float
    envelope: np.ndarray
    metrics: SnapshotMetrics


@dataclass(frozen=True)
class Trajectory:
    """Ordered snapshots of one propagation run."""

    snapshots: tuple
    dz_snapshot: float
    dx: float
    x_min: float
    scenario: object = None

    def __len__(self):
        return len(self.snapshots)

    @property
    def zs(self) -> np.ndarray:
        return np.array([s.z for s in self.snapshots])

    @property
    def final(self) -> Snapshot:
        return self.snapshots[-1]


def _sponge_profile(nx: int, fraction: float, peak: float) -> np.ndarray:
    """Raised-cosine absorber ramp over the outer `fraction` of each side."""
    w = np.zeros(nx)
    width = int(round(fraction * nx))
    if width < 2 or peak == 0.0:
        return w
    s = np.linspace(0.0, 1.0, width)  # 0 at inner edge, 1 at boundary
    ramp = 0.5 * (1.0 - np.cos(math.pi * s))
    w[:width] = peak * ramp[::-1]
    w[-width:] = peak * ramp
    return w


class _Stepper:
    """Dimensionless Crank-Nicolson stepper bound to one scenario."""

    def __init__(self, scenario):
        self.scenario = scenario
        grid = scenario.grid
        self.units = derive_units(scenario.atomic, scenario.lambda_p)
        self.k_p = 2.0 * math.pi / scenario.lambda_p
        self.omega_p = 2.0 * math.pi * CONSTANTS.c / scenario.lambda_p
        self.xs = grid.xs
        self.dxi = grid.dx / self.units.La
        self.dzeta = grid.dz / self.units.Lb
        self.chi_factor = (self.k_p * self.units.La) ** 2
        self.cubic_factor = self.units.La ** 2 * self.units.E0 ** 2
        solver = scenario.solver
        self.corrector_iterations = solver.corrector_iterations
        self.sponge = _sponge_profile(
            grid.nx, solver.sponge_fraction,
            solver.sponge_strength_per_m * self.units.Lb,
        )
        self.mode = solver.mode
        self._off = 1j * self.dzeta / (2.0 * self.dxi ** 2)

    def potential(self, u_mid: np.ndarray, z_mid: float) -> np.ndarray:
        """Dimensionless potential V(xi) for the midpoint field estimate."""
        e_c = coupling_amplitude(self.scenario.beam, self.xs, z_mid)
        if self.mode == "full_chi":
            chi = susceptibility(
                self.scenario.atomic, self.units.E0 * np.abs(u_mid), e_c
            )
            return self.chi_factor * chi
        c_n = nonlinear_coefficient(self.scenario.atomic, e_c, self.omega_p)
        return -self.cubic_factor * c_n * np.abs(u_mid) ** 2

    def _apply_rhs(self, u: np.ndarray, v_diag: np.ndarray) -> np.ndarray:
        rhs = (1.0 + v_diag) * u
        rhs[1:-1] += self._off * (u[:-2] + u[2:])
        rhs[0] = 0.0
        rhs[-1] = 0.0
        return rhs

    def step(self, u: np.ndarray, z: float, step_index: int) -> np.ndarray:
        """Advance the dimensionless field by one dz."""
        z_mid = z + 0.5 * self.scenario.grid.dz
        nx = u.shape[0]
        u_new = u
        for it in range(self.corrector_iterations):
            u_mid = u if it == 0 else 0.5 * (u + u_new)
            v = self.potential(u_mid, z_mid)
            # u_zeta = i u_xixi + (iV - W) u, Crank-Nicolson in both terms.
            v_diag = 0.5 * self.dzeta * (1j * v - self.sponge) - 2.0 * self._off
            ab = np.zeros((3, nx), dtype=complex)
            ab[0, 1:] = -self._off
            ab[1, :] = 1.0 - v_diag
            ab[2, :-1] = -self._off
            ab[0, 1] = 0.0
            ab[1, 0] = 1.0
            ab[1, -1] = 1.0
            ab[2, -2] = 0.0
            rhs = self._apply_rhs(u, v_diag)
            try:
                u_new = solve_banded((1, 1), ab, rhs)
            except np.linalg.LinAlgError as exc:
                raise NumericalError(
                    f"tridiagonal solve failed at step {step_index}: {exc}",
                    completed_steps=step_index,
                ) from exc
        if not np.all(np.isfinite(u_new)):
            raise NumericalError(
                f"field diverged at step {step_index}; reduce dz",
                completed_steps=step_index,
            )
        return u_new

    def snapshot(self, u: np.ndarray, z: float) -> Snapshot:
        envelope = self.units.field_to_si(u)
        state = FieldState(z=z, envelope=envelope)
        grid = self.scenario.grid
        return Snapshot(
            z=z, envelope=envelope,
            metrics=metrics(state, grid.dx, x_min=grid.x_min),
        )


def _initial_envelope(scenario) -> np.ndarray:
    grid = scenario.grid
    probe = scenario.probe
    units = derive_units(scenario.atomic, scenario.lambda_p)
    if isinstance(probe, SolitonSpec):
        # seed with the coupling amplitude at the soliton's own center so an
        # offset launch starts close to the locally matched profile
        e_c_ref = abs(coupling_amplitude(scenario.beam, probe.center_x, 0.0))
        c_n = nonlinear_coefficient(
            scenario.atomic, e_c_ref, 2.0 * math.pi * CONSTANTS.c / scenario.lambda_p
        )
        k_p = 2.0 * math.pi / scenario.lambda_p
        return soliton_profile(probe, c_n, units.E0, k_p, grid.xs)
    return np.asarray(probe.sample(grid.xs), dtype=complex)


def initialize(scenario) -> FieldState:
    """Build the z = 0 field state, enforcing the weak-probe regime.

    A scenario outside the validity regime is rejected unless it carries the
    explicit override flag.
    """
    envelope = _initial_envelope(scenario)
    e_p_max = float(np.max(np.abs(envelope)))
    e_c_ref = abs(coupling_amplitude(scenario.beam, scenario.beam.center_x, 0.0))
    report = validate_regime(
        scenario.atomic, e_p_max, e_c_ref, dominance=scenario.solver.dominance
    )
    if not report.all_satisfied and not scenario.solver.allow_regime_violation:
        names = ", ".join(c.name for c in report.violated)
        raise RegimeError(
            f"scenario violates the weak-probe conditions: {names}", report=report
        )
    return FieldState(z=0.0, envelope=envelope)


def cn_step(state: FieldState, scenario) -> FieldState:
    """Advance one Crank-Nicolson step; convenience wrapper around the stepper."""
    stepper = _Stepper(scenario)
    u = stepper.units.field_to_dimensionless(state.envelope)
    u_new = stepper.step(u, state.z, step_index=0)
    return FieldState(z=state.z + scenario.grid.dz, envelope=stepper.units.field_to_si(u_new))


def run(scenario, on_snapshot=None) -> Trajectory:
    """Propagate the scenario over all nz steps with the Crank-Nicolson scheme."""
    state = initialize(scenario)
    stepper = _Stepper(scenario)
    grid = scenario.grid
    stride = scenario.solver.snapshot_stride
    u = stepper.units.field_to_dimensionless(state.envelope)
    snapshots = [stepper.snapshot(u, 0.0)]
    if on_snapshot is not None:
        on_snapshot(snapshots[0])
    for step in range(1, grid.nz + 1):
        try:
            u = stepper.step(u, (step - 1) * grid.dz, step)
        except NumericalError as exc:
            exc.completed_steps = step - 1
            exc.last_state = snapshots[-1]
            raise
        if step % stride == 0:
            snap = stepper.snapshot(u, step * grid.dz)
            snapshots.append(snap)
            if on_snapshot is not None:
                on_snapshot(snap)
    return Trajectory(
        snapshots=tuple(snapshots),
        dz_snapshot=stride * grid.dz,
        dx=grid.dx,
        x_min=grid.x_min,
        scenario=scenario,
    )


def split_step_oracle(scenario, on_snapshot=None) -> Trajectory:
    """Symmetric second-order split-step spectral run of the same scenario.

    Cross-validation only.  Requires nx to be a power of two; the transverse
    domain is treated as periodic with period nx*dx, so the sponge (or the
    medium's own boundary absorption) must keep the field localized.
    """
    grid = scenario.grid
    if grid.nx & (grid.nx - 1):
        raise ConfigError("split_step_oracle requires nx to be a power of two")
    state = initialize(scenario)
    stepper = _Stepper(scenario)
    stride = scenario.solver.snapshot_stride

    u = stepper.units.field_to_dimensionless(state.envelope)
    k = 2.0 * math.pi * np.fft.fftfreq(grid.nx, d=stepper.dxi)
    linear_phase = np.exp(-1j * k * k * stepper.dzeta)
    snapshots = [stepper.snapshot(u, 0.0)]
    if on_snapshot is not None:
        on_snapshot(snapshots[0])
    for step in range(1, grid.nz + 1):
        z_mid = (step - 0.5) * grid.dz
        v = stepper.potential(u, z_mid)
        half = np.exp((1j * v - stepper.sponge) * 0.5 * stepper.dzeta)
        u = half * u
        u = np.fft.ifft(linear_phase * np.fft.fft(u))
        v = stepper.potential(u, z_mid)
        half = np.exp((1j * v - stepper.sponge) * 0.5 * stepper.dzeta)
        u = half * u
        if not np.all(np.isfinite(u)):
            raise NumericalError(
                f"split-step field diverged at step {step}; reduce dz",
                completed_steps=step - 1, last_state=snapshots[-1],
            )
        if step % stride == 0:
            snap = stepper.snapshot(u, step * grid.dz)
            snapshots.append(snap)
            if on_snapshot is not None:
                on_snapshot(snap)
    return Trajectory(
        snapshots=tuple(snapshots),
        dz_snapshot=stride * grid.dz,
        dx=grid.dx,
        x_min=grid.x_min,
        scenario=scenario,
    )
