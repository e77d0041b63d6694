"""Weak-light spatial solitons in a coupling-light-induced EIT nonlinear waveguide."""

from .constants import CONSTANTS, NormalizationUnits, PhysicalConstants, derive_units
from .diagnostics import SnapshotMetrics, metrics, split_detected, turning_points
from .errors import (ConfigError, DomainError, NumericalError, RegimeError,
                     SimulationError, SingularityError)
from .medium import (AtomicParams, ComplexRates, ConditionCheck, ConditionReport,
                     RabiSquares, complex_rates, kerr_expansion,
                     nonlinear_coefficient, rabi_squares, susceptibility,
                     validate_regime)
from .outputs import (OutputError, read_field_binary, write_chi_csv,
                      write_field_binary, write_metrics_csv, write_outputs,
                      write_sidecar)
from .propagator import (FieldState, Grid, Snapshot, SolverConfig, Trajectory,
                         cn_step, initialize, run, split_step_oracle)
from .scenario import (ARTIFACT_VERSION, EstimateReport, OutputSpec, RawProfile,
                       ScenarioConfig, estimate_report, parse_scenario, preset,
                       render_scenario)
from .soliton import (SECH_FWHM, SolitonSpec, amplitude_bound, min_width_bound,
                      photon_flux, soliton_profile, width_fwhm)
from .waveguide import CouplingBeam, coupling_amplitude, susceptibility_profile

__version__ = ARTIFACT_VERSION

__all__ = [
    "ARTIFACT_VERSION", "AtomicParams", "CONSTANTS", "ComplexRates",
    "ConditionCheck", "ConditionReport", "ConfigError", "CouplingBeam",
    "DomainError", "EstimateReport", "FieldState", "Grid", "NormalizationUnits",
    "NumericalError", "OutputError", "OutputSpec", "PhysicalConstants",
    "RabiSquares",
    "RawProfile", "RegimeError", "ScenarioConfig", "SECH_FWHM",
    "SimulationError", "SingularityError", "Snapshot", "SnapshotMetrics",
    "SolitonSpec", "SolverConfig", "Trajectory", "amplitude_bound", "cn_step",
    "complex_rates", "coupling_amplitude", "derive_units", "estimate_report",
    "initialize", "kerr_expansion", "metrics", "min_width_bound",
    "nonlinear_coefficient", "parse_scenario", "photon_flux", "preset",
    "rabi_squares", "read_field_binary", "render_scenario", "run",
    "soliton_profile", "split_detected", "split_step_oracle", "susceptibility",
    "susceptibility_profile", "turning_points", "validate_regime", "width_fwhm",
    "write_chi_csv", "write_field_binary", "write_metrics_csv", "write_outputs",
    "write_sidecar",
]
