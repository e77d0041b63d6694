"""Scenario configuration: document format, validation, presets.

The configuration format is a flat sectioned key-value document.  Keys carry
their unit as a suffix (e.g. gamma3_per_s, lambda_p_m) so a file is
unambiguous without a separate unit system.  Unknown keys and missing
physics keys are hard errors; only solver fields have defaults.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import CONSTANTS, derive_units
from .errors import ConfigError, DomainError
from .medium import AtomicParams
from .propagator import Grid, SolverConfig
from .soliton import (SolitonSpec, amplitude_bound, min_width_bound,
                      photon_flux, width_fwhm)
from .waveguide import CouplingBeam

ARTIFACT_VERSION = "0.1.0"

_OUTPUT_KINDS = ("snapshots", "metrics", "chi_profile")
_OUTPUT_FORMATS = {"snapshots": "binary", "metrics": "csv", "chi_profile": "csv"}


@dataclass(frozen=True, eq=False)
class RawProfile:
    """Sampled complex probe profile used in place of an analytic soliton."""

    xs: np.ndarray
    envelope: np.ndarray
    path: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "xs", np.asarray(self.xs, dtype=float))
        object.__setattr__(self, "envelope", np.asarray(self.envelope, dtype=complex))
        if self.xs.shape != self.envelope.shape or self.xs.ndim != 1:
            raise DomainError("RawProfile requires matching 1-d x and envelope arrays")

    def sample(self, grid_xs):
        re = np.interp(grid_xs, self.xs, self.envelope.real, left=0.0, right=0.0)
        im = np.interp(grid_xs, self.xs, self.envelope.imag, left=0.0, right=0.0)
        return re + 1j * im

    def __eq__(self, other):
        return (
            isinstance(other, RawProfile)
            and self.xs.shape == other.xs.shape
            and np.array_equal(self.xs, other.xs)
            and np.array_equal(self.envelope, other.envelope)
        )


@dataclass(frozen=True)
class OutputSpec:
    """One requested output artifact of a run."""

    what: str    # snapshots | metrics | chi_profile
    path: str
    format: str  # binary | csv

    def __post_init__(self):
        if self.what not in _OUTPUT_KINDS:
            raise DomainError(f"unknown output kind {self.what!r}")
        if self.format != _OUTPUT_FORMATS[self.what]:
            raise DomainError(
                f"output kind {self.what!r} requires format {_OUTPUT_FORMATS[self.what]!r}"
            )


@dataclass(frozen=True)
class ScenarioConfig:
    """Complete description of one propagation run."""

    atomic: AtomicParams
    beam: CouplingBeam
    probe: SolitonSpec | RawProfile
    lambda_p: float
    grid: Grid
    solver: SolverConfig = field(default_factory=SolverConfig)
    outputs: tuple = ()

    def __post_init__(self):
        if not self.lambda_p > 0.0:
            raise DomainError("ScenarioConfig.lambda_p must be positive")

    def with_outputs(self, outputs):
        return replace(self, outputs=tuple(outputs))


# ---------------------------------------------------------------------------
# configuration document parsing
# ---------------------------------------------------------------------------

_SCHEMA = {
    "atomic": {
        "n_per_m3": ("n", float, True, None),
        "mu13_Cm": ("mu13", float, True, None),
        "mu24_Cm": ("mu24", float, True, None),
        "mu23_Cm": ("mu23", float, True, None),
        "gamma2_per_s": ("gamma2", float, True, None),
        "gamma3_per_s": ("gamma3", float, True, None),
        "gamma4_per_s": ("gamma4", float, True, None),
        "delta13_per_s": ("delta13", float, True, None),
        "delta23_per_s": ("delta23", float, True, None),
        "delta24_per_s": ("delta24", float, True, None),
    },
    "beam": {
        "peak_amplitude_V_per_m": ("peak_amplitude", float, True, None),
        "waist_m": ("waist", float, True, None),
        "center_x_m": ("center_x", float, True, None),
        "z_taper": ("z_taper", str, False, "none"),
        "z_taper_rate_per_m": ("z_taper_rate", float, False, 0.0),
    },
    "probe": {
        "lambda_p_m": ("lambda_p", float, True, None),
        "kind": ("kind", str, True, None),
        "m": ("m", float, False, None),
        "order": ("order", int, False, 1),
        "center_x_m": ("center_x", float, False, 0.0),
        "transverse_velocity": ("transverse_velocity", float, False, 0.0),
        "profile_file": ("profile_file", str, False, None),
    },
    "grid": {
        "x_min_m": ("x_min", float, True, None),
        "x_max_m": ("x_max", float, True, None),
        "nx": ("nx", int, True, None),
        "dz_m": ("dz", float, True, None),
        "nz": ("nz", int, True, None),
    },
    "solver": {
        "mode": ("mode", str, False, "full_chi"),
        "sponge_fraction": ("sponge_fraction", float, False, 0.1),
        "sponge_strength_per_m": ("sponge_strength_per_m", float, False, 0.0),
        "corrector_iterations": ("corrector_iterations", int, False, 2),
        "snapshot_stride": ("snapshot_stride", int, False, 1),
        "dominance": ("dominance", float, False, 10.0),
        "allow_regime_violation": ("allow_regime_violation", bool, False, False),
    },
    "outputs": {
        "snapshots": ("snapshots", str, False, None),
        "metrics": ("metrics", str, False, None),
        "chi_profile": ("chi_profile", str, False, None),
    },
}


def _convert(raw, typ, key, lineno):
    try:
        if typ is bool:
            low = raw.lower()
            if low in ("true", "yes", "1"):
                return True
            if low in ("false", "no", "0"):
                return False
            raise ValueError(raw)
        if typ is int:
            value = int(raw)
        else:
            value = typ(raw)
        return value
    except ValueError as exc:
        raise ConfigError(f"line {lineno}: invalid value {raw!r} for key {key!r}") from exc


def _parse_document(text):
    """Split a config document into {section: {key: (value, lineno)}}."""
    sections = {}
    current = None
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in _SCHEMA:
                raise ConfigError(f"line {lineno}: unknown section [{name}]")
            current = sections.setdefault(name, {})
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        if current is None:
            raise ConfigError(f"line {lineno}: assignment outside any section")
        key, value = (part.strip() for part in line.split("=", 1))
        section_name = [n for n, s in sections.items() if s is current][0]
        schema = _SCHEMA[section_name]
        if key not in schema:
            raise ConfigError(f"line {lineno}: unknown key {key!r} in section [{section_name}]")
        if key in current:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        current[key] = (value, lineno)
    return sections


def _collect(sections, name):
    """Resolve one section against its schema; returns a plain field dict."""
    schema = _SCHEMA[name]
    present = sections.get(name, {})
    missing = []
    out = {}
    for key, (fname, typ, required, default) in schema.items():
        if key in present:
            raw, lineno = present[key]
            out[fname] = _convert(raw, typ, key, lineno)
        elif required:
            missing.append(f"[{name}] {key}")
        else:
            out[fname] = default
    return out, missing


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse and fully validate a scenario configuration document."""
    sections = _parse_document(text)
    missing = []
    resolved = {}
    for name in _SCHEMA:
        resolved[name], miss = _collect(sections, name)
        missing.extend(miss)
    if missing:
        raise ConfigError("missing required keys: " + ", ".join(missing))

    try:
        atomic = AtomicParams(**resolved["atomic"])
        beam = CouplingBeam(**resolved["beam"])
        grid = Grid(**resolved["grid"])
        solver = SolverConfig(**resolved["solver"])

        probe_fields = resolved["probe"]
        lambda_p = probe_fields["lambda_p"]
        kind = probe_fields["kind"]
        if kind == "soliton":
            if probe_fields["m"] is None:
                raise ConfigError("probe kind 'soliton' requires key m")
            probe = SolitonSpec(
                m=probe_fields["m"],
                order=probe_fields["order"],
                center_x=probe_fields["center_x"],
                transverse_velocity=probe_fields["transverse_velocity"],
            )
        elif kind == "raw":
            path = probe_fields["profile_file"]
            if path is None:
                raise ConfigError("probe kind 'raw' requires key profile_file")
            probe = load_raw_profile(path)
        else:
            raise ConfigError(f"unknown probe kind {kind!r}")

        outputs = []
        for what in _OUTPUT_KINDS:
            path = resolved["outputs"][what]
            if path is not None:
                outputs.append(OutputSpec(what, path, _OUTPUT_FORMATS[what]))
        return ScenarioConfig(
            atomic=atomic, beam=beam, probe=probe, lambda_p=lambda_p,
            grid=grid, solver=solver, outputs=tuple(outputs),
        )
    except DomainError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc


def load_raw_profile(path: str) -> RawProfile:
    """Load a sampled probe profile CSV with columns x_m, re_V_per_m, im_V_per_m."""
    try:
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    except OSError as exc:
        raise ConfigError(f"cannot read probe profile {path!r}: {exc}") from exc
    if data.shape[1] != 3:
        raise ConfigError(f"probe profile {path!r} must have 3 columns (x, re, im)")
    return RawProfile(xs=data[:, 0], envelope=data[:, 1] + 1j * data[:, 2], path=path)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_scenario(config: ScenarioConfig, version: str = ARTIFACT_VERSION) -> str:
    """Render the resolved config back to the document format (round-trips)."""
    lines = [f"# eitsoliton scenario, artifact version {version}", ""]

    def section(name, pairs):
        lines.append(f"[{name}]")
        for key, value in pairs:
            if value is not None:
                lines.append(f"{key} = {_fmt(value)}")
        lines.append("")

    a = config.atomic
    section("atomic", [
        ("n_per_m3", a.n), ("mu13_Cm", a.mu13), ("mu24_Cm", a.mu24),
        ("mu23_Cm", a.mu23), ("gamma2_per_s", a.gamma2),
        ("gamma3_per_s", a.gamma3), ("gamma4_per_s", a.gamma4),
        ("delta13_per_s", a.delta13), ("delta23_per_s", a.delta23),
        ("delta24_per_s", a.delta24),
    ])
    b = config.beam
    section("beam", [
        ("peak_amplitude_V_per_m", b.peak_amplitude), ("waist_m", b.waist),
        ("center_x_m", b.center_x), ("z_taper", b.z_taper),
        ("z_taper_rate_per_m", b.z_taper_rate),
    ])
    p = config.probe
    if isinstance(p, SolitonSpec):
        section("probe", [
            ("lambda_p_m", config.lambda_p), ("kind", "soliton"),
            ("m", p.m), ("order", p.order), ("center_x_m", p.center_x),
            ("transverse_velocity", p.transverse_velocity),
        ])
    else:
        if p.path is None:
            raise ConfigError("cannot render a raw profile that has no backing file")
        section("probe", [
            ("lambda_p_m", config.lambda_p), ("kind", "raw"),
            ("profile_file", p.path),
        ])
    g = config.grid
    section("grid", [
        ("x_min_m", g.x_min), ("x_max_m", g.x_max), ("nx", g.nx),
        ("dz_m", g.dz), ("nz", g.nz),
    ])
    s = config.solver
    section("solver", [
        ("mode", s.mode), ("sponge_fraction", s.sponge_fraction),
        ("sponge_strength_per_m", s.sponge_strength_per_m),
        ("corrector_iterations", s.corrector_iterations),
        ("snapshot_stride", s.snapshot_stride), ("dominance", s.dominance),
        ("allow_regime_violation", s.allow_regime_violation),
    ])
    if config.outputs:
        section("outputs", [(o.what, o.path) for o in config.outputs])
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------

_GAMMA = 3.0e7       # shared upper-state decay rate, 1/s
_LAMBDA_P = 800e-9   # probe wavelength, m
_WAIST_FWHMS = 10.0  # beam waist in units of the analytic soliton FWHM


def _paper_atomic(gamma2_factor: float, delta13_factor: float = 0.0,
                  delta24_factor: float = -100.0) -> AtomicParams:
    return AtomicParams(
        n=1e20, mu13=3e-29, mu24=3e-29, mu23=3e-29,
        gamma2=gamma2_factor * _GAMMA, gamma3=_GAMMA, gamma4=_GAMMA,
        delta13=delta13_factor * _GAMMA, delta23=0.0,
        delta24=delta24_factor * _GAMMA,
    )


def _figure_scenario(atomic: AtomicParams, order: int, m: float,
                     offset_fwhms: float, zeta_total: float, dzeta: float,
                     stride: int, nx: int = 2048,
                     sponge_zeta_rate: float = 1e-3) -> ScenarioConfig:
    units = derive_units(atomic, _LAMBDA_P)
    e_c = units.E0
    e_p_fundamental = 2.0 * m * units.E0
    fwhm = width_fwhm(atomic, e_c, e_p_fundamental, _LAMBDA_P)
    waist = _WAIST_FWHMS * fwhm
    half_width = 4.0 * waist
    nz = int(math.ceil(zeta_total / dzeta / stride)) * stride
    grid = Grid(
        x_min=-half_width, x_max=half_width, nx=nx,
        dz=dzeta * units.Lb, nz=nz,
    )
    beam = CouplingBeam(peak_amplitude=e_c, waist=waist, center_x=0.0)
    probe = SolitonSpec(m=m, order=order, center_x=offset_fwhms * fwhm)
    solver = SolverConfig(
        mode="full_chi",
        sponge_fraction=0.1,
        sponge_strength_per_m=sponge_zeta_rate / units.Lb,
        corrector_iterations=2,
        snapshot_stride=stride,
    )
    return ScenarioConfig(
        atomic=atomic, beam=beam, probe=probe, lambda_p=_LAMBDA_P,
        grid=grid, solver=solver,
    )


def preset_fig3() -> ScenarioConfig:
    """Second-order soliton, small offset: gradient-driven splitting."""
    return _figure_scenario(
        _paper_atomic(gamma2_factor=1e-8), order=2, m=1.0 / 48.0,
        offset_fwhms=0.5, zeta_total=6.0e5, dzeta=25.0, stride=100,
    )


def preset_fig4() -> ScenarioConfig:
    """Fundamental soliton, large offset: boundary-seeking drift and absorption."""
    return _figure_scenario(
        _paper_atomic(gamma2_factor=2e-8), order=1, m=1.0 / 21.0,
        offset_fwhms=2.0, zeta_total=3.4e5, dzeta=50.0, stride=100,
    )


def preset_fig5() -> ScenarioConfig:
    """Fundamental soliton in a linear-index guide: nonlinear oscillation."""
    return _figure_scenario(
        _paper_atomic(gamma2_factor=5e-9, delta13_factor=-5e-7), order=1,
        m=1.0 / 24.0, offset_fwhms=2.0, zeta_total=1.5e6, dzeta=75.0,
        stride=200,
    )


@dataclass(frozen=True)
class EstimateReport:
    """Analytic width, limits and photon flux for one parameter point."""

    n: float
    mu: float
    gamma: float
    lambda_p: float
    re_gamma4: float
    e_c: float
    e_p_max: float
    e0: float
    width_fwhm_m: float
    min_width_m: float
    amplitude_bound_V_per_m: float
    photon_flux_per_mm2_ns: float

    def lines(self):
        return [
            f"field scale E0 = {self.e0:.6g} V/m",
            f"coupling amplitude E_c = {self.e_c:.6g} V/m",
            f"peak probe amplitude E_p,max = {self.e_p_max:.6g} V/m",
            f"soliton width x_FWHM = {self.width_fwhm_m * 1e3:.6g} mm",
            f"minimum admissible width = {self.min_width_m * 1e3:.6g} mm",
            f"amplitude bound = {self.amplitude_bound_V_per_m:.6g} V/m",
            f"photon flux = {self.photon_flux_per_mm2_ns:.6g} photons/mm^2/ns",
        ]


def estimate_report(n: float = 1e20, mu: float = 3e-29, gamma: float = _GAMMA,
                    lambda_p: float = _LAMBDA_P, re_gamma4_factor: float = -10.0,
                    ep_ratio: float = 1e-2, e_c: float | None = None,
                    dominance: float = 10.0) -> EstimateReport:
    """Analytic weak-light estimate with the library defaults."""
    params = AtomicParams(
        n=n, mu13=mu, mu24=mu, mu23=mu,
        gamma2=0.0, gamma3=gamma, gamma4=gamma,
        delta13=0.0, delta23=0.0, delta24=re_gamma4_factor * gamma,
    )
    e0 = gamma * CONSTANTS.hbar / mu
    if e_c is None:
        e_c = e0
    e_p_max = ep_ratio * e_c
    return EstimateReport(
        n=n, mu=mu, gamma=gamma, lambda_p=lambda_p,
        re_gamma4=re_gamma4_factor * gamma, e_c=e_c, e_p_max=e_p_max, e0=e0,
        width_fwhm_m=width_fwhm(params, e_c, e_p_max, lambda_p),
        min_width_m=min_width_bound(params, lambda_p),
        amplitude_bound_V_per_m=amplitude_bound(params, e_c, dominance),
        photon_flux_per_mm2_ns=photon_flux(e_p_max, lambda_p),
    )


_PRESETS = {
    "fig3": preset_fig3,
    "fig4": preset_fig4,
    "fig5": preset_fig5,
    "estimate": estimate_report,
}


def preset(name: str):
    """Named preset: fig3 | fig4 | fig5 return scenarios, estimate a report."""
    try:
        factory = _PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(sorted(_PRESETS))}"
        ) from None
    return factory()
