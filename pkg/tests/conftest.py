"""Shared fixtures: reference parameter sets and derived units."""

import math

import pytest

import eitsoliton as es

GAMMA = 3.0e7

# one line per acceptance criterion, echoed after the test summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
LAMBDA_P = 800e-9
N_DENSITY = 1e20
MU = 3e-29


def reference_params(gamma2=0.0, delta13=0.0, delta23=0.0, delta24_factor=-10.0):
    """Four-level medium with the shared reference numbers."""
    return es.AtomicParams(
        n=N_DENSITY, mu13=MU, mu24=MU, mu23=MU,
        gamma2=gamma2, gamma3=GAMMA, gamma4=GAMMA,
        delta13=delta13, delta23=delta23, delta24=delta24_factor * GAMMA,
    )


@pytest.fixture(scope="session")
def params10():
    return reference_params(delta24_factor=-10.0)


@pytest.fixture(scope="session")
def params100():
    return reference_params(delta24_factor=-100.0)


@pytest.fixture(scope="session")
def units(params10):
    return es.derive_units(params10, LAMBDA_P)


@pytest.fixture(scope="session")
def k_p():
    return 2.0 * math.pi / LAMBDA_P


@pytest.fixture(scope="session")
def omega_p():
    return 2.0 * math.pi * es.CONSTANTS.c / LAMBDA_P


def uniform_cubic_scenario(m=5e-3, nx=2048, dzeta=250.0, zeta_total=1e6,
                           stride=None, mode="cubic_nlse", gamma2=0.0,
                           half_fwhms=6.0, order=1, center_fwhms=0.0,
                           sponge_zeta_rate=0.0, probe=None):
    """Soliton launch in an effectively uniform medium (huge beam waist)."""
    atomic = reference_params(gamma2=gamma2, delta24_factor=-10.0)
    units = es.derive_units(atomic, LAMBDA_P)
    fwhm = es.width_fwhm(atomic, units.E0, 2.0 * m * units.E0, LAMBDA_P)
    half = half_fwhms * fwhm
    nz = int(round(zeta_total / dzeta))
    if stride is None:
        stride = nz
    grid = es.Grid(x_min=-half, x_max=half, nx=nx,
                   dz=dzeta * units.Lb, nz=nz)
    beam = es.CouplingBeam(peak_amplitude=units.E0, waist=1e5 * half)
    if probe is None:
        probe = es.SolitonSpec(m=m, order=order, center_x=center_fwhms * fwhm)
    solver = es.SolverConfig(
        mode=mode, sponge_fraction=0.1,
        sponge_strength_per_m=sponge_zeta_rate / units.Lb,
        snapshot_stride=stride,
    )
    return es.ScenarioConfig(atomic=atomic, beam=beam, probe=probe,
                             lambda_p=LAMBDA_P, grid=grid, solver=solver)
