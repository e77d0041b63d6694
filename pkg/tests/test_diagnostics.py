"""Snapshot observables, split detection, centroid turning points."""

import numpy as np
import pytest

import eitsoliton as es
from eitsoliton.diagnostics import SnapshotMetrics

from conftest import uniform_cubic_scenario


def _state(xs, envelope):
    return es.FieldState(z=0.0, envelope=envelope)


def _sech_field(xs, width_scale, center=0.0, amplitude=1.0):
    return amplitude / np.cosh((xs - center) / width_scale)


@pytest.fixture()
def grid_xs():
    return np.linspace(-10.0, 10.0, 4001)


def test_sech_metrics(grid_xs):
    dx = grid_xs[1] - grid_xs[0]
    env = _sech_field(grid_xs, 1.0, center=2.0, amplitude=3.0)
    m = es.metrics(_state(grid_xs, env), dx, x_min=grid_xs[0])
    assert m.peak_amplitude == pytest.approx(3.0, rel=1e-6)
    assert m.peak_x == pytest.approx(2.0, abs=dx)
    assert m.centroid_x == pytest.approx(2.0, abs=dx / 2)
    assert m.fwhm == pytest.approx(es.SECH_FWHM, rel=1e-3)
    assert m.n_peaks == 1
    # analytic power of a^2 sech^2(x/w): 2 a^2 w
    assert m.power == pytest.approx(2.0 * 9.0, rel=1e-4)


def test_metrics_phase_invariance(grid_xs):
    dx = grid_xs[1] - grid_xs[0]
    env = _sech_field(grid_xs, 1.0)
    a = es.metrics(_state(grid_xs, env), dx, x_min=grid_xs[0])
    b = es.metrics(_state(grid_xs, env * np.exp(1j * np.linspace(0, 5, env.size))),
                   dx, x_min=grid_xs[0])
    assert b.power == pytest.approx(a.power, rel=1e-12)
    assert b.peak_amplitude == pytest.approx(a.peak_amplitude, rel=1e-12)
    assert (b.peak_x, b.centroid_x, b.n_peaks) == (a.peak_x, a.centroid_x, a.n_peaks)
    assert b.fwhm == pytest.approx(a.fwhm, rel=1e-12)


def test_power_scales_quadratically(grid_xs):
    dx = grid_xs[1] - grid_xs[0]
    env = _sech_field(grid_xs, 1.0)
    p1 = es.metrics(_state(grid_xs, env), dx).power
    p2 = es.metrics(_state(grid_xs, env / np.sqrt(2.0)), dx).power
    assert p2 == pytest.approx(p1 / 2.0, rel=1e-12)


def test_translation_moves_positions_only(grid_xs):
    dx = grid_xs[1] - grid_xs[0]
    a = es.metrics(_state(grid_xs, _sech_field(grid_xs, 0.5, center=-3.0)),
                   dx, x_min=grid_xs[0])
    b = es.metrics(_state(grid_xs, _sech_field(grid_xs, 0.5, center=3.0)),
                   dx, x_min=grid_xs[0])
    assert b.peak_x - a.peak_x == pytest.approx(6.0, abs=dx)
    assert b.centroid_x - a.centroid_x == pytest.approx(6.0, abs=dx)
    assert b.fwhm == pytest.approx(a.fwhm, rel=1e-6)
    assert b.power == pytest.approx(a.power, rel=1e-6)


def test_zero_field_marker(grid_xs):
    m = es.metrics(_state(grid_xs, np.zeros_like(grid_xs, dtype=complex)), 0.005)
    assert m == SnapshotMetrics(0.0, 0.0, 0.0, 0.0, None, 0)


def test_two_peaks_counted(grid_xs):
    dx = grid_xs[1] - grid_xs[0]
    env = (_sech_field(grid_xs, 0.5, center=-4.0)
           + _sech_field(grid_xs, 0.5, center=4.0, amplitude=0.8))
    m = es.metrics(_state(grid_xs, env), dx, x_min=grid_xs[0])
    assert m.n_peaks == 2
    assert m.peak_x == pytest.approx(-4.0, abs=dx)


def test_small_shoulder_below_threshold_ignored(grid_xs):
    dx = grid_xs[1] - grid_xs[0]
    env = (_sech_field(grid_xs, 0.5, center=0.0)
           + _sech_field(grid_xs, 0.5, center=5.0, amplitude=0.05))
    m = es.metrics(_state(grid_xs, env), dx, x_min=grid_xs[0])
    assert m.n_peaks == 1


def _synthetic_traj(n_peaks_seq=None, centroids=None, dz=1.0, dx=0.01):
    n = len(n_peaks_seq) if n_peaks_seq is not None else len(centroids)
    snaps = []
    for i in range(n):
        m = SnapshotMetrics(
            power=1.0, peak_amplitude=1.0, peak_x=0.0,
            centroid_x=0.0 if centroids is None else float(centroids[i]),
            fwhm=1.0,
            n_peaks=1 if n_peaks_seq is None else int(n_peaks_seq[i]),
        )
        snaps.append(es.Snapshot(z=i * dz, envelope=np.ones(4), metrics=m))
    return es.Trajectory(snapshots=tuple(snaps), dz_snapshot=dz, dx=dx, x_min=0.0)


def test_split_detected_persistence():
    seq = [1] * 5 + [2] * 3 + [1] * 2 + [2] * 12
    traj = _synthetic_traj(n_peaks_seq=seq)
    # the 3-snapshot burst is transient; the 12-snapshot run qualifies
    assert es.split_detected(traj, persistence=10) == pytest.approx(10.0)
    assert es.split_detected(traj, persistence=13) is None
    assert es.split_detected(traj, persistence=3) == pytest.approx(5.0)


def test_split_not_detected_for_breather():
    # second-order soliton in a uniform medium: shoulders come and go but
    # never persist as a true split
    scen = uniform_cubic_scenario(order=2, m=5e-3, zeta_total=4e4,
                                  dzeta=100.0, stride=20, half_fwhms=8.0)
    traj = es.run(scen)
    assert es.split_detected(traj) is None


def test_turning_points_oscillation():
    zs = np.arange(400)
    cents = np.sin(2 * np.pi * zs / 100.0)  # extrema at z = 25 + 50 k
    traj = _synthetic_traj(centroids=cents)
    pts = es.turning_points(traj)
    assert len(pts) == 8
    assert pts == sorted(pts)
    for p, expected in zip(pts, 25.0 + 50.0 * np.arange(8)):
        assert p == pytest.approx(expected, abs=3.0)


def test_turning_points_static_and_ballistic():
    static = _synthetic_traj(centroids=np.zeros(50))
    assert es.turning_points(static) == []
    jitter = _synthetic_traj(centroids=1e-7 * np.sin(np.arange(50)), dx=0.01)
    assert es.turning_points(jitter) == []  # below the velocity floor
    ballistic = _synthetic_traj(centroids=0.1 * np.arange(50))
    assert es.turning_points(ballistic) == []


def test_turning_points_needs_three_snapshots():
    with pytest.raises(ValueError):
        es.turning_points(_synthetic_traj(centroids=[0.0, 1.0]))
