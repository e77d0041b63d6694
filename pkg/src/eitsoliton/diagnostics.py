"""Scalar and structural observables of field snapshots and trajectories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks


@dataclass(frozen=True)
class SnapshotMetrics:
    """Observables of one transverse field snapshot.

    fwhm is None for an all-zero field (the zero-field marker); n_peaks is 0
    in that case and at least 1 otherwise.
    """

    power: float           # integral of |E|^2 dx, (V/m)^2 m
    peak_amplitude: float  # V/m
    peak_x: float          # m
    centroid_x: float      # intensity-weighted mean, m
    fwhm: float | None     # m
    n_peaks: int


def _smooth3(y: np.ndarray) -> np.ndarray:
    s = y.copy()
    s[1:-1] = (y[:-2] + y[1:-1] + y[2:]) / 3.0
    return s


def _half_max_crossing(xs, amp, i_peak, half, direction):
    """Linear-interpolated x of the half-maximum crossing on one side."""
    i = i_peak
    n = len(amp)
    while 0 <= i + direction < n and amp[i + direction] > half:
        i += direction
    j = i + direction
    if j < 0 or j >= n:
        return xs[i]  # half level never reached; clip at the domain edge
    # interpolate between samples i (above half) and j (at or below half)
    a0, a1 = amp[i], amp[j]
    if a0 == a1:
        return xs[j]
    t = (a0 - half) / (a0 - a1)
    return xs[i] + t * (xs[j] - xs[i])


def metrics(state, dx: float, x_min: float = 0.0,
            peak_rel_height: float = 0.1,
            peak_min_separation: int = 5) -> SnapshotMetrics:
    """Compute the scalar observables of one snapshot.

    Power by the trapezoidal rule; FWHM from the amplitude profile around
    the global peak; peak counting on the 3-point-smoothed amplitude with a
    relative height threshold and a minimum separation in grid points.
    x_min anchors the grid so positional metrics are absolute.
    """
    env = np.asarray(state.envelope)
    amp = np.abs(env)
    intensity = amp * amp
    power = float(np.trapezoid(intensity, dx=dx))
    if not np.any(amp > 0.0):
        return SnapshotMetrics(0.0, 0.0, 0.0, 0.0, None, 0)

    nx = len(amp)
    xs = x_min + np.arange(nx) * dx
    i_peak = int(np.argmax(amp))
    peak_amplitude = float(amp[i_peak])
    peak_x = float(xs[i_peak])
    centroid_x = float(np.sum(xs * intensity) / np.sum(intensity))

    half = 0.5 * peak_amplitude
    left = _half_max_crossing(xs, amp, i_peak, half, -1)
    right = _half_max_crossing(xs, amp, i_peak, half, +1)
    fwhm = float(right - left)

    smoothed = _smooth3(amp)
    idx, _ = find_peaks(
        smoothed,
        height=peak_rel_height * float(np.max(smoothed)),
        distance=peak_min_separation,
    )
    n_peaks = max(int(len(idx)), 1)

    return SnapshotMetrics(power, peak_amplitude, peak_x, centroid_x, fwhm, n_peaks)


def split_detected(traj, persistence: int = 10):
    """First z where n_peaks >= 2 persists for `persistence` snapshots, else None.

    The persistence filter suppresses the transient shoulders of a breathing
    second-order soliton, which separate and re-merge periodically.
    """
    run_start = None
    run_len = 0
    for snap in traj.snapshots:
        if snap.metrics.n_peaks >= 2:
            if run_start is None:
                run_start = snap.z
            run_len += 1
            if run_len >= persistence:
                return run_start
        else:
            run_start = None
            run_len = 0
    return None


def turning_points(traj, smooth_window: int = 5, velocity_floor_dx: float = 1e-3):
    """z positions where the centroid's transverse velocity changes sign.

    The centroid trace is moving-average smoothed over `smooth_window`
    snapshots before finite differencing; velocities smaller than
    velocity_floor_dx grid spacings per snapshot are treated as zero so a
    numerically static soliton reports no turning points.
    """
    if len(traj.snapshots) < 3:
        raise ValueError("turning_points requires at least 3 snapshots")
    zs = traj.zs
    cents = np.array([s.metrics.centroid_x for s in traj.snapshots])
    w = max(1, min(smooth_window, len(cents)))
    kernel = np.ones(w) / w
    smoothed = np.convolve(cents, kernel, mode="valid")
    z_mid = np.convolve(zs, kernel, mode="valid")
    v = np.diff(smoothed)
    floor = velocity_floor_dx * traj.dx
    signs = np.sign(v)
    signs[np.abs(v) < floor] = 0

    points = []
    last_sign = 0
    for i, s in enumerate(signs):
        if s == 0:
            continue
        if last_sign != 0 and s != last_sign:
            points.append(float(0.5 * (z_mid[i] + z_mid[i + 1])))
        last_sign = s
    return points
