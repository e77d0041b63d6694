"""Output file formats: metrics CSV, field binary, chi-profile CSV, sidecar.

The binary field format is: 16-byte header (8-byte magic, u32 version, 4
pad bytes), then little-endian u64 nx, u64 n_snapshots, f64 x_min, f64 dx,
f64 dz_snapshot, followed by the snapshots as interleaved (re, im) f64
pairs, snapshot by snapshot.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import ConfigError, SimulationError
from .scenario import ARTIFACT_VERSION, render_scenario
from .waveguide import susceptibility_profile

MAGIC = b"EITWGFLD"
BINARY_VERSION = 1
METRICS_HEADER = "z_m,power,peak_amplitude,peak_x_m,centroid_x_m,fwhm_m,n_peaks"
CHI_HEADER = "x_m,re_chi1,im_chi1,re_chi3,im_chi3"


class OutputError(SimulationError, OSError):
    """An output file could not be written or read."""


def _open_for_write(path):
    p = Path(path)
    try:
        if p.parent and not p.parent.exists():
            p.parent.mkdir(parents=True, exist_ok=True)
        return p
    except OSError as exc:
        raise OutputError(f"cannot create output directory for {path!r}: {exc}") from exc


def _g9(value) -> str:
    return f"{value:.9g}"


def write_metrics_csv(traj, path) -> None:
    """One row per snapshot, 9 significant digits; absent FWHM left empty."""
    p = _open_for_write(path)
    lines = [METRICS_HEADER]
    for s in traj.snapshots:
        m = s.metrics
        fwhm = "" if m.fwhm is None else _g9(m.fwhm)
        lines.append(",".join([
            _g9(s.z), _g9(m.power), _g9(m.peak_amplitude), _g9(m.peak_x),
            _g9(m.centroid_x), fwhm, str(m.n_peaks),
        ]))
    try:
        p.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OutputError(f"cannot write metrics CSV {path!r}: {exc}") from exc


def write_field_binary(traj, path) -> None:
    p = _open_for_write(path)
    nx = len(traj.snapshots[0].envelope)
    header = MAGIC + struct.pack("<I", BINARY_VERSION) + b"\x00" * 4
    meta = struct.pack(
        "<QQddd", nx, len(traj.snapshots), traj.x_min, traj.dx, traj.dz_snapshot
    )
    try:
        with open(p, "wb") as fh:
            fh.write(header)
            fh.write(meta)
            for s in traj.snapshots:
                fh.write(np.ascontiguousarray(s.envelope, dtype="<c16").tobytes())
    except OSError as exc:
        raise OutputError(f"cannot write field binary {path!r}: {exc}") from exc


def read_field_binary(path):
    """Read a field binary back; returns (x_min, dx, dz_snapshot, fields).

    fields has shape (n_snapshots, nx) and reconstructs the written
    snapshots bit-exactly.
    """
    try:
        blob = Path(path).read_bytes()
    except OSError as exc:
        raise OutputError(f"cannot read field binary {path!r}: {exc}") from exc
    if len(blob) < 56 or blob[:8] != MAGIC:
        raise ConfigError(f"{path!r} is not a field binary (bad magic)")
    (version,) = struct.unpack_from("<I", blob, 8)
    if version != BINARY_VERSION:
        raise ConfigError(f"{path!r} has unsupported version {version}")
    nx, n_snap, x_min, dx, dz_snapshot = struct.unpack_from("<QQddd", blob, 16)
    expected = 56 + 16 * nx * n_snap
    if len(blob) != expected:
        raise ConfigError(
            f"{path!r} is truncated: expected {expected} bytes, got {len(blob)}"
        )
    fields = np.frombuffer(blob, dtype="<c16", offset=56).reshape(n_snap, nx)
    return x_min, dx, dz_snapshot, fields


def write_chi_csv(scenario, path, z: float = 0.0) -> None:
    """Transverse chi1/chi3 profile on the scenario grid, figure units."""
    p = _open_for_write(path)
    xs = scenario.grid.xs
    chi1, chi3 = susceptibility_profile(
        scenario.atomic, scenario.beam, xs, z=z,
        lambda_p=scenario.lambda_p, normalized=True,
    )
    lines = [CHI_HEADER]
    for x, c1, c3 in zip(xs, chi1, chi3):
        lines.append(",".join(
            _g9(v) for v in (x, c1.real, c1.imag, c3.real, c3.imag)
        ))
    try:
        p.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise OutputError(f"cannot write chi CSV {path!r}: {exc}") from exc


def write_sidecar(scenario, path, version: str = ARTIFACT_VERSION) -> None:
    p = _open_for_write(path)
    try:
        p.write_text(render_scenario(scenario, version=version))
    except OSError as exc:
        raise OutputError(f"cannot write sidecar {path!r}: {exc}") from exc


def write_outputs(traj, outputs=None, sidecar_path=None) -> list:
    """Write the requested outputs of a trajectory; returns written paths.

    An empty output list writes nothing (and no sidecar).
    """
    if outputs is None:
        outputs = traj.scenario.outputs if traj.scenario is not None else ()
    outputs = tuple(outputs)
    written = []
    if not outputs:
        return written
    for spec in outputs:
        if spec.what == "metrics":
            write_metrics_csv(traj, spec.path)
        elif spec.what == "snapshots":
            write_field_binary(traj, spec.path)
        elif spec.what == "chi_profile":
            write_chi_csv(traj.scenario, spec.path)
        else:
            raise ConfigError(f"unknown output kind {spec.what!r}")
        written.append(spec.path)
    if sidecar_path is not None and traj.scenario is not None:
        write_sidecar(traj.scenario, sidecar_path)
        written.append(str(sidecar_path))
    return written
