"""Readers for the simulator's output file formats.

Three formats are understood, matching the writer's documented layouts:

- metrics CSV: header ``z_m,power,peak_amplitude,peak_x_m,centroid_x_m,
  fwhm_m,n_peaks``, one row per snapshot, empty fwhm cell allowed;
- field binary: 8-byte magic ``EITWGFLD``, u32 version, 4 pad bytes, then
  little-endian u64 nx, u64 n_snapshots, f64 x_min, f64 dx, f64 dz_snapshot
  and the snapshots as interleaved (re, im) f64 pairs;
- chi CSV: header ``x_m,re_chi1,im_chi1,re_chi3,im_chi3``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MAGIC = b"EITWGFLD"
BINARY_VERSION = 1
METRICS_HEADER = "z_m,power,peak_amplitude,peak_x_m,centroid_x_m,fwhm_m,n_peaks"
CHI_HEADER = "x_m,re_chi1,im_chi1,re_chi3,im_chi3"


class RenderError(ValueError):
    """An input file is missing, malformed, or of the wrong kind."""


@dataclass(frozen=True)
class MetricsTable:
    z: np.ndarray
    power: np.ndarray
    peak_amplitude: np.ndarray
    peak_x: np.ndarray
    centroid_x: np.ndarray
    fwhm: np.ndarray  # NaN where the writer left the cell empty
    n_peaks: np.ndarray


@dataclass(frozen=True)
class FieldGrid:
    x_min: float
    dx: float
    dz_snapshot: float
    fields: np.ndarray  # complex, shape (n_snapshots, nx)

    @property
    def xs(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.fields.shape[1])

    @property
    def zs(self) -> np.ndarray:
        return self.dz_snapshot * np.arange(self.fields.shape[0])


@dataclass(frozen=True)
class ChiProfile:
    x: np.ndarray
    chi1: np.ndarray
    chi3: np.ndarray


def _read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise RenderError(f"cannot read {path!r}: {exc}") from exc


def _parse_csv(path, header: str, n_cols: int, optional_cols=()):
    lines = _read_text(path).splitlines()
    if not lines or lines[0].strip() != header:
        raise RenderError(f"{path!r}: expected header {header!r}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != n_cols:
            raise RenderError(
                f"{path!r} line {lineno}: expected {n_cols} columns, got {len(cells)}"
            )
        row = []
        for col, cell in enumerate(cells):
            cell = cell.strip()
            if cell == "" and col in optional_cols:
                row.append(np.nan)
                continue
            try:
                row.append(float(cell))
            except ValueError:
                raise RenderError(
                    f"{path!r} line {lineno}: invalid number {cell!r}"
                ) from None
        rows.append(row)
    if not rows:
        raise RenderError(f"{path!r}: no data rows after the header")
    return np.array(rows, dtype=float)


def read_metrics_csv(path) -> MetricsTable:
    data = _parse_csv(path, METRICS_HEADER, 7, optional_cols=(5,))
    return MetricsTable(
        z=data[:, 0], power=data[:, 1], peak_amplitude=data[:, 2],
        peak_x=data[:, 3], centroid_x=data[:, 4], fwhm=data[:, 5],
        n_peaks=data[:, 6].astype(int),
    )


def read_chi_csv(path) -> ChiProfile:
    data = _parse_csv(path, CHI_HEADER, 5)
    return ChiProfile(
        x=data[:, 0],
        chi1=data[:, 1] + 1j * data[:, 2],
        chi3=data[:, 3] + 1j * data[:, 4],
    )


def read_field_binary(path) -> FieldGrid:
    try:
        blob = Path(path).read_bytes()
    except OSError as exc:
        raise RenderError(f"cannot read {path!r}: {exc}") from exc
    if len(blob) < 56 or blob[:8] != MAGIC:
        raise RenderError(f"{path!r} is not a field binary (bad magic)")
    (version,) = struct.unpack_from("<I", blob, 8)
    if version != BINARY_VERSION:
        raise RenderError(f"{path!r} has unsupported version {version}")
    nx, n_snap, x_min, dx, dz_snapshot = struct.unpack_from("<QQddd", blob, 16)
    expected = 56 + 16 * nx * n_snap
    if len(blob) != expected:
        raise RenderError(
            f"{path!r} is truncated: expected {expected} bytes, got {len(blob)}"
        )
    fields = np.frombuffer(blob, dtype="<c16", offset=56).reshape(n_snap, nx)
    return FieldGrid(x_min=x_min, dx=dx, dz_snapshot=dz_snapshot, fields=fields)


def sniff_kind(path) -> str | None:
    """Best-effort file kind: 'field' | 'metrics' | 'chi' | None."""
    try:
        head = Path(path).open("rb").read(80)
    except OSError:
        return None
    if head[:8] == MAGIC:
        return "field"
    text = head.decode("utf-8", errors="replace")
    if text.startswith(METRICS_HEADER):
        return "metrics"
    if text.startswith(CHI_HEADER):
        return "chi"
    return None
