"""Figure rendering from simulator output files."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .formats import (RenderError, read_chi_csv, read_field_binary,
                      read_metrics_csv, sniff_kind)

KINDS = ("chi_profiles", "evolution_surface", "evolution_contour",
         "centroid_trace")

_NEEDS = {
    "chi_profiles": "chi",
    "evolution_surface": "field",
    "evolution_contour": "field",
    "centroid_trace": "metrics",
}


@dataclass(frozen=True)
class RenderJob:
    """One figure to produce from one or more simulator output files."""

    kind: str
    inputs: tuple
    output: str
    dpi: int = 150

    def __post_init__(self):
        if self.kind not in KINDS:
            raise RenderError(
                f"unknown figure kind {self.kind!r}; choose from {', '.join(KINDS)}"
            )
        if not self.inputs:
            raise RenderError("RenderJob requires at least one input file")


def _pick_input(job: RenderJob) -> str:
    wanted = _NEEDS[job.kind]
    for path in job.inputs:
        if sniff_kind(path) == wanted:
            return path
    names = {"chi": "chi-profile CSV", "field": "field binary",
             "metrics": "metrics CSV"}
    raise RenderError(
        f"figure kind {job.kind!r} needs a {names[wanted]}; "
        f"none of the inputs {list(job.inputs)} is one"
    )


def _render_chi_profiles(path, ax):
    chi = read_chi_csv(path)
    x_mm = chi.x * 1e3
    ax.plot(x_mm, chi.chi1.real, "C0-", lw=2.2, label=r"Re $\chi^{(1)}$")
    ax.plot(x_mm, chi.chi1.imag, "C1-", lw=2.2, label=r"Im $\chi^{(1)}$")
    ax.plot(x_mm, chi.chi3.real, "C0--", lw=1.0, label=r"Re $\chi^{(3)}$")
    ax.plot(x_mm, chi.chi3.imag, "C1--", lw=1.0, label=r"Im $\chi^{(3)}$")
    ax.set_xlabel("x (mm)")
    ax.set_ylabel("susceptibility (normalized)")
    ax.legend(loc="best", fontsize=8)


def _render_centroid_trace(path, ax):
    table = read_metrics_csv(path)
    ax.plot(table.z * 1e3, table.centroid_x * 1e3, "C0-")
    ax.set_xlabel("z (mm)")
    ax.set_ylabel("centroid x (mm)")


def _field_axes(grid):
    return grid.xs * 1e3, grid.zs * 1e3, np.abs(grid.fields)


def _render_evolution_surface(path, fig):
    grid = read_field_binary(path)
    x_mm, z_mm, amp = _field_axes(grid)
    ax = fig.add_subplot(111, projection="3d")
    xg, zg = np.meshgrid(x_mm, z_mm)
    stride = max(1, amp.shape[1] // 256)
    ax.plot_surface(xg[:, ::stride], zg[:, ::stride], amp[:, ::stride],
                    cmap="viridis", linewidth=0, antialiased=False)
    ax.set_xlabel("x (mm)")
    ax.set_ylabel("z (mm)")
    ax.set_zlabel(r"$|E_p|$ (V/m)")
    return ax


def _render_evolution_contour(path, ax):
    grid = read_field_binary(path)
    x_mm, z_mm, amp = _field_axes(grid)
    cs = ax.contourf(x_mm, z_mm, amp, levels=30, cmap="viridis")
    ax.contour(x_mm, z_mm, amp, levels=10, colors="k", linewidths=0.3)
    ax.figure.colorbar(cs, ax=ax, label=r"$|E_p|$ (V/m)")
    ax.set_xlabel("x (mm)")
    ax.set_ylabel("z (mm)")


def render(job: RenderJob) -> str:
    """Render the job to its output image; returns the written path."""
    path = _pick_input(job)
    fig = plt.figure(figsize=(6.0, 4.5))
    try:
        if job.kind == "evolution_surface":
            _render_evolution_surface(path, fig)
        else:
            ax = fig.add_subplot(111)
            if job.kind == "chi_profiles":
                _render_chi_profiles(path, ax)
            elif job.kind == "evolution_contour":
                _render_evolution_contour(path, ax)
            else:
                _render_centroid_trace(path, ax)
        out = Path(job.output)
        if out.parent and not out.parent.exists():
            out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, dpi=job.dpi)
    finally:
        plt.close(fig)
    return str(job.output)
