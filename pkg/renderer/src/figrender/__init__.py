"""Publication-style figures from simulator output files."""

from .formats import (ChiProfile, FieldGrid, MetricsTable, RenderError,
                      read_chi_csv, read_field_binary, read_metrics_csv,
                      sniff_kind)
from .render import KINDS, RenderJob, render

__version__ = "0.1.0"

__all__ = [
    "ChiProfile", "FieldGrid", "KINDS", "MetricsTable", "RenderError",
    "RenderJob", "read_chi_csv", "read_field_binary", "read_metrics_csv",
    "render", "sniff_kind",
]
