"""Batch chart renderer for see-bandits experiment summary CSVs."""

from .render import (
    MissingColumnsError,
    PlotSpec,
    plot,
    qualified_fraction,
    read_summary,
)

__version__ = "0.1.0"

__all__ = ["MissingColumnsError", "PlotSpec", "plot", "qualified_fraction",
           "read_summary"]
