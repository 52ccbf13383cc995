"""Figure rendering for fluxjump CSV artifacts.

The package is a pure consumer of the simulator's file formats: flux-curve
tables (alpha, rho, flux), density-flux scatter records, and per-snapshot
path summaries. It never imports the simulator.
"""

__version__ = "0.1.0"

from .io import SchemaError, read_flux_curves, read_paths, read_scatter
from .render import FigureKind, FigureSpec, build_figure, render

__all__ = [
    "__version__",
    "SchemaError",
    "read_flux_curves",
    "read_paths",
    "read_scatter",
    "FigureKind",
    "FigureSpec",
    "build_figure",
    "render",
]
