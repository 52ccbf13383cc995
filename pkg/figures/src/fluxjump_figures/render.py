"""Build and save the three figure kinds from simulator CSV artifacts.

Inputs are classified by their headers, so one invocation can mix a
scatter file with the flux-curve table that provides its reference
overlay. Rendering is read-only over the inputs and deterministic for
fixed inputs and options.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .io import (  # noqa: E402
    SchemaError,
    classify,
    read_flux_curves,
    read_paths,
    read_scatter,
)


class FigureKind(enum.Enum):
    FLUX_CURVES = "flux_curves"
    SCATTER = "scatter"
    TIME_SERIES = "time_series"


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: kind, input files, probe filter, optional reference."""

    kind: FigureKind
    inputs: tuple
    probe: Optional[float] = None
    reference_alpha: Optional[float] = None

    def __post_init__(self):
        if not self.inputs:
            raise SchemaError("at least one input file is required")


def _classified_inputs(spec: FigureSpec) -> dict[str, list]:
    groups: dict[str, list] = {"flux_curves": [], "scatter": [], "paths": []}
    for path in spec.inputs:
        groups[classify(path)].append(path)
    return groups


def _build_flux_curves(spec: FigureSpec, groups) -> plt.Figure:
    files = groups["flux_curves"]
    if not files:
        raise SchemaError(
            "flux_curves figure needs a flux-curve input (columns alpha, rho, flux)"
        )
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for path in files:
        for a, rho, flux in read_flux_curves(path).curves():
            ax.plot(rho, flux, linewidth=1.5, label=f"alpha = {a:g}")
    ax.set_xlabel("density")
    ax.set_ylabel("flux")
    ax.set_title("Flux curves")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def _reference_curve(spec: FigureSpec, groups):
    """(alpha, rho, flux) of the requested reference parameter, or None."""
    if spec.reference_alpha is None:
        return None
    target = spec.reference_alpha
    for path in groups["flux_curves"]:
        for a, rho, flux in read_flux_curves(path).curves():
            if np.isclose(a, target, rtol=1e-9, atol=1e-12):
                order = np.argsort(rho)
                return a, rho[order], flux[order]
    raise SchemaError(
        f"no flux-curve input provides the reference parameter {target:g}; "
        f"pass a fluxcurves.csv containing that curve"
    )


def _build_scatter(spec: FigureSpec, groups) -> plt.Figure:
    files = groups["scatter"]
    if not files:
        raise SchemaError(
            "scatter figure needs a scatter input "
            "(columns sample_id, t, probe_x, rho, flux)"
        )
    reference = _reference_curve(spec, groups)

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    total = 0
    for path in files:
        table = read_scatter(path)
        rho, flux = table.rho, table.flux
        if spec.probe is not None and len(table):
            mask = np.isclose(table.probe_x, spec.probe, rtol=0.0, atol=1e-12)
            if not mask.any():
                available = sorted(set(table.probe_x.tolist()))
                warnings.warn(
                    f"{path}: no records at probe {spec.probe:g}; "
                    f"probes on file: {', '.join(f'{x:g}' for x in available)}"
                )
            rho, flux = rho[mask], flux[mask]
        total += rho.size
        ax.scatter(rho, flux, s=6, alpha=0.35, linewidths=0,
                   label=Path(path).stem)
    if total == 0:
        warnings.warn("no scatter records to plot; rendering empty axes")
    if reference is not None:
        a, rho, flux = reference
        ax.plot(rho, flux, color="black", linewidth=1.8,
                label=f"flux for alpha = {a:g}")
    ax.set_xlabel("density")
    ax.set_ylabel("flux")
    where = f" at x = {spec.probe:g}" if spec.probe is not None else ""
    ax.set_title(f"Density-flux scatter{where}")
    if total > 0 or reference is not None:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


def _build_time_series(spec: FigureSpec, groups) -> plt.Figure:
    files = groups["paths"]
    if not files:
        raise SchemaError(
            "time_series figure needs a path-summary input "
            "(columns sample_id, t, alpha, mass, tv, rho@<probe>, flux@<probe>)"
        )
    if len(files) > 1:
        raise SchemaError("time_series figure takes exactly one path-summary input")
    table = read_paths(files[0])
    positions = table.probe_positions()
    if not positions:
        raise SchemaError(f"{files[0]}: no probe columns (rho@<probe>, flux@<probe>)")
    if spec.probe is None:
        if len(positions) > 1:
            raise SchemaError(
                f"{files[0]} has probes at "
                f"{', '.join(f'{x:g}' for x in positions)}; pick one with --probe"
            )
        probe = positions[0]
    else:
        matches = [x for x in positions
                   if np.isclose(x, spec.probe, rtol=0.0, atol=1e-12)]
        if not matches:
            raise SchemaError(
                f"{files[0]}: no probe at {spec.probe:g}; probes on file: "
                f"{', '.join(f'{x:g}' for x in positions)}"
            )
        probe = matches[0]

    rho, flux = table.probes[probe]
    samples = table.sample_ids()
    fig, (ax_rho, ax_flux) = plt.subplots(
        2, 1, figsize=(7.0, 5.0), sharex=True)
    for sid in samples:
        mask = table.sample_id == sid
        label = f"sample {sid}" if len(samples) <= 6 else None
        ax_rho.plot(table.t[mask], rho[mask], linewidth=0.9, alpha=0.8,
                    label=label)
        ax_flux.plot(table.t[mask], flux[mask], linewidth=0.9, alpha=0.8,
                     label=label)
    ax_rho.set_ylabel(f"density at x = {probe:g}")
    ax_flux.set_ylabel(f"flux at x = {probe:g}")
    ax_flux.set_xlabel("time")
    ax_rho.set_title("Probe time series")
    if len(samples) <= 6:
        ax_rho.legend(loc="best", fontsize=8)
    fig.tight_layout()
    return fig


_BUILDERS = {
    FigureKind.FLUX_CURVES: _build_flux_curves,
    FigureKind.SCATTER: _build_scatter,
    FigureKind.TIME_SERIES: _build_time_series,
}


def build_figure(spec: FigureSpec) -> plt.Figure:
    """The matplotlib figure for a spec; callers own closing it."""
    groups = _classified_inputs(spec)
    return _BUILDERS[spec.kind](spec, groups)


def render(spec: FigureSpec, out) -> Path:
    """Build the figure and write it to ``out`` (format from the suffix)."""
    fig = build_figure(spec)
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    try:
        fig.savefig(out, dpi=150)
    finally:
        plt.close(fig)
    return out
