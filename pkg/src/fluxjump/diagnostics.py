"""Path metrics: total variation, mass, L1 distances, scatter extraction.

These are the quantities the model's guarantees are stated in. Scatter
records pair the density read at a probe position with the flux value the
currently active flux function assigns to it; their spread across a phase
is what the scattering experiments compare.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .engine import SamplePath
from .fluxes import FluxFamily
from .grid import GridFunction


def tv(u: GridFunction) -> float:
    """Discrete total variation sum |u_{i+1} - u_i|."""
    return float(np.sum(np.abs(np.diff(u.values))))


def mass(u: GridFunction) -> float:
    """Discrete mass dx * sum(u_i)."""
    return u.grid.dx * float(np.sum(u.values))


def l1_distance(u: GridFunction, v: GridFunction) -> float:
    """Discrete L1 distance dx * sum |u_i - v_i| (same grid required)."""
    if u.grid != v.grid:
        raise ValueError("grid mismatch between the two grid functions")
    return u.grid.dx * float(np.sum(np.abs(u.values - v.values)))


@dataclass(frozen=True)
class ScatterRecord:
    """Density and flux at one probe position and sample time."""

    sample_id: int
    t: float
    probe_x: float
    rho: float
    flux: float


def extract_scatter(
    path: SamplePath,
    family: FluxFamily,
    probes: Optional[Sequence[float]] = None,
    times: Optional[Sequence[float]] = None,
) -> list[ScatterRecord]:
    """Scatter records for the given probes and snapshot times.

    Defaults to all probes and all snapshot times of the path. Requested
    times must match the snapshot schedule exactly; the flux is recomputed
    from the parameter active at each snapshot, so records satisfy
    flux == f_alpha(rho) identically.
    """
    if probes is None:
        probes = path.probe_positions
    probe_indices = []
    for x in probes:
        try:
            probe_indices.append((float(x), path.probe_positions.index(float(x))))
        except ValueError:
            raise ValueError(f"probe {x} was not recorded on this path") from None
    by_time = {snap.t: snap for snap in path.snapshots}
    if times is None:
        snaps = list(path.snapshots)
    else:
        missing = [t for t in times if float(t) not in by_time]
        if missing:
            raise ValueError(f"no snapshot at times {missing}")
        snaps = [by_time[float(t)] for t in times]
    records = []
    for snap in snaps:
        for x, idx in probe_indices:
            rho = snap.probe_values[idx]
            records.append(
                ScatterRecord(
                    sample_id=path.sample_index,
                    t=snap.t,
                    probe_x=x,
                    rho=rho,
                    flux=family.flux(snap.alpha, rho),
                )
            )
    return records


@dataclass(frozen=True)
class PhaseStatistics:
    """Sample moments of density and flux over one group of records."""

    n_records: int
    mean_density: float
    var_density: float
    mean_flux: float
    var_flux: float


def phase_statistics(records: Iterable[ScatterRecord]) -> PhaseStatistics:
    """Unbiased mean/variance of density and flux over the records.

    Callers group records (per scenario, per probe) before calling; at
    least two records are required for the variance.
    """
    records = list(records)
    if len(records) < 2:
        raise ValueError(f"need at least 2 records, got {len(records)}")
    rho = np.array([r.rho for r in records])
    flux = np.array([r.flux for r in records])
    return PhaseStatistics(
        n_records=len(records),
        mean_density=float(np.mean(rho)),
        var_density=float(np.var(rho, ddof=1)),
        mean_flux=float(np.mean(flux)),
        var_flux=float(np.var(flux, ddof=1)),
    )
