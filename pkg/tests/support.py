"""Shared helpers: the standard family table and random profiles."""

from __future__ import annotations

import numpy as np

import fluxjump as fj


def identity(u):
    return np.asarray(u, dtype=np.float64)


def identity_derivative(u):
    return np.ones_like(np.asarray(u, dtype=np.float64))


def make_family_table(u_max: float = 2.0) -> dict[str, fj.FluxFamily]:
    """One representative of each family over [0, u_max]."""
    wr = fj.WorkingRange(0.0, u_max)
    return {
        "scaled_identity": fj.make_scaled(identity, wr, base_derivative=identity_derivative),
        "piecewise_min": fj.make_piecewise_min(1.0, 1.0, wr),
        "production_exp": fj.make_production_exp(wr),
        "traffic_gamma": fj.make_traffic_gamma(2.1, wr),
    }


# in-domain parameter samplers; scaled stays nonnegative so shape metadata
# (and with it the solver) is defined
ALPHA_SAMPLERS = {
    "scaled_identity": lambda rng: float(rng.uniform(0.2, 2.0)),
    "piecewise_min": lambda rng: float(rng.uniform(-1.0, 1.0)),
    "production_exp": lambda rng: float(rng.uniform(-1.0, 1.0)),
    "traffic_gamma": lambda rng: float(rng.uniform(0.1, 1.0)),
}


def random_bv_profile(rng: np.random.Generator, grid: fj.Grid,
                      u_max: float = 2.0) -> fj.GridFunction:
    """Random piecewise-constant profile with values in [0, u_max]."""
    n = grid.n_cells
    n_pieces = int(rng.integers(2, 9))
    cuts = np.sort(rng.choice(np.arange(1, n), size=n_pieces - 1, replace=False))
    levels = rng.uniform(0.0, u_max, size=n_pieces)
    values = np.empty(n)
    start = 0
    for level, end in zip(levels, list(cuts) + [n]):
        values[start:end] = level
        start = end
    return fj.GridFunction(grid, values)


def constant_state(grid: fj.Grid, value: float) -> fj.GridFunction:
    return fj.GridFunction(grid, np.full(grid.n_cells, float(value)))
