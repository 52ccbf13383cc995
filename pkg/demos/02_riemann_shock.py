#!/usr/bin/env python3
"""Shock propagation for the production flux, checked against theory.

A Riemann step between two constant densities travels as a single shock whose
speed is the chord slope of the flux between the two states. The scheme is
first order, so halving the cell width should roughly halve the error in the
captured shock position. This script measures exactly that.

Run:  python3 demos/02_riemann_shock.py
"""

from __future__ import annotations

import math

import numpy as np

import fluxjump as fj

U_LEFT, U_RIGHT = 0.0, 2.0
HORIZON = 10.0


def shock_position(u: fj.GridFunction, level: float) -> float:
    """Linearly interpolated crossing of the mid-level between the states."""
    x = u.grid.cell_centers()
    idx = int(np.argmax(u.values > level))
    x0, x1 = x[idx - 1], x[idx]
    y0, y1 = u.values[idx - 1], u.values[idx]
    return float(x0 + (level - y0) * (x1 - x0) / (y1 - y0))


def main() -> None:
    fam = fj.make_production_exp(fj.WorkingRange(0.0, 2.0))
    alpha = 0.0

    flux_jump = fam.flux(alpha, np.array([U_RIGHT]))[0] - fam.flux(alpha, np.array([U_LEFT]))[0]
    speed = flux_jump / (U_RIGHT - U_LEFT)
    exact = speed * HORIZON
    print(f"chord speed (flux jump over state jump): {speed:.6f}")
    print(f"expected shock position at t = {HORIZON}: {exact:.6f}")
    print(f"(closed form: 10 (1 - exp(-2)) / 2 = {10 * (1 - math.exp(-2)) / 2:.6f})\n")

    print(f"{'cells':>6} {'dx':>8} {'captured':>10} {'|error|':>10} {'error/dx':>9}")
    for n_cells in (250, 500, 1000, 2000):
        grid = fj.Grid(-20.0, 30.0, n_cells)
        x = grid.cell_centers()
        # concave flux + increasing jump: the step stays a sharp shock
        u0 = fj.GridFunction(grid, np.where(x < 0.0, U_LEFT, U_RIGHT))
        u = fj.evolve(u0, fam, alpha, HORIZON)
        captured = shock_position(u, 0.5 * (U_LEFT + U_RIGHT))
        err = abs(captured - exact)
        print(f"{n_cells:>6} {grid.dx:>8.4f} {captured:>10.5f} {err:>10.2e} {err / grid.dx:>9.3f}")

    print("\nThe interpolated front stays within a fraction of a cell of the")
    print("theoretical position at every resolution: the step moves at the")
    print("chord speed of the flux rather than any characteristic speed.")


if __name__ == "__main__":
    main()
