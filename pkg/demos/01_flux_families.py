#!/usr/bin/env python3
"""Tour of the four parametrized flux families.

Each family maps a parameter alpha to a concave-or-convex flux function on a
working density range. The solver only needs pointwise flux values plus a
Lipschitz bound, so every family is demonstrated the same way: evaluate a few
curves, locate the throughput peak, and show how the peak moves with alpha.

Run:  python3 demos/01_flux_families.py
"""

from __future__ import annotations

import numpy as np

import fluxjump as fj


def describe(name: str, family: fj.FluxFamily, alphas: list[float], u_peak_grid: np.ndarray) -> None:
    print(f"\n{name}")
    print("-" * len(name))
    for alpha in alphas:
        values = family.flux(alpha, u_peak_grid)
        peak_at = float(u_peak_grid[np.argmax(values)])
        print(
            f"  alpha = {alpha:+.2f}: max flux {float(values.max()):.4f} "
            f"near rho = {peak_at:.3f}, Lipschitz bound {family.lipschitz_constant(alpha):.4f}"
        )


def main() -> None:
    wr = fj.WorkingRange(0.0, 2.0)
    rho = np.linspace(wr.u_min, wr.u_max, 801)

    print("Working range:", (wr.u_min, wr.u_max))

    # 1. A scaled base flux: alpha multiplies a fixed concave profile.
    base = fj.make_scaled(lambda u: u * (2.0 - u), wr)
    describe("scaled parabola  alpha * rho (2 - rho)", base, [0.5, 1.0, 1.5], rho)

    # 2. Piecewise minimum min(v rho, mu): a transport speed capped by a
    #    throughput ceiling fixed at construction; the parameter is accepted
    #    but inert, which makes this family a convenient control case.
    pw = fj.make_piecewise_min(1.0, 1.0, wr)
    describe("piecewise minimum  min(v rho, mu)", pw, [-0.5, 0.0, 0.5], rho)

    # 3. Production: saturating exponential throughput. Larger alpha raises
    #    both the service speed and the capacity, so the curve steepens and
    #    its ceiling lifts.
    prod = fj.make_production_exp(wr)
    describe("production  mu(alpha) (1 - exp(-v(alpha) rho / mu(alpha)))", prod, [-1.0, 0.0, 1.0], rho)

    # 4. Traffic: flux vanishes at rho = 0 and at the jam density, with an
    #    interior peak whose location moves with alpha.
    traffic = fj.make_traffic_gamma(2.1, wr)
    describe("traffic  gamma-shaped fundamental diagram (theta = 2.1)", traffic, [0.2, 0.4, 0.8], rho)

    # The shared numerical interface: the Godunov flux at a cell interface
    # reduces to the pointwise flux when both sides agree.
    fam = fj.make_production_exp(wr)
    u = 0.8
    godunov = fj.godunov_numerical_flux(fam, 0.0, np.array([u]), np.array([u]))[0]
    print(f"\nConsistency: Godunov flux at (u, u) equals f(u): {godunov:.12f} "
          f"vs {fam.flux(0.0, np.array([u]))[0]:.12f}")


if __name__ == "__main__":
    main()
