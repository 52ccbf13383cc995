"""Godunov interface flux, CFL stepping, and evolution properties."""

import numpy as np
import pytest

import fluxjump as fj
from support import (
    ALPHA_SAMPLERS,
    constant_state,
    identity,
    identity_derivative,
    random_bv_profile,
)

TRAFFIC_FLUX_AT_CRITICAL = 0.5691485793888336  # theta=2.1, alpha=0.4, rho=0.4

WR = fj.WorkingRange(0.0, 2.0)


def brute_force_interface_flux(fam, alpha, ul, ur, n=20001):
    """Direct min/max over the Riemann interval on a fine grid."""
    lo, hi = min(ul, ur), max(ul, ur)
    samples = fam.flux(alpha, np.linspace(lo, hi, n))
    return float(np.min(samples)) if ul <= ur else float(np.max(samples))


def test_interface_flux_consistency(family_table):
    rng = np.random.default_rng(2)
    for name, fam in family_table.items():
        alpha = ALPHA_SAMPLERS[name](rng)
        for u in (0.0, 0.3, 1.7):
            assert fj.godunov_numerical_flux(fam, alpha, u, u) == fam.flux(alpha, u)


def test_interface_flux_monotone_increasing_upwinds_left():
    fam = fj.make_production_exp(WR)
    assert fj.godunov_numerical_flux(fam, 0.0, 0.0, 2.0) == 0.0
    assert fj.godunov_numerical_flux(fam, 0.0, 2.0, 0.0) == fam.flux(0.0, 2.0)


def test_interface_flux_sonic_point():
    fam = fj.make_traffic_gamma(2.1, WR)
    # critical density 0.4 inside [0.1, 1.0] with compressive data
    got = fj.godunov_numerical_flux(fam, 0.4, 1.0, 0.1)
    assert got == pytest.approx(TRAFFIC_FLUX_AT_CRITICAL, abs=1e-13)
    assert got == fam.flux(0.4, 0.4)


def test_interface_flux_matches_brute_force_min_max(family_table):
    rng = np.random.default_rng(13)
    for name, fam in family_table.items():
        if name == "scaled_identity":
            continue  # covered by the monotone branch below
        for _ in range(20):
            alpha = ALPHA_SAMPLERS[name](rng)
            ul, ur = rng.uniform(0.0, 2.0, size=2)
            got = fj.godunov_numerical_flux(fam, alpha, ul, ur)
            want = brute_force_interface_flux(fam, alpha, ul, ur)
            assert got == pytest.approx(want, abs=1e-7)


def test_interface_fluxes_ghost_cells():
    grid = fj.Grid(0.0, 1.0, 4)
    fam = fj.make_production_exp(WR)
    u = fj.GridFunction(grid, np.array([0.5, 1.0, 1.5, 0.25]))
    fluxes = fj.interface_fluxes(u, fam, 0.0)
    assert fluxes.shape == (5,)
    # zero-order extrapolation: boundary interfaces see equal states
    assert fluxes[0] == fam.flux(0.0, 0.5)
    assert fluxes[-1] == fam.flux(0.0, 0.25)


def test_cfl_timestep_formula():
    fam = fj.make_scaled(identity, WR, base_derivative=identity_derivative)
    grid = fj.Grid(0.0, 0.5, 10)  # dx = 0.05
    assert fj.cfl_timestep(fam, 2.0, fj.CflConfig(0.5), grid) == 0.0125
    grid2 = fj.Grid(0.0, 1.0, 10)  # dx = 0.1
    assert fj.cfl_timestep(fam, 1.0, fj.CflConfig(1.0), grid2) == 0.1


def test_cfl_timestep_flat_flux_takes_whole_horizon():
    fam = fj.make_scaled(identity, WR, base_derivative=identity_derivative)
    grid = fj.Grid(0.0, 1.0, 10)
    assert fj.cfl_timestep(fam, 0.0, fj.CflConfig(0.5), grid, horizon=7.5) == 7.5
    assert fj.cfl_timestep(fam, 0.0, fj.CflConfig(0.5), grid) == np.inf


def test_step_constant_data_unchanged(family_table):
    grid = fj.Grid(0.0, 1.0, 16)
    rng = np.random.default_rng(4)
    for name, fam in family_table.items():
        alpha = ALPHA_SAMPLERS[name](rng)
        u = constant_state(grid, 1.3)
        dt = fj.cfl_timestep(fam, alpha, fj.CflConfig(0.5), grid, horizon=1.0)
        out = fj.step(u, fam, alpha, min(dt, 1.0))
        assert np.array_equal(out.values, u.values)


def test_step_rejects_unstable_dt():
    grid = fj.Grid(0.0, 1.0, 16)
    fam = fj.make_scaled(identity, WR, base_derivative=identity_derivative)
    u = constant_state(grid, 1.0)
    with pytest.raises(fj.CflViolationError):
        fj.step(u, fam, 1.0, 2.0 * grid.dx)
    with pytest.raises(ValueError):
        fj.step(u, fam, 1.0, -0.1)


def test_unit_cfl_advection_shifts_one_cell_per_step():
    fam = fj.make_scaled(identity, WR, base_derivative=identity_derivative)
    grid = fj.Grid(0.0, 2.0, 128)  # dx = 1/64, exactly representable
    u = fj.sample_function(grid, lambda x: 1.5 + 0.5 * np.sin(np.pi * x))
    dt = grid.dx
    out = u
    for _ in range(3):
        out = fj.step(out, fam, 1.0, dt)
    assert np.max(np.abs(out.values[3:] - u.values[:-3])) <= 1e-13


def test_evolve_zero_duration_is_identity(family_table):
    grid = fj.Grid(0.0, 1.0, 8)
    u = constant_state(grid, 0.7)
    out = fj.evolve(u, family_table["production_exp"], 0.0, 0.0)
    assert out is u
    with pytest.raises(ValueError):
        fj.evolve(u, family_table["production_exp"], 0.0, -1.0)


def test_evolve_semigroup_on_step_lattice():
    fam = fj.make_production_exp(WR)
    grid = fj.Grid(0.0, 2.0, 128)  # dx = 1/64
    u = fj.sample_function(grid, lambda x: 1.0 + 0.8 * np.sin(np.pi * x))
    cfl = fj.CflConfig(0.5)
    dt = fj.cfl_timestep(fam, 0.0, cfl, grid)
    split = fj.evolve(fj.evolve(u, fam, 0.0, 4 * dt, cfl), fam, 0.0, 8 * dt, cfl)
    single = fj.evolve(u, fam, 0.0, 12 * dt, cfl)
    assert np.array_equal(split.values, single.values)


def test_evolve_semigroup_off_lattice_is_first_order():
    # off the step lattice the split and single runs differ only through
    # the substep arrangement; the gap is first order in dx
    fam = fj.make_production_exp(WR)
    cfl = fj.CflConfig(0.5)
    gaps = []
    for n in (64, 128):
        grid = fj.Grid(0.0, 2.0, n)
        u = fj.sample_function(grid, lambda x: 1.0 + 0.8 * np.sin(np.pi * x))
        split = fj.evolve(fj.evolve(u, fam, 0.0, 0.11, cfl), fam, 0.0, 0.17, cfl)
        single = fj.evolve(u, fam, 0.0, 0.28, cfl)
        gaps.append(fj.l1_distance(split, single))
    assert gaps[1] <= 0.75 * gaps[0]
    assert gaps[1] <= 2.0 * (2.0 / 128) * u.total_variation()


def test_step_l1_contraction(family_table):
    # L1 contraction holds between profiles whose difference stays away from
    # the open boundaries (an inflow ghost cell re-injects edge differences),
    # stepped with a shared dt.  Buffer of 30 cells >> 5 steps of spread.
    rng = np.random.default_rng(17)
    grid = fj.Grid(0.0, 2.0, 100)
    for name, fam in family_table.items():
        alpha = ALPHA_SAMPLERS[name](rng)
        u = random_bv_profile(rng, grid)
        vv = u.values.copy()
        vv[30:70] = random_bv_profile(rng, grid).values[30:70]
        v = u.with_values(vv)
        dt = fj.cfl_timestep(fam, alpha, fj.CflConfig(), grid)
        dist = fj.l1_distance(u, v)
        for _ in range(5):
            u = fj.step(u, fam, alpha, dt)
            v = fj.step(v, fam, alpha, dt)
            now = fj.l1_distance(u, v)
            assert now <= dist + 1e-12
            dist = now


def test_evolve_tv_and_range_and_mass(family_table):
    rng = np.random.default_rng(23)
    grid = fj.Grid(0.0, 2.0, 100)
    for name, fam in family_table.items():
        alpha = ALPHA_SAMPLERS[name](rng)
        u = random_bv_profile(rng, grid)
        out, outflow = fj.evolve(u, fam, alpha, 0.5, track_boundary_flux=True)
        assert out.total_variation() <= u.total_variation() + 1e-10
        assert np.min(out.values) >= np.min(u.values) - 1e-12
        assert np.max(out.values) <= np.max(u.values) + 1e-12
        assert out.mass() - u.mass() + outflow == pytest.approx(0.0, abs=1e-10)
