"""Grids, grid functions, and cell-average sampling."""

import numpy as np
import pytest

import fluxjump as fj


def test_grid_geometry():
    grid = fj.Grid(-1.0, 1.0, 4)
    assert grid.dx == 0.5
    assert np.allclose(grid.cell_centers(), [-0.75, -0.25, 0.25, 0.75])
    assert np.allclose(grid.cell_edges(), [-1.0, -0.5, 0.0, 0.5, 1.0])


def test_grid_rejects_bad_geometry():
    with pytest.raises(ValueError):
        fj.Grid(1.0, 1.0, 4)
    with pytest.raises(ValueError):
        fj.Grid(0.0, 1.0, 1)


def test_cell_index_covers_domain():
    grid = fj.Grid(0.0, 1.0, 4)
    assert grid.cell_index(0.0) == 0
    assert grid.cell_index(0.1) == 0
    assert grid.cell_index(0.25) == 1  # left edge belongs to the right cell
    assert grid.cell_index(0.999) == 3
    assert grid.cell_index(1.0) == 3  # right boundary folds into the last cell
    with pytest.raises(ValueError):
        grid.cell_index(1.5)


def test_grid_function_mass_and_tv():
    grid = fj.Grid(0.0, 1.0, 4)
    u = fj.GridFunction(grid, np.array([0.0, 1.0, 1.0, 3.0]))
    assert u.mass() == pytest.approx(0.25 * 5.0)
    assert u.total_variation() == pytest.approx(3.0)
    assert u.value_at(0.3) == 1.0


def test_grid_function_immutable_and_validated():
    grid = fj.Grid(0.0, 1.0, 4)
    u = fj.GridFunction(grid, np.zeros(4))
    with pytest.raises(ValueError):
        u.values[0] = 1.0
    with pytest.raises(ValueError):
        fj.GridFunction(grid, np.zeros(5))
    with pytest.raises(fj.NonFiniteValuesError):
        fj.GridFunction(grid, np.array([0.0, np.nan, 0.0, 0.0]))
    with pytest.raises(fj.NonFiniteValuesError):
        fj.GridFunction(grid, np.array([0.0, np.inf, 0.0, 0.0]))


def test_grid_function_copies_input():
    grid = fj.Grid(0.0, 1.0, 4)
    raw = np.ones(4)
    u = fj.GridFunction(grid, raw)
    raw[0] = 99.0
    assert u.values[0] == 1.0


def test_sample_function_uses_cell_centers():
    grid = fj.Grid(0.0, 1.0, 4)
    u = fj.sample_function(grid, lambda x: 2.0 * x)
    assert np.allclose(u.values, 2.0 * grid.cell_centers())


def test_with_values_keeps_grid():
    grid = fj.Grid(0.0, 1.0, 4)
    u = fj.GridFunction(grid, np.zeros(4))
    v = u.with_values(np.ones(4))
    assert v.grid == grid
    assert np.all(v.values == 1.0)
