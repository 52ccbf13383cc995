"""Uniform 1-D finite-volume grids and cell-averaged grid functions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered grid on [x_min, x_max] with n_cells cells.

    Cell i covers [x_min + i*dx, x_min + (i+1)*dx] and has center
    x_min + (i + 1/2)*dx.
    """

    x_min: float
    x_max: float
    n_cells: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min ({self.x_min}) must be < x_max ({self.x_max})")
        if self.n_cells < 2:
            raise ValueError(f"n_cells must be >= 2, got {self.n_cells}")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    def cell_centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    def cell_edges(self) -> np.ndarray:
        return self.x_min + np.arange(self.n_cells + 1) * self.dx

    def cell_index(self, x: float) -> int:
        """Index of the cell containing x (right edge belongs to the last cell)."""
        if not (self.x_min <= x <= self.x_max):
            raise ValueError(f"position {x} outside grid [{self.x_min}, {self.x_max}]")
        i = int((x - self.x_min) / self.dx)
        return min(i, self.n_cells - 1)


class NonFiniteValuesError(ValueError):
    """Raised when grid function values contain NaN or infinities."""


@dataclass(frozen=True)
class GridFunction:
    """Cell averages of a density profile on a uniform grid.

    Values are stored read-only; operations return new instances.
    """

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (self.grid.n_cells,):
            raise ValueError(
                f"expected {self.grid.n_cells} cell values, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise NonFiniteValuesError("grid function values must be finite")
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def mass(self) -> float:
        """Discrete mass dx * sum(values)."""
        return self.grid.dx * float(np.sum(self.values))

    def total_variation(self) -> float:
        """Discrete total variation sum |u_{i+1} - u_i|."""
        return float(np.sum(np.abs(np.diff(self.values))))

    def value_at(self, x: float) -> float:
        """Average of the cell containing x (no interpolation)."""
        return float(self.values[self.grid.cell_index(x)])

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.grid, values)


def sample_function(grid: Grid, func) -> GridFunction:
    """Grid function from cell-center samples of a callable (midpoint averages)."""
    return GridFunction(grid, np.asarray(func(grid.cell_centers()), dtype=np.float64))
