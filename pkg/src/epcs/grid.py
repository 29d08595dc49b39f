"""Uniform centered meshes and second-order central-difference Laplacians.

Boundary conditions are fixed by the cavity geometry: Dirichlet-zero at
the x ends (1D and 2D) and periodic in y (2D only, indices wrapping
modulo ny). 2D fields are stored row-major with x fastest, i.e. shape
``(ny, nx)`` with ``values[j, i]`` at (x_i, y_j).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

BC_DIRICHLET0 = "dirichlet0"
BC_PERIODIC = "periodic"


@dataclass(frozen=True)
class Grid:
    """Uniform mesh centered on the origin.

    Spacing follows dx = cavsize_x / (nx - 1). Node i sits at
    (i - (nx - 1)/2) * dx, which is algebraically -cavsize_x/2 + i*dx but
    guarantees exact mirror symmetry x[n-1-i] == -x[i] in floating point.
    """

    ndim: int
    nx: int
    ny: int
    cavsize_x: float
    cavsize_y: float
    dx: float
    dy: float
    bc_x: str = BC_DIRICHLET0
    bc_y: str = BC_PERIODIC

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.nx,) if self.ndim == 1 else (self.ny, self.nx)

    @property
    def size(self) -> int:
        return self.nx if self.ndim == 1 else self.nx * self.ny

    @property
    def cell_volume(self) -> float:
        return self.dx if self.ndim == 1 else self.dx * self.dy

    def x_nodes(self) -> np.ndarray:
        return (np.arange(self.nx) - (self.nx - 1) / 2) * self.dx

    def y_nodes(self) -> np.ndarray:
        return (np.arange(self.ny) - (self.ny - 1) / 2) * self.dy

    def coords(self):
        """Coordinate arrays shaped like a field: x (1D) or (X, Y) (2D)."""
        if self.ndim == 1:
            return self.x_nodes()
        X, Y = np.meshgrid(self.x_nodes(), self.y_nodes())
        return X, Y


def make_grid(
    ndim: int,
    nx: int,
    cavsize_x: float,
    ny: int | None = None,
    cavsize_y: float | None = None,
) -> Grid:
    """Build a 1D or 2D uniform mesh.

    A stencil needs at least one interior node, hence nx >= 3 (and
    ny >= 3 in 2D). Sizes are cavity lengths in um.
    """
    if ndim not in (1, 2):
        raise ValueError(f"ndim must be 1 or 2, got {ndim}")
    if nx < 3:
        raise ValueError(f"nx must be >= 3, got {nx}")
    if cavsize_x <= 0:
        raise ValueError(f"cavsize_x must be positive, got {cavsize_x}")
    if ndim == 1:
        return Grid(1, nx, 1, cavsize_x, 0.0, cavsize_x / (nx - 1), 0.0)
    if ny is None or cavsize_y is None:
        raise ValueError("2D grid needs ny and cavsize_y")
    if ny < 3:
        raise ValueError(f"ny must be >= 3, got {ny}")
    if cavsize_y <= 0:
        raise ValueError(f"cavsize_y must be positive, got {cavsize_y}")
    return Grid(
        2, nx, ny, cavsize_x, cavsize_y,
        cavsize_x / (nx - 1), cavsize_y / (ny - 1),
    )


def _check_field(grid: Grid, f: np.ndarray, ndim: int) -> None:
    if grid.ndim != ndim:
        raise ValueError(f"grid is {grid.ndim}D, expected {ndim}D")
    if f.shape != grid.shape:
        raise ValueError(f"field shape {f.shape} does not match grid {grid.shape}")


def laplacian_1d(grid: Grid, f: np.ndarray) -> np.ndarray:
    """Second difference (f[i-1] - 2 f[i] + f[i+1]) / dx^2.

    Ghost values beyond the x ends are zero; the rows returned for the
    boundary nodes themselves are discarded by the stepper, which pins
    those nodes to zero. The neighbors are summed before subtracting the
    center so that mirroring the input mirrors the output bit-exactly.
    """
    _check_field(grid, f, 1)
    out = np.empty_like(f)
    out[1:-1] = f[:-2] + f[2:] - 2.0 * f[1:-1]
    out[0] = f[1] - 2.0 * f[0]
    out[-1] = f[-2] - 2.0 * f[-1]
    out /= grid.dx * grid.dx
    return out


def laplacian_2d(grid: Grid, f: np.ndarray) -> np.ndarray:
    """Five-point Laplacian: Dirichlet-zero ghosts in x, periodic wrap in y.

    Summation order is fixed (x part first, then the y part added) so
    results are reproducible bit-for-bit across runs.
    """
    _check_field(grid, f, 2)
    out = np.empty_like(f)
    out[:, 1:-1] = f[:, :-2] + f[:, 2:] - 2.0 * f[:, 1:-1]
    out[:, 0] = f[:, 1] - 2.0 * f[:, 0]
    out[:, -1] = f[:, -2] - 2.0 * f[:, -1]
    out /= grid.dx * grid.dx
    out += (np.roll(f, 1, axis=0) + np.roll(f, -1, axis=0) - 2.0 * f) / (grid.dy * grid.dy)
    return out


def laplacian(grid: Grid, f: np.ndarray) -> np.ndarray:
    return laplacian_1d(grid, f) if grid.ndim == 1 else laplacian_2d(grid, f)


def zero_dirichlet_x(grid: Grid, f: np.ndarray) -> None:
    """Pin the Dirichlet x-boundary entries of f to zero, in place."""
    if grid.ndim == 1:
        f[0] = 0.0
        f[-1] = 0.0
    else:
        f[:, 0] = 0.0
        f[:, -1] = 0.0
