"""Initial states per pumping scheme.

The two-field (and spinful) coherently pumped models start from zero
fields; the condensate models start from a normalized Gaussian

    psi(x, 0) = sqrt(N_c) / (sigma_p sqrt(pi)) exp(-|x|^2 / (2 sigma_p^2))

and the reservoir, when present, from n_R(x, 0) = (P0 / gamma_R) times
the same envelope. The prefactor is the 2D normalization: on an infinite
2D plane the density integrates to N_c. The 1D form keeps the identical
formula, so its integral is N_c / (sigma_p sqrt(pi)), not N_c; on a
finite cavity both are further truncated by the domain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR
from .grid import Grid
from .models import CNRP1, CNRP1_SPIN, CNRP2, FIELD_NAMES, HINRP, SimState

ZERO = "zero"
GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class InitSpec:
    """Initial-state recipe.

    N_c is the nominal initial particle number of the Gaussian, sigma_p
    its width; P0 and gamma_R set the reservoir amplitude P0/gamma_R.
    """

    kind: str = GAUSSIAN
    N_c: float = 1.0
    sigma_p: float = 20.0
    P0: float = 60.790
    gamma_R: float = 2.0 / HBAR

    def __post_init__(self):
        if self.kind not in (ZERO, GAUSSIAN):
            raise ValueError(f"unknown init kind {self.kind!r}")
        if self.kind == GAUSSIAN and self.sigma_p <= 0:
            raise ValueError(f"sigma_p must be positive, got {self.sigma_p}")
        if self.N_c < 0:
            raise ValueError(f"N_c must be >= 0, got {self.N_c}")


def _gaussian_envelope(grid: Grid, sigma: float) -> np.ndarray:
    if grid.ndim == 1:
        r2 = grid.coords() ** 2
    else:
        X, Y = grid.coords()
        r2 = X * X + Y * Y
    return np.exp(-r2 / (2.0 * sigma * sigma))


def init_state(spec: InitSpec, grid: Grid, tag: str) -> SimState:
    """Construct the t = 0 state for the given model tag."""
    if tag in (CNRP1, CNRP1_SPIN):
        if spec.kind != ZERO:
            raise ValueError(f"model {tag!r} starts from zero fields, got kind {spec.kind!r}")
        fields = {name: np.zeros(grid.shape, dtype=complex) for name in FIELD_NAMES[tag]}
        return SimState(tag, grid, fields, 0.0)

    if tag == CNRP2:
        fields = {"psi": _condensate(spec, grid)}
        return SimState(tag, grid, fields, 0.0)

    if tag == HINRP:
        fields = {"psi": _condensate(spec, grid)}
        if spec.kind == GAUSSIAN:
            fields["n_R"] = (spec.P0 / spec.gamma_R) * _gaussian_envelope(grid, spec.sigma_p)
        else:
            fields["n_R"] = np.zeros(grid.shape)
        return SimState(tag, grid, fields, 0.0)

    raise ValueError(f"unknown model tag {tag!r}")


def _condensate(spec: InitSpec, grid: Grid) -> np.ndarray:
    if spec.kind == ZERO:
        return np.zeros(grid.shape, dtype=complex)
    amp = np.sqrt(spec.N_c) / (spec.sigma_p * np.sqrt(np.pi))
    return (amp * _gaussian_envelope(grid, spec.sigma_p)).astype(complex)
