"""Pump fields and laser-power conversions.

The coherent pump is a Gaussian laser spot carrying a plane-wave phase:

    F(x, t) = F_p exp(i (k_p . x - delta_omega t)) exp(-|x - x0|^2 / (2 w^2))

delta_omega is the pump frequency in the rotating frame, so no absolute
cavity frequencies appear anywhere. The incoherent (non-resonant) pump is
a real, time-independent rate profile, Gaussian by default with a uniform
option.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C_LIGHT, EPSILON0, NW_TO_MEV_PER_PS, NW_TO_MEV_PER_S

GAUSSIAN = "gaussian"
UNIFORM = "uniform"


@dataclass(frozen=True)
class PumpSpec:
    """Coherent pump parameters.

    F_p: field amplitude, meV um^-1/2 (1D) or meV um^-1 (2D).
    k_p: wavevector um^-1; a (kx, ky) pair in 2D.
    delta_omega: rotating-frame pump frequency, ps^-1.
    w: Gaussian spot width, um.
    x0: spot center, um; (x0, y0) pair in 2D. 0 by convention.
    """

    F_p: float = 0.0
    k_p: float | tuple[float, float] = 0.0
    delta_omega: float = 0.0
    w: float = 10.0
    x0: float | tuple[float, float] = 0.0

    def __post_init__(self):
        if self.w <= 0:
            raise ValueError(f"pump width must be positive, got {self.w}")
        if self.F_p < 0:
            raise ValueError(f"pump amplitude must be >= 0, got {self.F_p}")


@dataclass(frozen=True)
class IncoherentPumpSpec:
    """Non-resonant pumping-rate profile.

    P0: rate amplitude, um^-1 ps^-1 (1D) or um^-2 ps^-1 (2D).
    sigma_p: Gaussian width, um (ignored for the uniform profile).
    """

    P0: float = 0.0
    sigma_p: float = 20.0
    profile: str = GAUSSIAN

    def __post_init__(self):
        if self.P0 < 0:
            raise ValueError(f"pump rate must be >= 0, got {self.P0}")
        if self.sigma_p <= 0:
            raise ValueError(f"sigma_p must be positive, got {self.sigma_p}")
        if self.profile not in (GAUSSIAN, UNIFORM):
            raise ValueError(f"unknown pump profile {self.profile!r}")


def _pair(v) -> tuple[float, float]:
    if isinstance(v, tuple):
        return v
    return (v, v)


def pump_field(spec: PumpSpec, x, t: float):
    """Evaluate the coherent pump at position(s) x and time t.

    x is a scalar or array in 1D, or an (X, Y) tuple in 2D; in 2D the
    plane-wave phase uses the k.x dot product and the envelope the
    squared Euclidean distance from the spot center.
    """
    if isinstance(x, tuple):
        X, Y = x
        kx, ky = _pair(spec.k_p)
        x0, y0 = _pair(spec.x0)
        phase = kx * X + ky * Y - spec.delta_omega * t
        r2 = (X - x0) ** 2 + (Y - y0) ** 2
    else:
        phase = spec.k_p * x - spec.delta_omega * t
        r2 = (x - spec.x0) ** 2
    return spec.F_p * np.exp(1j * phase) * np.exp(-r2 / (2.0 * spec.w * spec.w))


def incoherent_pump(spec: IncoherentPumpSpec, x):
    """Evaluate the incoherent pumping rate at position(s) x.

    The Gaussian profile is centered on the origin with width sigma_p;
    the uniform profile is P0 everywhere.
    """
    if isinstance(x, tuple):
        X, Y = x
        r2 = X * X + Y * Y
    else:
        r2 = np.asarray(x) ** 2
    if spec.profile == UNIFORM:
        return np.broadcast_to(spec.P0, np.shape(r2)).copy() if np.ndim(r2) else spec.P0
    return spec.P0 * np.exp(-r2 / (2.0 * spec.sigma_p * spec.sigma_p))


def power_to_field_amplitude(power_nw: float, extent: float) -> float:
    """Convert laser power (nW) to the pump field amplitude F_p.

    extent is the cavity length L in um (1D) or area A in um^2 (2D):
    F_p = sqrt(2 P / (c eps0 extent)) with P in meV/s. 10 nW over
    L = 100 um gives 0.2743642 meV um^-1/2; over A = 576 um^2,
    0.114318 meV um^-1.
    """
    if power_nw < 0:
        raise ValueError(f"laser power must be >= 0, got {power_nw}")
    if extent <= 0:
        raise ValueError(f"extent must be positive, got {extent}")
    p_mev_per_s = power_nw * NW_TO_MEV_PER_S
    return math.sqrt(2.0 * p_mev_per_s / (C_LIGHT * EPSILON0 * extent))


def power_to_pump_rate(power_nw: float, extent: float) -> float:
    """Convert laser power (nW) to an incoherent pumping rate P' = P/extent.

    10 nW over L = 100 um gives 0.6242 meV/(um ps); over A = 576 um^2,
    0.108368 meV/(um^2 ps).
    """
    if power_nw < 0:
        raise ValueError(f"laser power must be >= 0, got {power_nw}")
    if extent <= 0:
        raise ValueError(f"extent must be positive, got {extent}")
    return power_nw * NW_TO_MEV_PER_PS / extent
