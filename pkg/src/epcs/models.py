"""Model right-hand sides for the four pumping schemes.

Every model is a pure evaluation d(state)/dt = f(state, t) on the mesh:

* cnrp1       -- coupled photon/exciton fields psi_c, psi_x driven by a
                 coherent pump entering the photon equation.
* cnrp1_spin  -- the same pair per spin sigma = +/-1, with same-spin (g1)
                 and opposite-spin (g2) exciton nonlinearities.
* cnrp2       -- a single condensate field with loss and a coherent
                 source i eta F injected into the lower polariton mode.
* hinrp       -- condensate field coupled to an incoherently pumped
                 reservoir density n_R feeding it through a gain R n_R.

Derivatives at the Dirichlet x-boundary nodes are forced to zero so the
stepper keeps those nodes pinned. The reservoir density has no spatial
coupling and is not clamped: n_R < 0 is recorded by the run diagnostics,
never silently altered.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .constants import HBAR
from .grid import Grid, laplacian, zero_dirichlet_x
from .pumping import IncoherentPumpSpec, PumpSpec, incoherent_pump, pump_field

CNRP1 = "cnrp1"
CNRP1_SPIN = "cnrp1_spin"
CNRP2 = "cnrp2"
HINRP = "hinrp"

MODEL_TAGS = (CNRP1, CNRP1_SPIN, CNRP2, HINRP)

FIELD_NAMES = {
    CNRP1: ("psi_c", "psi_x"),
    CNRP1_SPIN: ("psi_c_plus", "psi_x_plus", "psi_c_minus", "psi_x_minus"),
    CNRP2: ("psi",),
    HINRP: ("psi", "n_R"),
}

# Complex condensate/photon/exciton fields, pinned to 0 at the x ends.
WAVE_FIELDS = {
    CNRP1: ("psi_c", "psi_x"),
    CNRP1_SPIN: ("psi_c_plus", "psi_x_plus", "psi_c_minus", "psi_x_minus"),
    CNRP2: ("psi",),
    HINRP: ("psi",),
}

# Field whose density the headline diagnostics report.
PRIMARY_FIELD = {
    CNRP1: "psi_c",
    CNRP1_SPIN: "psi_c_plus",
    CNRP2: "psi",
    HINRP: "psi",
}


@dataclass
class SimState:
    """Dynamical fields of one model on one grid at time t (ps)."""

    tag: str
    grid: Grid
    fields: dict[str, np.ndarray]
    t: float = 0.0

    def copy(self) -> "SimState":
        return SimState(self.tag, self.grid, {k: v.copy() for k, v in self.fields.items()}, self.t)


@dataclass
class Cnrp1Params:
    """Coherent near-resonant pumping, coupled photon/exciton pair.

    Defaults give the stock 1D configuration: Rabi coupling 4.4 meV,
    photon/exciton decay 0.1/0.01 ps^-1, polariton mass 2e-5 electron
    masses, exciton detuning 5 meV, and g = 1.132 linewidths.
    """

    omega_R: float = 4.4
    gamma_c: float = 0.1
    gamma_x: float = 0.01
    m_c: float = 5.677e3 * 2e-5
    g: float = HBAR * 0.1 * 1.132
    delta: float = 5.0
    pump: PumpSpec = field(default_factory=lambda: PumpSpec(F_p=0.5, k_p=1.0, delta_omega=5.0, w=10.0))
    hbar: float = HBAR

    def __post_init__(self):
        if self.gamma_c < 0 or self.gamma_x < 0:
            raise ValueError("decay rates must be >= 0")
        if self.m_c <= 0:
            raise ValueError("mass must be positive")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")


@dataclass
class Cnrp1SpinParams:
    """Spinful variant: per-spin pumps and cross-spin nonlinearity.

    g1 couples same-spin excitons, g2 opposite-spin; the default keeps
    g1 = 10 g2. The sigma = -1 pump detuning defaults to the sigma = +1
    value (the stock table omits it).
    """

    omega_R: float = 4.4
    gamma_c: float = 0.1
    gamma_x: float = 0.01
    m_c: float = 5.677e3 * 2e-5
    g1: float = HBAR * 0.1 * 1.132
    g2: float = HBAR * 0.1 * 0.1132
    delta: float = 5.0
    pump_plus: PumpSpec = field(default_factory=lambda: PumpSpec(F_p=0.5, k_p=1.0, delta_omega=5.0, w=10.0))
    pump_minus: PumpSpec = field(default_factory=lambda: PumpSpec(F_p=0.5, k_p=1.0, delta_omega=5.0, w=10.0))
    hbar: float = HBAR

    def __post_init__(self):
        if self.gamma_c < 0 or self.gamma_x < 0:
            raise ValueError("decay rates must be >= 0")
        if self.m_c <= 0:
            raise ValueError("mass must be positive")


@dataclass
class Cnrp2Params:
    """Driven-dissipative condensate with source i eta F.

    kinetic_sign picks the sign of the (hbar^2 / 2m) laplacian term
    inside the braces: -1 is the standard dispersion, +1 the inverted
    (negative-mass) form. Defaults give the stock configuration: lower
    polariton mass 7.44e-5 m0, gamma_c = 0.5/hbar, g = 0.86 meV um.
    """

    m: float = 7.44e-5 * 5.677e3
    gamma_c: float = 0.5 / HBAR
    g: float = 0.86
    eta: float = 1.0
    V_ext: float | np.ndarray = 0.0
    pump: PumpSpec = field(default_factory=lambda: PumpSpec(F_p=0.5, k_p=0.0, delta_omega=0.0, w=10.0))
    kinetic_sign: int = -1
    hbar: float = HBAR

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("mass must be positive")
        if self.kinetic_sign not in (-1, 1):
            raise ValueError(f"kinetic_sign must be -1 or +1, got {self.kinetic_sign}")


@dataclass
class HinrpParams:
    """Incoherently pumped condensate + reservoir pair.

    The gain law is linear, R[n_R] = R n_R, and the reservoir-induced
    potential is V_R = hbar G P(x) + hbar g_R n_R. E0 and V_ext default
    to zero but stay configurable.
    """

    E0: float = 0.0
    m: float = 7.44e-5 * 5.677e3
    gamma_c: float = 0.5 / HBAR
    gamma_R: float = 2.0 / HBAR
    R: float = 0.05 / HBAR
    g: float = 0.86
    g_R: float = 0.0
    G: float = 0.0175
    V_ext: float | np.ndarray = 0.0
    pump: IncoherentPumpSpec = field(default_factory=lambda: IncoherentPumpSpec(P0=60.790, sigma_p=20.0))
    hbar: float = HBAR

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError("mass must be positive")
        if self.gamma_R <= 0:
            raise ValueError("gamma_R must be positive")
        if self.R < 0:
            raise ValueError("R must be >= 0")


PARAMS_TAG = {
    Cnrp1Params: CNRP1,
    Cnrp1SpinParams: CNRP1_SPIN,
    Cnrp2Params: CNRP2,
    HinrpParams: HINRP,
}


def kinetic_mass(params) -> float:
    """Mass entering the kinetic term, used by the CFL check."""
    return params.m_c if hasattr(params, "m_c") else params.m


def abs2(z: np.ndarray) -> np.ndarray:
    """|z|^2 without the square root."""
    if np.iscomplexobj(z):
        return z.real * z.real + z.imag * z.imag
    return z * z


def _check_state(state: SimState, tag: str) -> None:
    if state.tag != tag:
        raise ValueError(f"state tag {state.tag!r} does not match model {tag!r}")
    for name in FIELD_NAMES[tag]:
        if name not in state.fields:
            raise ValueError(f"state is missing field {name!r}")
        if not np.isfinite(state.fields[name]).all():
            raise ValueError(f"non-finite values in field {name!r}")


class _Evaluator:
    """Grid-bound RHS with the static pump profile precomputed."""

    tag: str

    def __init__(self, params, grid: Grid):
        self.params = params
        self.grid = grid
        self.coords = grid.coords()

    def __call__(self, state: SimState) -> dict[str, np.ndarray]:
        raise NotImplementedError


class _Cnrp1Rhs(_Evaluator):
    tag = CNRP1

    def __init__(self, params: Cnrp1Params, grid: Grid):
        super().__init__(params, grid)
        self.pump_env = pump_field(params.pump, self.coords, 0.0)
        p = params
        self.kin = -(p.hbar * p.hbar) / (2.0 * p.m_c)
        self.inv_ih = -1j / p.hbar
        self.loss_c = -0.5j * p.hbar * p.gamma_c
        self.loss_x = -0.5j * p.hbar * p.gamma_x

    def __call__(self, state: SimState) -> dict[str, np.ndarray]:
        p = self.params
        psi_c = state.fields["psi_c"]
        psi_x = state.fields["psi_x"]
        F = self.pump_env * cmath.exp(-1j * p.pump.delta_omega * state.t)
        d_c = self.inv_ih * (
            p.omega_R * psi_x + F + self.kin * laplacian(self.grid, psi_c) + self.loss_c * psi_c
        )
        d_x = self.inv_ih * (
            p.omega_R * psi_c + (p.g * abs2(psi_x) + p.delta + self.loss_x) * psi_x
        )
        zero_dirichlet_x(self.grid, d_c)
        zero_dirichlet_x(self.grid, d_x)
        return {"psi_c": d_c, "psi_x": d_x}


class _Cnrp1SpinRhs(_Evaluator):
    tag = CNRP1_SPIN

    def __init__(self, params: Cnrp1SpinParams, grid: Grid):
        super().__init__(params, grid)
        self.pump_env = {
            "plus": pump_field(params.pump_plus, self.coords, 0.0),
            "minus": pump_field(params.pump_minus, self.coords, 0.0),
        }
        self.pump_spec = {"plus": params.pump_plus, "minus": params.pump_minus}
        p = params
        self.kin = -(p.hbar * p.hbar) / (2.0 * p.m_c)
        self.inv_ih = -1j / p.hbar
        self.loss_c = -0.5j * p.hbar * p.gamma_c
        self.loss_x = -0.5j * p.hbar * p.gamma_x

    def __call__(self, state: SimState) -> dict[str, np.ndarray]:
        # Both spins go through the identical expressions, so exchanging
        # the spin labels of inputs and pumps exchanges outputs exactly.
        p = self.params
        out: dict[str, np.ndarray] = {}
        for sigma, other in (("plus", "minus"), ("minus", "plus")):
            psi_c = state.fields[f"psi_c_{sigma}"]
            psi_x = state.fields[f"psi_x_{sigma}"]
            psi_x_other = state.fields[f"psi_x_{other}"]
            F = self.pump_env[sigma] * cmath.exp(-1j * self.pump_spec[sigma].delta_omega * state.t)
            d_c = self.inv_ih * (
                p.omega_R * psi_x + F + self.kin * laplacian(self.grid, psi_c) + self.loss_c * psi_c
            )
            d_x = self.inv_ih * (
                p.omega_R * psi_c
                + (p.g1 * abs2(psi_x) + p.g2 * abs2(psi_x_other) + p.delta + self.loss_x) * psi_x
            )
            zero_dirichlet_x(self.grid, d_c)
            zero_dirichlet_x(self.grid, d_x)
            out[f"psi_c_{sigma}"] = d_c
            out[f"psi_x_{sigma}"] = d_x
        return out


class _Cnrp2Rhs(_Evaluator):
    tag = CNRP2

    def __init__(self, params: Cnrp2Params, grid: Grid):
        super().__init__(params, grid)
        self.pump_env = pump_field(params.pump, self.coords, 0.0)
        p = params
        self.kin = p.kinetic_sign * (p.hbar * p.hbar) / (2.0 * p.m)
        self.inv_ih = -1j / p.hbar
        self.loss = -0.5j * p.hbar * p.gamma_c
        self.source_env = (p.eta / p.hbar) * self.pump_env  # (1/i hbar) * i eta F

    def __call__(self, state: SimState) -> dict[str, np.ndarray]:
        p = self.params
        psi = state.fields["psi"]
        brace = (
            self.kin * laplacian(self.grid, psi)
            + (p.V_ext + p.hbar * p.g * abs2(psi) + self.loss) * psi
        )
        d = self.inv_ih * brace
        d += self.source_env * cmath.exp(-1j * p.pump.delta_omega * state.t)
        zero_dirichlet_x(self.grid, d)
        return {"psi": d}


class _HinrpRhs(_Evaluator):
    tag = HINRP

    def __init__(self, params: HinrpParams, grid: Grid):
        super().__init__(params, grid)
        self.pump_rate = incoherent_pump(params.pump, self.coords)
        p = params
        self.kin = -(p.hbar * p.hbar) / (2.0 * p.m)
        self.inv_ih = -1j / p.hbar
        self.V_pump = p.hbar * p.G * self.pump_rate  # static part of V_R

    def __call__(self, state: SimState) -> dict[str, np.ndarray]:
        p = self.params
        psi = state.fields["psi"]
        n_R = state.fields["n_R"]
        dens = abs2(psi)
        gain = p.R * n_R
        V_R = self.V_pump + p.hbar * p.g_R * n_R
        brace = (
            self.kin * laplacian(self.grid, psi)
            + (p.E0 + 0.5j * p.hbar * (gain - p.gamma_c) + p.V_ext + p.hbar * p.g * dens + V_R) * psi
        )
        d_psi = self.inv_ih * brace
        d_n = self.pump_rate - p.gamma_R * n_R - gain * dens
        zero_dirichlet_x(self.grid, d_psi)
        return {"psi": d_psi, "n_R": d_n}


_EVALUATORS = {
    CNRP1: _Cnrp1Rhs,
    CNRP1_SPIN: _Cnrp1SpinRhs,
    CNRP2: _Cnrp2Rhs,
    HINRP: _HinrpRhs,
}


def make_rhs(params, grid: Grid):
    """Bind params to a grid, returning a fast rhs(state) -> derivatives."""
    tag = PARAMS_TAG.get(type(params))
    if tag is None:
        raise TypeError(f"unknown parameter type {type(params).__name__}")
    return _EVALUATORS[tag](params, grid)


def rhs_cnrp1(state: SimState, params: Cnrp1Params) -> dict[str, np.ndarray]:
    """d/dt of (psi_c, psi_x) under coherent near-resonant pumping."""
    _check_state(state, CNRP1)
    return _Cnrp1Rhs(params, state.grid)(state)


def rhs_cnrp1_spin(state: SimState, params: Cnrp1SpinParams) -> dict[str, np.ndarray]:
    """d/dt of the four spinful fields; cross-spin nonlinearity g2."""
    _check_state(state, CNRP1_SPIN)
    return _Cnrp1SpinRhs(params, state.grid)(state)


def rhs_cnrp2(state: SimState, params: Cnrp2Params) -> dict[str, np.ndarray]:
    """d/dt of the condensate field with the coherent source eta F / hbar."""
    _check_state(state, CNRP2)
    return _Cnrp2Rhs(params, state.grid)(state)


def rhs_hinrp(state: SimState, params: HinrpParams) -> dict[str, np.ndarray]:
    """d/dt of (psi, n_R) for incoherent non-resonant pumping."""
    _check_state(state, HINRP)
    return _HinrpRhs(params, state.grid)(state)
