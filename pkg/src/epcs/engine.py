"""Fixed-step RK4 time integration, CFL gating, and the run loop."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constants import HBAR
from .diagnostics import DiagnosticsAccumulator, RunDiagnostics
from .grid import Grid, zero_dirichlet_x
from .models import HINRP, PARAMS_TAG, PRIMARY_FIELD, SimState, WAVE_FIELDS, kinetic_mass, make_rhs

REJECT = "reject"
WARN = "warn"


class CflError(RuntimeError):
    """Raised when a run is refused because the CFL ratio exceeds 1."""


class EngineError(RuntimeError):
    """Raised when the integration produces non-finite values."""


@dataclass
class RunConfig:
    """Loop controls: step size h (ps), end time (ps), snapshot cadence."""

    h: float
    t_end: float
    snapshot_every: int = 1
    cfl_policy: str = REJECT
    out_dir: Path | str | None = None

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError(f"h must be positive, got {self.h}")
        if self.t_end <= 0:
            raise ValueError(f"t_end must be positive, got {self.t_end}")
        if self.snapshot_every < 1:
            raise ValueError(f"snapshot_every must be >= 1, got {self.snapshot_every}")
        if self.cfl_policy not in (REJECT, WARN):
            raise ValueError(f"cfl_policy must be 'reject' or 'warn', got {self.cfl_policy!r}")


@dataclass
class SnapshotSeries:
    """In-memory run output: timestamped field dumps plus diagnostics."""

    tag: str
    grid: Grid
    times: list[float] = field(default_factory=list)
    states: list[dict[str, np.ndarray]] = field(default_factory=list)
    diagnostics: RunDiagnostics | None = None


def cfl_ratio(grid: Grid, h: float, m: float) -> float:
    """Explicit-scheme stability number (hbar/m) h/dx^2, summed per axis.

    The scheme is taken as stable iff the ratio is <= 1.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if m <= 0:
        raise ValueError("mass must be positive")
    r = (HBAR / m) * h / (grid.dx * grid.dx)
    if grid.ndim == 2:
        r += (HBAR / m) * h / (grid.dy * grid.dy)
    return r


def _stage(state: SimState, derivs: dict[str, np.ndarray], coeff: float, t: float) -> SimState:
    fields = {name: state.fields[name] + coeff * derivs[name] for name in state.fields}
    s = SimState(state.tag, state.grid, fields, t)
    _apply_bc(s)
    return s


def _apply_bc(state: SimState) -> None:
    for name in WAVE_FIELDS.get(state.tag, ()):
        zero_dirichlet_x(state.grid, state.fields[name])


def rk4_step(state: SimState, rhs, h: float) -> SimState:
    """One classical RK4 step; advances every field jointly.

    Dirichlet x-boundary nodes are re-zeroed after each stage and after
    the final combination. Raises EngineError on non-finite values.
    """
    t = state.t
    k1 = rhs(state)
    k2 = rhs(_stage(state, k1, 0.5 * h, t + 0.5 * h))
    k3 = rhs(_stage(state, k2, 0.5 * h, t + 0.5 * h))
    k4 = rhs(_stage(state, k3, h, t + h))
    fields = {}
    for name in state.fields:
        fields[name] = state.fields[name] + (h / 6.0) * (
            k1[name] + 2.0 * k2[name] + 2.0 * k3[name] + k4[name]
        )
    out = SimState(state.tag, state.grid, fields, t + h)
    _apply_bc(out)
    for name, values in out.fields.items():
        if not np.isfinite(values).all():
            raise EngineError(f"non-finite values in field {name!r} during step")
    return out


def run_simulation(init: SimState, params, cfg: RunConfig, writer=None) -> SnapshotSeries:
    """Integrate from init to t_end, emitting every snapshot_every-th state.

    The initial state is always emitted. Time is tracked as step_index * h
    so snapshot timestamps carry no accumulation drift. Peak diagnostics
    are accumulated every step, between snapshots included. `writer`, when
    given, is called as writer(step_index, state) for each emitted
    snapshot. A CFL ratio above 1 aborts under the 'reject' policy and
    warns under 'warn'; a non-finite field aborts with the step index and
    the snapshots emitted so far intact.
    """
    if PARAMS_TAG.get(type(params)) != init.tag:
        raise ValueError(f"params {type(params).__name__} do not match state tag {init.tag!r}")
    ratio = cfl_ratio(init.grid, cfg.h, kinetic_mass(params))
    if ratio > 1.0:
        if cfg.cfl_policy == REJECT:
            raise CflError(f"CFL ratio {ratio:.4g} > 1; refusing to start (policy=reject)")
        warnings.warn(f"CFL ratio {ratio:.4g} > 1; integration may be unstable", stacklevel=2)

    rhs = make_rhs(params, init.grid)
    n_steps = int(round(cfg.t_end / cfg.h))
    acc = DiagnosticsAccumulator(
        init.grid,
        init.fields.keys(),
        PRIMARY_FIELD[init.tag],
        track_negativity=init.tag == HINRP,
    )
    series = SnapshotSeries(init.tag, init.grid)

    state = init.copy()
    state.t = 0.0
    _apply_bc(state)
    acc.update(0.0, state.fields)
    _emit(series, state, 0, writer)

    for n in range(1, n_steps + 1):
        try:
            state = rk4_step(state, rhs, cfg.h)
        except EngineError as err:
            series.diagnostics = acc.finalize()
            raise EngineError(
                f"{err} (step {n}, t = {n * cfg.h:.6g} ps; "
                f"last good snapshot at t = {series.times[-1]:.6g} ps)"
            ) from None
        state.t = n * cfg.h
        acc.update(state.t, state.fields)
        if n % cfg.snapshot_every == 0:
            _emit(series, state, n, writer)

    series.diagnostics = acc.finalize()
    return series


def _emit(series: SnapshotSeries, state: SimState, step: int, writer) -> None:
    series.times.append(state.t)
    series.states.append({k: v.copy() for k, v in state.fields.items()})
    if writer is not None:
        writer(step, state)
