"""Exciton-polariton condensation simulator.

Mean-field dynamics of microcavity polaritons under four pumping
schemes, integrated with second-order central differences in space and
classical fixed-step RK4 in time, on 1D wires and 2D cavities.
"""

from .constants import HBAR
from .grid import Grid, laplacian, laplacian_1d, laplacian_2d, make_grid
from .pumping import (
    IncoherentPumpSpec,
    PumpSpec,
    incoherent_pump,
    power_to_field_amplitude,
    power_to_pump_rate,
    pump_field,
)
from .models import (
    CNRP1,
    CNRP1_SPIN,
    CNRP2,
    Cnrp1Params,
    Cnrp1SpinParams,
    Cnrp2Params,
    HINRP,
    HinrpParams,
    SimState,
    make_rhs,
    rhs_cnrp1,
    rhs_cnrp1_spin,
    rhs_cnrp2,
    rhs_hinrp,
)
from .initial import InitSpec, init_state
from .engine import CflError, EngineError, RunConfig, SnapshotSeries, cfl_ratio, rk4_step, run_simulation
from .diagnostics import RunDiagnostics, condensation_onset, density, peak_report, total_number
from .snapshots import EpcsError, read_series, read_snapshot, write_snapshot
from .config import Config, ConfigError, load_config, parse_config, preset, preset_names, serialize

__version__ = "0.1.0"

__all__ = [
    "HBAR",
    "Grid", "make_grid", "laplacian", "laplacian_1d", "laplacian_2d",
    "PumpSpec", "IncoherentPumpSpec", "pump_field", "incoherent_pump",
    "power_to_field_amplitude", "power_to_pump_rate",
    "CNRP1", "CNRP1_SPIN", "CNRP2", "HINRP",
    "Cnrp1Params", "Cnrp1SpinParams", "Cnrp2Params", "HinrpParams",
    "SimState", "make_rhs", "rhs_cnrp1", "rhs_cnrp1_spin", "rhs_cnrp2", "rhs_hinrp",
    "InitSpec", "init_state",
    "RunConfig", "SnapshotSeries", "cfl_ratio", "rk4_step", "run_simulation",
    "CflError", "EngineError",
    "RunDiagnostics", "density", "total_number", "condensation_onset", "peak_report",
    "EpcsError", "write_snapshot", "read_snapshot", "read_series",
    "Config", "ConfigError", "parse_config", "serialize", "load_config", "preset", "preset_names",
]
