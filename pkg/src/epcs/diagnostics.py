"""Run observables: densities, particle numbers, condensation onset, peaks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grid import Grid
from .models import abs2


def density(f: np.ndarray) -> np.ndarray:
    """Pointwise |f|^2."""
    return abs2(np.asarray(f))


def field_density(f: np.ndarray) -> np.ndarray:
    """|f|^2 for complex fields; real fields (n_R) already are densities."""
    f = np.asarray(f)
    return abs2(f) if np.iscomplexobj(f) else f


def total_number(grid: Grid, f: np.ndarray) -> float:
    """Riemann sum of |f|^2 over the mesh, full weight at every node."""
    return float(np.sum(abs2(np.asarray(f)))) * grid.cell_volume


def condensation_onset(times, numbers) -> float | None:
    """First time the number reaches 5% of its peak and stays there.

    "Stays" means the next 10 consecutive samples (or all remaining ones,
    for short series) are also at or above the threshold. Returns None
    for an identically zero series.
    """
    times = np.asarray(times, dtype=float)
    numbers = np.asarray(numbers, dtype=float)
    if times.size == 0:
        raise ValueError("empty series")
    if np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    peak = numbers.max()
    if peak <= 0:
        return None
    above = numbers >= 0.05 * peak
    n = len(above)
    for i in np.flatnonzero(above):
        run = min(10, n - i)
        if above[i:i + run].all():
            return float(times[i])
    return None


@dataclass
class RunDiagnostics:
    """Scalar observables accumulated over one run.

    number_series maps field name -> (times, N_total(t)) sampled every
    step; peak_density / peak_number are space-time / time maxima per
    field. The headline values refer to the model's primary field.
    """

    primary_field: str
    times: np.ndarray
    number_series: dict[str, np.ndarray] = field(default_factory=dict)
    peak_density_by_field: dict[str, float] = field(default_factory=dict)
    peak_number_by_field: dict[str, float] = field(default_factory=dict)
    negativity_events: int = 0

    @property
    def peak_density(self) -> float:
        return self.peak_density_by_field[self.primary_field]

    @property
    def peak_number(self) -> float:
        return self.peak_number_by_field[self.primary_field]

    @property
    def onset_time(self) -> float | None:
        return condensation_onset(self.times, self.number_series[self.primary_field])

    def summary_lines(self, extra: dict | None = None) -> list[str]:
        """Plain key: value lines for the diagnostics file."""
        lines = []
        for key, value in (extra or {}).items():
            lines.append(f"{key}: {value}")
        onset = self.onset_time
        lines.append(f"primary_field: {self.primary_field}")
        lines.append(f"onset_ps: {'none' if onset is None else repr(onset)}")
        lines.append(f"negativity_events: {self.negativity_events}")
        for name in sorted(self.number_series):
            lines.append(f"peak_density_{name}: {self.peak_density_by_field[name]!r}")
            lines.append(f"peak_number_{name}: {self.peak_number_by_field[name]!r}")
        return lines


class DiagnosticsAccumulator:
    """Incremental peak/series tracker fed once per time step."""

    def __init__(self, grid: Grid, field_names, primary_field: str, track_negativity: bool):
        self.grid = grid
        self.field_names = tuple(field_names)
        self.primary_field = primary_field
        self.track_negativity = track_negativity
        self._times: list[float] = []
        self._numbers: dict[str, list[float]] = {name: [] for name in self.field_names}
        self._peak_density = {name: 0.0 for name in self.field_names}
        self._peak_number = {name: 0.0 for name in self.field_names}
        self.negativity_events = 0

    def update(self, t: float, fields: dict[str, np.ndarray]) -> None:
        self._times.append(t)
        for name in self.field_names:
            dens = field_density(fields[name])
            peak = float(dens.max())
            number = float(dens.sum()) * self.grid.cell_volume
            self._numbers[name].append(number)
            if peak > self._peak_density[name]:
                self._peak_density[name] = peak
            if number > self._peak_number[name]:
                self._peak_number[name] = number
        if self.track_negativity and float(fields["n_R"].min()) < 0.0:
            self.negativity_events += 1

    def finalize(self) -> RunDiagnostics:
        return RunDiagnostics(
            primary_field=self.primary_field,
            times=np.asarray(self._times),
            number_series={k: np.asarray(v) for k, v in self._numbers.items()},
            peak_density_by_field=dict(self._peak_density),
            peak_number_by_field=dict(self._peak_number),
            negativity_events=self.negativity_events,
        )


def peak_report(series) -> RunDiagnostics:
    """Recompute RunDiagnostics from a stored snapshot series.

    Equivalent to the in-run accumulator, but sampled only at snapshot
    times, so transients between snapshots are not seen.
    """
    if not series.times:
        raise ValueError("snapshot series is empty")
    from .models import HINRP, PRIMARY_FIELD

    names = list(series.states[0].keys())
    acc = DiagnosticsAccumulator(
        series.grid, names, PRIMARY_FIELD[series.tag], track_negativity=series.tag == HINRP
    )
    for t, fields in zip(series.times, series.states):
        acc.update(t, fields)
    return acc.finalize()
