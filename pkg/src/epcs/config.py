"""Sectioned key = value run configuration and shipped presets.

A config is plain text with [section] headers; the model tag rides in
the model section header::

    [model cnrp2]
    g_ratio = 10

    [grid]
    ndim = 1

Sections: model, grid, pump, init, run. Every key has a model-specific
default, so an empty section is legal. Unknown keys are rejected. Units
are fixed by the schema (meV, um, ps) and never written in the file.

The interaction strength can be given directly (g) or as a ratio
(g_ratio) of the strong-correlation parameter: for the photon/exciton
models the ratio multiplies the linewidth hbar*gamma_c; for the
condensate models it multiplies the decay rate gamma_c. Giving both is
an error.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .constants import HBAR
from .engine import RunConfig
from .grid import Grid, make_grid
from .initial import GAUSSIAN, InitSpec, ZERO
from .models import (
    CNRP1,
    CNRP1_SPIN,
    CNRP2,
    Cnrp1Params,
    Cnrp1SpinParams,
    Cnrp2Params,
    HINRP,
    HinrpParams,
    MODEL_TAGS,
)
from .pumping import IncoherentPumpSpec, PumpSpec


class ConfigError(ValueError):
    """Malformed configuration text or inconsistent keys."""


_MODEL_KEYS = {
    CNRP1: {
        "omega_R": 4.4, "gamma_c": 0.1, "gamma_x": 0.01,
        "m_c": 5.677e3 * 2e-5, "g": None, "g_ratio": 1.132, "delta": 5.0,
    },
    CNRP1_SPIN: {
        "omega_R": 4.4, "gamma_c": 0.1, "gamma_x": 0.01,
        "m_c": 5.677e3 * 2e-5, "g1": None, "g1_ratio": 1.132,
        "g2": None, "g2_ratio": 0.1132, "delta": 5.0,
    },
    CNRP2: {
        "m": 7.44e-5 * 5.677e3, "gamma_c": 0.5 / HBAR, "g": 0.86,
        "g_ratio": None, "eta": 1.0, "kinetic_sign": -1,
    },
    HINRP: {
        "E0": 0.0, "m": 7.44e-5 * 5.677e3, "gamma_c": 0.5 / HBAR,
        "gamma_R": 2.0 / HBAR, "R": 0.05 / HBAR, "g": 0.86, "g_ratio": None,
        "g_R": 0.0, "G": 0.0175,
    },
}

# (key, exclusive partner) pairs; only one of each pair may be present.
_EXCLUSIVE = {
    "g": "g_ratio", "g_ratio": "g",
    "g1": "g1_ratio", "g1_ratio": "g1",
    "g2": "g2_ratio", "g2_ratio": "g2",
}

_COHERENT_PUMP_KEYS = {
    "F_p": 0.5, "k_p": None, "k_px": None, "k_py": None,
    "delta_omega": 0.0, "w": 10.0, "x0": 0.0,
}

_PUMP_KEYS = {
    CNRP1: dict(_COHERENT_PUMP_KEYS, k_p=1.0, delta_omega=5.0),
    CNRP2: dict(_COHERENT_PUMP_KEYS, k_p=0.0),
    HINRP: {"P0": 60.790, "sigma_p": 20.0, "profile": GAUSSIAN},
}
_PUMP_KEYS[CNRP1_SPIN] = {}
for _side in ("plus", "minus"):
    for _k, _v in _PUMP_KEYS[CNRP1].items():
        _PUMP_KEYS[CNRP1_SPIN][f"{_k}_{_side}"] = _v

_GRID_KEYS = {"ndim": 1, "nx": None, "ny": None, "cavsize_x": None, "cavsize_y": None}

_INIT_KEYS = {"kind": None, "N_c": 1.0, "sigma_p": 20.0}

_RUN_KEYS = {"h": 0.001, "t_end": 20.0, "snapshot_every": 100, "cfl_policy": "reject"}

_INT_KEYS = {"ndim", "nx", "ny", "snapshot_every", "kinetic_sign"}
_STR_KEYS = {"kind", "profile", "cfl_policy"}


@dataclass(frozen=True)
class Config:
    """Fully resolved configuration record."""

    tag: str
    model: dict
    grid: dict
    pump: dict
    init: dict
    run: dict

    def section(self, name: str) -> dict:
        return getattr(self, name)


def _defaults(tag: str) -> dict[str, dict]:
    grid = dict(_GRID_KEYS)
    init = dict(_INIT_KEYS)
    init["kind"] = ZERO if tag in (CNRP1, CNRP1_SPIN) else GAUSSIAN
    return {
        "model": {k: v for k, v in _MODEL_KEYS[tag].items() if v is not None},
        "grid": grid,
        "pump": {k: v for k, v in _PUMP_KEYS[tag].items() if v is not None},
        "init": init,
        "run": dict(_RUN_KEYS),
    }


def _coerce(section: str, key: str, raw: str):
    base = key[:-5] if key.endswith("_plus") else key[:-6] if key.endswith("_minus") else key
    if base in _STR_KEYS:
        return raw
    try:
        if base in _INT_KEYS:
            return int(raw)
        return float(raw)
    except ValueError:
        raise ConfigError(f"non-numeric value for [{section}] {key} = {raw!r}") from None


def parse_config(text: str) -> Config:
    """Parse config text; omitted keys take the model's table defaults."""
    sections: dict[str, dict[str, str]] = {}
    tag: str | None = None
    current: dict[str, str] | None = None
    current_name = ""
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            headers = line[1:-1].split()
            name = headers[0]
            if name == "model":
                if len(headers) != 2 or headers[1] not in MODEL_TAGS:
                    raise ConfigError(
                        f"line {lineno}: model section must be [model <{'/'.join(MODEL_TAGS)}>]"
                    )
                tag = headers[1]
            elif name not in ("grid", "pump", "init", "run") or len(headers) != 1:
                raise ConfigError(f"line {lineno}: unknown section {line}")
            if name in sections:
                raise ConfigError(f"line {lineno}: duplicate section [{name}]")
            current = sections.setdefault(name, {})
            current_name = name
            continue
        if "=" not in line or current is None:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key in current:
            raise ConfigError(f"line {lineno}: duplicate key {key!r} in [{current_name}]")
        current[key] = raw

    if tag is None:
        raise ConfigError("missing required [model <tag>] section")

    allowed = {
        "model": set(_MODEL_KEYS[tag]),
        "grid": set(_GRID_KEYS),
        "pump": set(_PUMP_KEYS[tag]),
        "init": set(_INIT_KEYS),
        "run": set(_RUN_KEYS),
    }
    resolved = _defaults(tag)
    for name, entries in sections.items():
        for key, raw in entries.items():
            if key not in allowed[name]:
                raise ConfigError(f"unknown key {key!r} in section [{name}]")
            partner = _EXCLUSIVE.get(key)
            if partner is not None and partner in entries:
                raise ConfigError(f"keys {key!r} and {partner!r} are mutually exclusive")
            if partner is not None:
                resolved[name].pop(partner, None)
            resolved[name][key] = _coerce(name, key, raw)
    return Config(tag, **resolved)


def serialize(cfg: Config) -> str:
    """Render a config back to text; parse(serialize(cfg)) == cfg."""
    out = [f"[model {cfg.tag}]"]
    for key, value in cfg.model.items():
        out.append(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")
    for name in ("grid", "pump", "init", "run"):
        out.append("")
        out.append(f"[{name}]")
        for key, value in cfg.section(name).items():
            if value is None:
                continue
            out.append(f"{key} = {value!r}" if isinstance(value, float) else f"{key} = {value}")
    return "\n".join(out) + "\n"


def load_config(path) -> Config:
    return parse_config(Path(path).read_text())


def preset_names() -> list[str]:
    files = resources.files("epcs").joinpath("presets")
    return sorted(p.name[:-4] for p in files.iterdir() if p.name.endswith(".cfg"))


def preset(name: str) -> Config:
    """Load one of the shipped parameter-table presets."""
    res = resources.files("epcs").joinpath(f"presets/{name}.cfg")
    if not res.is_file():
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(preset_names())}")
    return parse_config(res.read_text())


def set_param(cfg: Config, key: str, value) -> Config:
    """Return a copy of cfg with one key overridden (used by sweeps).

    The key is located by name across sections; setting one side of a
    mutually exclusive pair (g / g_ratio) drops the other side.
    """
    hits = [name for name in ("model", "grid", "pump", "init", "run") if key in _allowed(cfg.tag, name)]
    if not hits:
        raise ConfigError(f"unknown parameter {key!r} for model {cfg.tag}")
    name = hits[0]
    section = dict(cfg.section(name))
    partner = _EXCLUSIVE.get(key)
    if partner is not None:
        section.pop(partner, None)
    section[key] = _coerce(name, key, str(value))
    return replace(cfg, **{name: section})


def _allowed(tag: str, section: str) -> set[str]:
    return {
        "model": set(_MODEL_KEYS[tag]),
        "grid": set(_GRID_KEYS),
        "pump": set(_PUMP_KEYS[tag]),
        "init": set(_INIT_KEYS),
        "run": set(_RUN_KEYS),
    }[section]


def build_grid(cfg: Config) -> Grid:
    g = cfg.grid
    ndim = g["ndim"]
    if ndim == 1:
        nx = g["nx"] if g["nx"] is not None else 201
        size = g["cavsize_x"] if g["cavsize_x"] is not None else 100.0
        return make_grid(1, nx, size)
    nx = g["nx"] if g["nx"] is not None else 241
    ny = g["ny"] if g["ny"] is not None else nx
    size_x = g["cavsize_x"] if g["cavsize_x"] is not None else 24.0
    size_y = g["cavsize_y"] if g["cavsize_y"] is not None else size_x
    return make_grid(2, nx, size_x, ny, size_y)


def _resolve_g(cfg: Config, key: str, ratio_key: str) -> float:
    m = cfg.model
    if key in m:
        return m[key]
    ratio = m[ratio_key]
    if cfg.tag in (CNRP1, CNRP1_SPIN):
        return ratio * HBAR * m["gamma_c"]  # ratio of the linewidth hbar*gamma_c
    return ratio * m["gamma_c"]  # ratio of the decay rate gamma_c


def _coherent_pump(entries: dict, suffix: str = "") -> PumpSpec:
    def get(key, default=None):
        return entries.get(key + suffix, default)

    k_p = get("k_p", 0.0)
    if get("k_px") is not None or get("k_py") is not None:
        k_p = (get("k_px", k_p), get("k_py", k_p))
    return PumpSpec(
        F_p=get("F_p", 0.0), k_p=k_p,
        delta_omega=get("delta_omega", 0.0), w=get("w", 10.0), x0=get("x0", 0.0),
    )


def build_params(cfg: Config):
    """Instantiate the model parameter record for cfg's tag."""
    m = cfg.model
    if cfg.tag == CNRP1:
        return Cnrp1Params(
            omega_R=m["omega_R"], gamma_c=m["gamma_c"], gamma_x=m["gamma_x"],
            m_c=m["m_c"], g=_resolve_g(cfg, "g", "g_ratio"), delta=m["delta"],
            pump=_coherent_pump(cfg.pump),
        )
    if cfg.tag == CNRP1_SPIN:
        return Cnrp1SpinParams(
            omega_R=m["omega_R"], gamma_c=m["gamma_c"], gamma_x=m["gamma_x"],
            m_c=m["m_c"], g1=_resolve_g(cfg, "g1", "g1_ratio"),
            g2=_resolve_g(cfg, "g2", "g2_ratio"), delta=m["delta"],
            pump_plus=_coherent_pump(cfg.pump, "_plus"),
            pump_minus=_coherent_pump(cfg.pump, "_minus"),
        )
    if cfg.tag == CNRP2:
        return Cnrp2Params(
            m=m["m"], gamma_c=m["gamma_c"], g=_resolve_g(cfg, "g", "g_ratio"),
            eta=m["eta"], kinetic_sign=m["kinetic_sign"],
            pump=_coherent_pump(cfg.pump),
        )
    return HinrpParams(
        E0=m["E0"], m=m["m"], gamma_c=m["gamma_c"], gamma_R=m["gamma_R"],
        R=m["R"], g=_resolve_g(cfg, "g", "g_ratio"), g_R=m["g_R"], G=m["G"],
        pump=IncoherentPumpSpec(
            P0=cfg.pump["P0"], sigma_p=cfg.pump["sigma_p"], profile=cfg.pump["profile"],
        ),
    )


def build_init(cfg: Config) -> InitSpec:
    init = cfg.init
    if cfg.tag == HINRP:
        return InitSpec(
            kind=init["kind"], N_c=init["N_c"], sigma_p=init["sigma_p"],
            P0=cfg.pump["P0"], gamma_R=cfg.model["gamma_R"],
        )
    return InitSpec(kind=init["kind"], N_c=init["N_c"], sigma_p=init["sigma_p"])


def build_run(cfg: Config, out_dir=None, policy: str | None = None) -> RunConfig:
    run = cfg.run
    return RunConfig(
        h=run["h"], t_end=run["t_end"], snapshot_every=run["snapshot_every"],
        cfl_policy=policy or run["cfl_policy"], out_dir=out_dir,
    )


def describe(cfg: Config) -> dict:
    """key: value pairs identifying a run, written into diagnostics files."""
    info = {"model": cfg.tag}
    m = cfg.model
    if "g_ratio" in m and cfg.tag in (CNRP2, HINRP):
        info["g_over_gamma_c"] = m["g_ratio"]
    elif cfg.tag in (CNRP2, HINRP):
        info["g_over_gamma_c"] = m["g"] / m["gamma_c"]
    for key, value in m.items():
        info[key] = value
    for key, value in cfg.pump.items():
        if value is not None:
            info[key] = value
    info["h"] = cfg.run["h"]
    info["t_end"] = cfg.run["t_end"]
    return info
