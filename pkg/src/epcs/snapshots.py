"""EPCS binary snapshot format, version 1.

This file layout is the contract between the solver and any external
reader (the plotting tool in particular). All integers and floats are
little-endian; complex values are interleaved (re, im) float64 pairs,
row-major with x fastest.

    magic      4 bytes  b"EPCS"
    version    u32      1
    ndim       u32      1 or 2
    nx         u32
    ny         u32      1 when ndim = 1
    dx         f64      um
    dy         f64      0.0 when ndim = 1
    tag        u8 length + UTF-8 bytes (model tag)
    nfields    u32
    t          f64      ps
    per field:
      kind     u8       0 = complex, 1 = real
      name     u8 length + UTF-8 bytes
      data     nx*ny float64 pairs (complex) or singles (real)
"""

from __future__ import annotations

import io
import struct
from pathlib import Path

import numpy as np

from .engine import SnapshotSeries
from .grid import Grid
from .models import SimState

MAGIC = b"EPCS"
VERSION = 1
KIND_COMPLEX = 0
KIND_REAL = 1

_HEAD = struct.Struct("<4sIIII dd")


class EpcsError(ValueError):
    """Malformed or unsupported EPCS data."""


def _pack_name(name: str) -> bytes:
    raw = name.encode("utf-8")
    if len(raw) > 255:
        raise EpcsError(f"name too long: {name!r}")
    return bytes([len(raw)]) + raw


def write_snapshot(state: SimState, sink) -> int:
    """Serialize a state; returns the number of bytes written."""
    grid = state.grid
    parts = [
        _HEAD.pack(MAGIC, VERSION, grid.ndim, grid.nx, grid.ny, grid.dx, grid.dy),
        _pack_name(state.tag),
        struct.pack("<I", len(state.fields)),
        struct.pack("<d", state.t),
    ]
    for name, values in state.fields.items():
        if values.shape != grid.shape:
            raise EpcsError(f"field {name!r} shape {values.shape} does not match grid")
        if np.iscomplexobj(values):
            parts.append(bytes([KIND_COMPLEX]))
            parts.append(_pack_name(name))
            parts.append(np.ascontiguousarray(values, dtype="<c16").tobytes())
        else:
            parts.append(bytes([KIND_REAL]))
            parts.append(_pack_name(name))
            parts.append(np.ascontiguousarray(values, dtype="<f8").tobytes())
    blob = b"".join(parts)
    if hasattr(sink, "write"):
        sink.write(blob)
    else:
        Path(sink).write_bytes(blob)
    return len(blob)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise EpcsError(
                f"truncated payload: wanted {n} bytes at offset {self.pos}, "
                f"file has {len(self.data)}"
            )
        out = self.data[self.pos:self.pos + n]
        self.pos += n
        return out

    def name(self) -> str:
        n = self.take(1)[0]
        return self.take(n).decode("utf-8")


def read_snapshot(source) -> SimState:
    """Parse EPCS bytes back into a state; inverse of write_snapshot."""
    if hasattr(source, "read"):
        data = source.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = Path(source).read_bytes()
    r = _Reader(data)
    magic, version, ndim, nx, ny, dx, dy = _HEAD.unpack(r.take(_HEAD.size))
    if magic != MAGIC:
        raise EpcsError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise EpcsError(f"unsupported format version {version}, expected {VERSION}")
    if ndim not in (1, 2):
        raise EpcsError(f"bad ndim {ndim}")
    tag = r.name()
    (nfields,) = struct.unpack("<I", r.take(4))
    (t,) = struct.unpack("<d", r.take(8))
    if ndim == 1:
        grid = Grid(1, nx, 1, dx * (nx - 1), 0.0, dx, 0.0)
    else:
        grid = Grid(2, nx, ny, dx * (nx - 1), dy * (ny - 1), dx, dy)
    npts = nx * ny
    fields: dict[str, np.ndarray] = {}
    for _ in range(nfields):
        kind = r.take(1)[0]
        name = r.name()
        if kind == KIND_COMPLEX:
            raw = r.take(16 * npts)
            values = np.frombuffer(raw, dtype="<c16").astype(np.complex128)
        elif kind == KIND_REAL:
            raw = r.take(8 * npts)
            values = np.frombuffer(raw, dtype="<f8").astype(np.float64)
        else:
            raise EpcsError(f"unknown field kind {kind}")
        fields[name] = values.reshape(grid.shape)
    if r.pos != len(data):
        raise EpcsError(f"{len(data) - r.pos} trailing bytes after payload")
    return SimState(tag, grid, fields, t)


def snapshot_filename(step: int) -> str:
    return f"snap_{step:08d}.epcs"


def directory_writer(out_dir):
    """Snapshot sink writing snap_<step>.epcs files into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def write(step: int, state: SimState) -> None:
        write_snapshot(state, out / snapshot_filename(step))

    return write


def read_series(in_dir) -> SnapshotSeries:
    """Load every *.epcs file in a directory, ordered by filename."""
    paths = sorted(Path(in_dir).glob("*.epcs"))
    if not paths:
        raise EpcsError(f"no .epcs snapshots in {in_dir}")
    first = read_snapshot(paths[0])
    series = SnapshotSeries(first.tag, first.grid)
    for path in paths:
        state = read_snapshot(path)
        if state.tag != first.tag or state.grid.shape != first.grid.shape:
            raise EpcsError(f"inconsistent snapshot {path.name}")
        series.times.append(state.t)
        series.states.append(state.fields)
    return series
