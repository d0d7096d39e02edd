"""Reading and writing sampled signals.

Two on-disk formats:

* text: CSV with a single header line ``# ts=<float>, wm=<float>,
  origin=<int>`` followed by one sample value per line;
* binary: 32-byte header (magic ``UFK1``, T_s and w_m as float64,
  origin and length as int32, 4 pad bytes) followed by the samples as
  little-endian float64.
"""
from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import ConfigurationError
from .signal_core import SampledSignal, SamplingGrid

_MAGIC = b"UFK1"
_HEADER = struct.Struct("<4sddii4x")


def write_signal_csv(signal: SampledSignal, path) -> None:
    grid = signal.grid
    lines = [f"# ts={grid.sample_interval!r}, wm={grid.band_edge!r}, origin={grid.origin_index}"]
    lines.extend(repr(float(v)) for v in signal.values)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_signal_csv(path) -> SampledSignal:
    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ConfigurationError(f"{path}: missing signal header line")
    fields = {}
    for part in lines[0].lstrip("#").split(","):
        key, _, val = part.partition("=")
        fields[key.strip()] = val.strip()
    try:
        grid = SamplingGrid(
            sample_interval=float(fields["ts"]),
            band_edge=float(fields["wm"]),
            length=len(lines) - 1,
            origin_index=int(fields["origin"]),
        )
    except KeyError as exc:
        raise ConfigurationError(f"{path}: header missing field {exc}") from exc
    values = np.array([float(ln) for ln in lines[1:]])
    return SampledSignal(grid, values)


def write_signal_binary(signal: SampledSignal, path) -> None:
    grid = signal.grid
    header = _HEADER.pack(_MAGIC, grid.sample_interval, grid.band_edge,
                          grid.origin_index, grid.length)
    data = np.asarray(signal.values, dtype="<f8").tobytes()
    Path(path).write_bytes(header + data)


def read_signal_binary(path) -> SampledSignal:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ConfigurationError(f"{path}: truncated header")
    magic, ts, wm, origin, length = _HEADER.unpack_from(raw)
    if magic != _MAGIC:
        raise ConfigurationError(f"{path}: bad magic {magic!r}")
    values = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size)
    if len(values) != length:
        raise ConfigurationError(
            f"{path}: header says {length} samples, file has {len(values)}")
    grid = SamplingGrid(ts, wm, length, origin)
    return SampledSignal(grid, values.astype(float))


def write_recovery_csv(true_sig: SampledSignal, folded: SampledSignal,
                       recovered: SampledSignal, path) -> None:
    """Per-sample dump (n, true, folded, recovered, residual) for plotting."""
    idx = true_sig.grid.indices()
    residual = recovered.values - true_sig.values
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n,true,folded,recovered,residual\n")
        for n, t, f, r, e in zip(idx, true_sig.values, folded.values,
                                 recovered.values, residual):
            fh.write(f"{n},{float(t)!r},{float(f)!r},{float(r)!r},{float(e)!r}\n")
