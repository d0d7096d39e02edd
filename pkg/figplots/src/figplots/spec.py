"""Plot specifications loaded from JSON files."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

KINDS = ("waveform_overlay", "mse_heatmap", "mse_curve")


class SpecError(ValueError):
    """Malformed plot spec or CSV that does not match the expected schema."""


@dataclass(frozen=True)
class PlotSpec:
    """One figure: input CSV path(s), figure kind, labels, one output file."""

    kind: str
    inputs: tuple
    out: str
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""
    algorithm: str | None = None  # heatmap: which algorithm's cells to show

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown figure kind {self.kind!r}; expected one of {KINDS}")
        if not self.inputs:
            raise SpecError("spec needs at least one input CSV")
        if not self.out:
            raise SpecError("spec needs an output image path")


def load_spec(path) -> PlotSpec:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise SpecError(f"{path}: spec must be a JSON object")
    inputs = raw.get("inputs", raw.get("input"))
    if isinstance(inputs, str):
        inputs = [inputs]
    known = {"kind", "inputs", "input", "out", "title", "xlabel", "ylabel",
             "algorithm"}
    unknown = set(raw) - known
    if unknown:
        raise SpecError(f"{path}: unknown spec fields {sorted(unknown)}")
    return PlotSpec(
        kind=raw.get("kind", ""),
        inputs=tuple(inputs or ()),
        out=raw.get("out", ""),
        title=raw.get("title", ""),
        xlabel=raw.get("xlabel", ""),
        ylabel=raw.get("ylabel", ""),
        algorithm=raw.get("algorithm"),
    )
