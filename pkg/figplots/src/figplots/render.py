"""Figure rendering.  Style is frozen so regenerated images are diffable."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .spec import PlotSpec, SpecError
from .tables import (RECOVERY_COLUMNS, SWEEP_REQUIRED, Table, read_table,
                     require_columns)

# fixed per-algorithm conventions; anything unlisted cycles through FALLBACK
ALGO_STYLE = {
    "b2r2": dict(color="#1f77b4", marker="o"),
    "vandermonde": dict(color="#2ca02c", marker="s"),
    "hod": dict(color="#d62728", marker="^"),
    "cpf": dict(color="#7f7f7f", marker="*"),
}
FALLBACK = (dict(color="#9467bd", marker="v"), dict(color="#8c564b", marker="D"))

RC = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 120,
    "savefig.dpi": 120,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": "figplots",  # deterministic ids in vector output
}


def render(spec: PlotSpec) -> list:
    """Render one figure; returns the tables that were plotted.

    Validation happens before the output file is opened, so a schema or
    empty-grid error never leaves a partial image behind.
    """
    tables = [read_table(p) for p in spec.inputs]
    with plt.rc_context(RC):
        if spec.kind == "waveform_overlay":
            fig = _waveform_overlay(spec, tables)
        elif spec.kind == "mse_curve":
            fig = _mse_curve(spec, tables)
        else:
            fig = _mse_heatmap(spec, tables)
        try:
            fig.savefig(spec.out, metadata=_no_timestamp_metadata(spec.out))
        finally:
            plt.close(fig)
    return tables


def _no_timestamp_metadata(out: str):
    # SVG and PDF embed creation dates by default; strip them so the same
    # CSV always produces the same bytes
    if out.endswith(".svg"):
        return {"Date": None}
    if out.endswith(".pdf"):
        return {"CreationDate": None}
    return None


def _finish(ax, spec: PlotSpec):
    if spec.title:
        ax.set_title(spec.title)
    if spec.xlabel:
        ax.set_xlabel(spec.xlabel)
    if spec.ylabel:
        ax.set_ylabel(spec.ylabel)


def _waveform_overlay(spec: PlotSpec, tables) -> plt.Figure:
    if len(tables) != 1:
        raise SpecError("waveform_overlay takes exactly one recovery CSV")
    t = tables[0]
    require_columns(t, RECOVERY_COLUMNS)
    n = t.floats("n")
    fig, ax = plt.subplots()
    ax.plot(n, t.floats("true"), color="#1f77b4", lw=1.6, label="true")
    ax.plot(n, t.floats("folded"), color="#d62728", lw=1.0, label="folded")
    ax.plot(n, t.floats("recovered"), color="#2ca02c", lw=1.0, ls="--",
            label="recovered")
    ax.legend(loc="upper right")
    _finish(ax, spec)
    ax.set_xlabel(spec.xlabel or "sample index n")
    return fig


def _curve_groups(tables) -> dict:
    """(of, mse_db) points per algorithm, pooled over the input tables."""
    groups: dict = {}
    for t in tables:
        require_columns(t, SWEEP_REQUIRED)
        algos = t.column("algorithm")
        ofs = t.floats("of")
        mses = t.floats("mse_db")
        for a, of, mse in zip(algos, ofs, mses):
            groups.setdefault(a, []).append((of, mse))
    return groups


def _mse_curve(spec: PlotSpec, tables) -> plt.Figure:
    groups = _curve_groups(tables)
    fig, ax = plt.subplots()
    spare = list(FALLBACK)
    for algo in sorted(groups):
        pts = sorted(groups[algo])
        style = ALGO_STYLE.get(algo) or (spare.pop(0) if spare else {})
        single = len(pts) == 1
        ax.plot([p[0] for p in pts], [p[1] for p in pts],
                ls="none" if single else "-", label=algo, **style)
    ax.legend()
    _finish(ax, spec)
    ax.set_xlabel(spec.xlabel or "oversampling factor")
    ax.set_ylabel(spec.ylabel or "MSE (dB)")
    return fig


def _mse_heatmap(spec: PlotSpec, tables) -> plt.Figure:
    if len(tables) != 1:
        raise SpecError("mse_heatmap takes exactly one sweep CSV")
    t = tables[0]
    require_columns(t, SWEEP_REQUIRED)
    algos = sorted(set(t.column("algorithm")))
    algo = spec.algorithm or (algos[0] if len(algos) == 1 else None)
    if algo is None:
        raise SpecError(
            f"{t.path}: several algorithms {algos}; pick one with 'algorithm'")
    rows = [(float(of), float(snr), float(mse))
            for a, of, snr, mse in zip(t.column("algorithm"), t.column("of"),
                                       t.column("snr_db"), t.column("mse_db"))
            if a == algo]
    if not rows:
        raise SpecError(f"{t.path}: no rows for algorithm {algo!r}")
    ofs = sorted({r[0] for r in rows})
    snrs = sorted({r[1] for r in rows})
    grid = np.full((len(snrs), len(ofs)), np.nan)
    for of, snr, mse in rows:
        grid[snrs.index(snr), ofs.index(of)] = mse
    fig, ax = plt.subplots()
    im = ax.imshow(grid, origin="lower", aspect="auto", cmap="viridis")
    ax.set_xticks(range(len(ofs)), [f"{v:g}" for v in ofs])
    ax.set_yticks(range(len(snrs)), [f"{v:g}" for v in snrs])
    fig.colorbar(im, ax=ax, label="MSE (dB)")
    ax.grid(False)
    _finish(ax, spec)
    ax.set_xlabel(spec.xlabel or "oversampling factor")
    ax.set_ylabel(spec.ylabel or "SNR (dB)")
    if not spec.title:
        ax.set_title(algo)
    return fig
