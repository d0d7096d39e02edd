"""Frozen benchmark presets, keyed by figure number (3-12).

Figures 3-5 are noiseless waveform-recovery demos; figures 6-12 are
Monte-Carlo MSE sweeps.  Parameters here were tuned once at desk scale
(trial counts far below a production run) and are deliberately frozen so
regenerated data files are byte-identical and auditable.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .bench import ExperimentConfig
from .errors import ConfigurationError
from .nonlinear_ops import (OperatorSpec, clipping_operator, modulo_operator,
                            mulaw_modulo_operator)
from .recovery import PGDConfig
from .signal_core import (SampledSignal, SamplingGrid, SynthesisConfig,
                          normalize_peak, synthesize_sum_of_sincs)

WAVEFORM_FIGURES = (3, 4, 5)
SWEEP_FIGURES = (6, 7, 8, 9, 10, 11, 12)


@dataclass(frozen=True)
class WaveformCase:
    """One noiseless fold-and-recover demo."""

    name: str
    signal: SampledSignal
    op: OperatorSpec
    algorithm: str  # "b2r2" or "vandermonde"
    pgd: PGDConfig | None = None


def _sinc_signal(of: float, length: int) -> SampledSignal:
    """Plain truncated sinc(t): the classic demo input.

    Truncation leakage is the point here: it is what breaks the large
    Vandermonde solve while leaving the lattice-rounded recovery exact.
    """
    grid = SamplingGrid(1.0 / of, np.pi, length)
    return normalize_peak(SampledSignal(grid, np.sinc(grid.times())))


def _compact_synth(of: float, lam_unused, num_sincs, span, seed,
                   length=1024) -> SampledSignal:
    grid = SamplingGrid(1.0 / of, np.pi, length)
    cfg = SynthesisConfig(num_sincs=num_sincs, coefficient_seed=seed,
                          grid=grid, center_span=span)
    return synthesize_sum_of_sincs(cfg)


def waveform_cases(figure: int) -> tuple:
    """The demo cases behind a waveform figure preset."""
    if figure in (3, 4):
        algo = "vandermonde" if figure == 3 else "b2r2"
        sig = _sinc_signal(6.0, 128)
        return (
            WaveformCase("sinc_of6_lam025", sig, modulo_operator(0.25), algo),
            WaveformCase("sinc_of6_lam020", sig, modulo_operator(0.20), algo),
        )
    if figure == 5:
        tight = PGDConfig(max_iters=4000, step_rule="fixed", gamma=1.0,
                          stop_tol=1e-12)
        slow = PGDConfig(max_iters=20000, step_rule="fixed", gamma=1.0,
                         stop_tol=1e-12)
        clip_sig = _compact_synth(10.0, None, 4, 0.01, 1)
        narrow = _compact_synth(2.0, None, 3, 0.002, 2)
        return (
            WaveformCase("clip_of10_lam025", clip_sig,
                         clipping_operator(0.25), "b2r2", tight),
            WaveformCase("modulo_of2_lam025", narrow,
                         modulo_operator(0.25), "b2r2", tight),
            WaveformCase("mulaw_of2_lam025", narrow,
                         mulaw_modulo_operator(0.25, 255.0), "b2r2", slow),
        )
    raise ConfigurationError(f"figure {figure} has no waveform preset")


def sweep_config(figure: int) -> ExperimentConfig:
    """The frozen ExperimentConfig behind an MSE-sweep figure preset."""
    common = dict(trials=20, algorithms=("b2r2", "hod"), hod_order=1)
    if figure == 7:
        return ExperimentConfig(
            lambdas=(0.1,), oversampling_factors=(4, 6, 8, 10, 15, 20, 25, 30),
            snrs_db=(20.0,), trials=50, algorithms=("b2r2", "hod"),
            lambda_over_sigma=10.0, seed=42, num_sincs=8, center_span=0.05,
            hod_order=1)
    bounded = figure in (6, 8, 9)
    kind = "bounded_uniform" if bounded else "gaussian_snr"
    if figure in (6, 10):
        return ExperimentConfig(
            lambdas=(0.2,), oversampling_factors=(2, 4, 6, 8, 10),
            snrs_db=(10.0, 20.0, 30.0, 40.0, 50.0), seed=11,
            num_sincs=3, span_seconds=2.5, noise_kind=kind, **common)
    if figure in (8, 11):
        return ExperimentConfig(
            lambdas=(0.1,), oversampling_factors=(4, 6, 8, 10),
            snrs_db=(10.0, 20.0, 30.0, 40.0, 50.0), seed=13,
            num_sincs=3, span_seconds=2.5, noise_kind=kind, **common)
    if figure in (9, 12):
        return ExperimentConfig(
            lambdas=(0.05,), oversampling_factors=(6, 8, 10),
            snrs_db=(20.0, 30.0, 40.0, 50.0, 60.0), seed=43,
            num_sincs=1, span_seconds=0.8, noise_kind=kind, **common)
    raise ConfigurationError(f"figure {figure} has no sweep preset")


def cpf_literature_rows() -> tuple:
    """Literature-quoted CPF comparison numbers (never computed here).

    Each row is a dict with the sweep CSV columns plus a `source` field;
    only values explicitly quoted by the source are included.
    """
    ref = resources.files("unfoldkit.data").joinpath("cpf_literature.csv")
    with ref.open(encoding="utf-8", newline="") as fh:
        return tuple(csv.DictReader(fh))
