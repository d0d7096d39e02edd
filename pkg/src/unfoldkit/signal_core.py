"""Bandlimited test signals on uniform sampling grids.

A signal here is a finite, usually centered window of uniform samples
together with its grid bookkeeping (sampling interval T_s, band edge w_m,
window length L, origin index).  Frequencies are kept in rad/s externally;
internally the dimensionless band fraction b = w_m * T_s / pi in (0, 1)
removes unit ambiguity (oversampling factor OF = 1/b).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigurationError, DegenerateInputError


@dataclass(frozen=True)
class SamplingGrid:
    """Uniform grid: indices run origin_index .. origin_index + length - 1."""

    sample_interval: float
    band_edge: float
    length: int
    origin_index: int | None = None

    def __post_init__(self):
        if self.sample_interval <= 0:
            raise ConfigurationError("sample_interval must be > 0")
        if self.band_edge <= 0:
            raise ConfigurationError("band_edge must be > 0")
        if self.length < 1:
            raise ConfigurationError("length must be >= 1")
        if self.origin_index is None:
            object.__setattr__(self, "origin_index", -(self.length // 2))

    @property
    def band_fraction(self) -> float:
        """b = w_m * T_s / pi; grid usable for recovery only when b < 1."""
        return self.band_edge * self.sample_interval / np.pi

    @property
    def oversampling_factor(self) -> float:
        return 1.0 / self.band_fraction

    @property
    def nyquist_interval(self) -> float:
        """T_nyq = pi / w_m, the Nyquist-rate sampling interval."""
        return np.pi / self.band_edge

    def indices(self) -> np.ndarray:
        return np.arange(self.origin_index, self.origin_index + self.length)

    def times(self) -> np.ndarray:
        return self.indices() * self.sample_interval


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """A finite window of real uniform samples on a SamplingGrid."""

    grid: SamplingGrid
    values: np.ndarray
    peak_normalized: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.length,):
            raise ConfigurationError(
                f"values shape {v.shape} does not match grid length {self.grid.length}"
            )
        if not np.all(np.isfinite(v)):
            raise ConfigurationError("values must be finite")
        object.__setattr__(self, "values", v)

    def with_values(self, values: np.ndarray, peak_normalized: bool = False) -> "SampledSignal":
        return SampledSignal(self.grid, np.asarray(values, dtype=float), peak_normalized)


@dataclass(frozen=True)
class SynthesisConfig:
    """Sum-of-sincs test signal: J sincs with random coefficients and centers.

    Centers sit on a coarse grid inside the middle `center_span` fraction of
    the window, jittered by `center_jitter` Nyquist intervals.  With
    `periodize=True` the sinc tails are wrapped circularly into the window,
    which makes the window exactly bandlimited under its own length-L DFT
    (no truncation leakage); the sample values differ from the plain
    sum-of-sincs formula by the wrapped tails, O(OF / (pi * L)).
    """

    num_sincs: int
    coefficient_seed: object
    grid: SamplingGrid
    coefficient_range: tuple[float, float] = (-1.0, 1.0)
    center_jitter: float = 0.25
    center_span: float = 0.6
    periodize: bool = True

    def __post_init__(self):
        if self.num_sincs < 1:
            raise ConfigurationError("num_sincs must be >= 1")
        if not 0.0 <= self.center_span < 1.0:
            raise ConfigurationError("center_span must be in [0, 1)")


def _sinc_centers(cfg: SynthesisConfig, rng: np.random.Generator) -> np.ndarray:
    """Center times tau_j (seconds) on a coarse jittered grid, window-centered."""
    grid = cfg.grid
    half = 0.5 * cfg.center_span * grid.length
    if cfg.num_sincs == 1:
        base = np.array([0.0])
    else:
        base = np.linspace(-half, half, cfg.num_sincs)
    jitter = cfg.center_jitter * grid.oversampling_factor * rng.uniform(
        -0.5, 0.5, cfg.num_sincs
    )
    centers = (base + jitter) * grid.sample_interval
    t = grid.times()
    lo, hi = t[0], t[-1]
    if np.any(centers < lo) or np.any(centers > hi):
        raise ConfigurationError("sinc centers fall outside the time window")
    return centers


def synthesize_sum_of_sincs(cfg: SynthesisConfig) -> SampledSignal:
    """Synthesize sum_j c_j * sinc((t - tau_j)/T_nyq) on cfg.grid, peak-normalized."""
    grid = cfg.grid
    rng = np.random.default_rng(cfg.coefficient_seed)
    lo, hi = cfg.coefficient_range
    if not hi > lo:
        raise ConfigurationError("coefficient_range must be a nonempty interval")
    coeffs = rng.uniform(lo, hi, cfg.num_sincs)
    while np.max(np.abs(coeffs)) < 1e-3:
        coeffs = rng.uniform(lo, hi, cfg.num_sincs)
    centers = _sinc_centers(cfg, rng)

    if cfg.periodize:
        # Build from the in-band DFT spectrum: the DTFT of sampled
        # sinc((t - tau)/T_nyq) is OF * exp(-j w tau) on |w| <= w_m, so
        # sampling it on the L-point bin grid yields the circular
        # periodization of the sum of sincs.
        L = grid.length
        k = np.fft.fftfreq(L, d=1.0 / L)  # signed bin indices
        theta = 2.0 * np.pi * k / L  # rad/sample
        in_band = np.abs(theta) <= np.pi * grid.band_fraction + 1e-12
        of = grid.oversampling_factor
        spec = np.zeros(L, dtype=complex)
        for c, tau in zip(coeffs, centers):
            spec += c * of * np.exp(-1j * theta * tau / grid.sample_interval)
        spec[~in_band] = 0.0
        circ = np.real(np.fft.ifft(spec))
        values = circ[np.mod(grid.indices(), L)]
    else:
        t = grid.times()
        values = np.zeros(grid.length)
        for c, tau in zip(coeffs, centers):
            values += c * np.sinc((t - tau) / grid.nyquist_interval)

    return normalize_peak(SampledSignal(grid, values))


def normalize_peak(signal: SampledSignal) -> SampledSignal:
    """Scale so max |values| = 1."""
    peak = np.max(np.abs(signal.values))
    if peak == 0.0:
        raise DegenerateInputError("cannot peak-normalize an all-zero signal")
    return signal.with_values(signal.values / peak, peak_normalized=True)


def compute_support_bound(signal: SampledSignal, lam: float) -> int:
    """Smallest N >= 0 with |values[n]| < lam for every window index |n| > N."""
    if lam <= 0:
        raise ConfigurationError("lambda must be > 0")
    idx = signal.grid.indices()
    exceed = np.abs(signal.values) >= lam
    if not np.any(exceed):
        return 0
    return int(np.max(np.abs(idx[exceed])))


def sinc_interpolate(signal: SampledSignal, t) -> np.ndarray | float:
    """Shannon reconstruction sum_n values[n] * sinc((t - n T_s)/T_s)."""
    ts = signal.grid.sample_interval
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    kernel = np.sinc((t_arr[:, None] - signal.grid.times()[None, :]) / ts)
    out = kernel @ signal.values
    return float(out[0]) if np.isscalar(t) else out


def validate_edge_decay(signal: SampledSignal, lam: float, edge_fraction: float = 0.1) -> None:
    """Require |values| < lam/2 on the outer `edge_fraction` of the window.

    Time-domain separation of the folding residual is only meaningful when
    the signal has decayed inside the window edges; configs violating this
    are rejected.
    """
    L = signal.grid.length
    m = max(1, int(round(edge_fraction * L / 2)))
    edge = np.concatenate([signal.values[:m], signal.values[-m:]])
    worst = np.max(np.abs(edge))
    if worst >= lam / 2:
        raise ConfigurationError(
            f"signal does not decay below lambda/2 = {lam / 2:g} on the outer "
            f"{edge_fraction:.0%} of the window (max edge amplitude {worst:g})"
        )


def replace_grid_length(grid: SamplingGrid, length: int) -> SamplingGrid:
    return replace(grid, length=length, origin_index=None)
