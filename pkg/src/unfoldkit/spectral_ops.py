"""Discretized partial DTFT on the out-of-band region and friends.

The continuous out-of-band region rho = (-w_s/2, -w_m) u (w_m, w_s/2) is
replaced by the bin set of a length-M DFT grid.  The adjoint carries the
matching Riemann weight 1/M, so the pair (partial_dtft, partial_dtft_adjoint)
is exactly adjoint on the discrete grid, and the highpass Gram operator is
the exact orthogonal projection of the length-M circular model (truncation
back to a shorter window makes it contractive and self-adjoint but only
approximately idempotent; pass M = len(seq) for the exact projection).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BandEmptyError, ConfigurationError, InsufficientBandwidthError
from .signal_core import SamplingGrid

DEFAULT_PAD_FACTOR = 4


@dataclass(frozen=True, eq=False)
class FrequencyBand:
    """Out-of-band bin set {k : w_m < |w_k| <= w_s/2} of a length-M DFT grid."""

    band_fraction: float  # b = w_m T_s / pi
    sample_interval: float
    transform_length: int
    bins: np.ndarray  # signed bin indices k

    @property
    def omegas(self) -> np.ndarray:
        """Bin frequencies in rad/s."""
        return 2.0 * np.pi * self.bins / (self.transform_length * self.sample_interval)

    @property
    def band_edge(self) -> float:
        return self.band_fraction * np.pi / self.sample_interval

    @property
    def sampling_rate(self) -> float:
        return 2.0 * np.pi / self.sample_interval

    def in_band_mask(self) -> np.ndarray:
        """Boolean mask over fft-ordered bins of the in-band complement."""
        mask = np.ones(self.transform_length, dtype=bool)
        mask[np.mod(self.bins, self.transform_length)] = False
        return mask


def out_of_band(grid: SamplingGrid, transform_length: int | None = None) -> FrequencyBand:
    """Build the discretized out-of-band region for a grid."""
    M = transform_length if transform_length is not None else DEFAULT_PAD_FACTOR * grid.length
    if M < grid.length:
        raise ConfigurationError("transform length must be >= window length")
    b = grid.band_fraction
    k = np.fft.fftfreq(M, d=1.0 / M).astype(int)  # signed bins, fft order
    sel = np.abs(k) > b * M / 2.0
    bins = np.sort(k[sel])
    if bins.size == 0:
        raise BandEmptyError(f"no out-of-band bins: band fraction b = {b:g} >= 1")
    return FrequencyBand(b, grid.sample_interval, M, bins)


@dataclass(frozen=True, eq=False)
class SpectrumSlice:
    """Partial DTFT values on a band's bin grid."""

    band: FrequencyBand
    values: np.ndarray  # complex, aligned with band.bins

    @property
    def omegas(self) -> np.ndarray:
        return self.band.omegas


@dataclass(frozen=True)
class SupportConstraint:
    """Time support {-N, ..., N}."""

    half_width: int

    def __post_init__(self):
        if self.half_width < 0:
            raise ConfigurationError("support half-width must be >= 0")


def partial_dtft(seq: np.ndarray, band: FrequencyBand, origin: int = 0) -> SpectrumSlice:
    """F(e^{j w_k T_s}) = sum_n seq[n] e^{-j w_k n T_s} on the band bins.

    seq occupies window indices origin .. origin + len(seq) - 1.
    """
    seq = np.asarray(seq, dtype=float)
    M = band.transform_length
    if len(seq) > M:
        raise ConfigurationError("sequence longer than transform length")
    buf = np.zeros(M)
    buf[: len(seq)] = seq
    spec = np.fft.fft(buf)
    k = band.bins
    values = spec[np.mod(k, M)] * np.exp(-2j * np.pi * k * origin / M)
    return SpectrumSlice(band, values)


def partial_dtft_adjoint(
    slc: SpectrumSlice, length: int, origin: int = 0
) -> np.ndarray:
    """Riemann-sum adjoint: (1/M) sum_{k in band} F_k e^{j w_k n T_s}.

    Exactly adjoint to partial_dtft under the 1/M-weighted inner product on
    spectrum slices.
    """
    band = slc.band
    M = band.transform_length
    spec = np.zeros(M, dtype=complex)
    spec[np.mod(band.bins, M)] = slc.values
    full = np.fft.ifft(spec)
    n = np.arange(origin, origin + length)
    return np.real(full[np.mod(n, M)])


def slice_inner(x: SpectrumSlice, y: SpectrumSlice) -> float:
    """Re <x, y> with the 1/M Riemann weight."""
    return float(np.real(np.vdot(y.values, x.values)) / x.band.transform_length)


def highpass_gram(
    seq: np.ndarray, band: FrequencyBand, transform_length: int | None = None
) -> np.ndarray:
    """F*_rho F_rho seq: zero in-band bins of the length-M DFT, truncate back.

    With transform_length equal to len(seq), this is the exact circulant
    orthogonal projection (idempotent to machine precision); with a longer
    transform, the input is zero-padded before filtering and the result
    truncated to the window.
    """
    seq = np.asarray(seq, dtype=float)
    M = transform_length if transform_length is not None else band.transform_length
    if M < len(seq):
        raise ConfigurationError("transform length must be >= sequence length")
    if M != band.transform_length:
        grid_like = SamplingGrid(band.sample_interval, band.band_edge, len(seq))
        band = out_of_band(grid_like, M)
    buf = np.zeros(M)
    buf[: len(seq)] = seq
    spec = np.fft.fft(buf)
    spec[band.in_band_mask()] = 0.0
    return np.real(np.fft.ifft(spec))[: len(seq)]


def lowpass_project(seq: np.ndarray, band: FrequencyBand) -> np.ndarray:
    """Complement projection: keep only in-band content (length-M circular)."""
    seq = np.asarray(seq, dtype=float)
    return seq - highpass_gram(seq, band, transform_length=len(seq))


def project_support(
    seq: np.ndarray, constraint: SupportConstraint, origin: int = 0
) -> np.ndarray:
    """Zero all entries with window index |n| > N."""
    n = np.arange(origin, origin + len(seq))
    out = np.asarray(seq, dtype=float).copy()
    out[np.abs(n) > constraint.half_width] = 0.0
    return out


def vandermonde_nodes(band: FrequencyBand, constraint: SupportConstraint) -> np.ndarray:
    """2N+1 frequencies spread over rho, split between the two half-bands.

    N+1 nodes sit at midpoints of equal subintervals of the positive
    half-band (w_m, w_s/2), N at mirrored midpoints of the negative one, so
    each node keeps half a subinterval away from the band edges.
    """
    N = constraint.half_width
    total = 2 * N + 1
    if total > band.bins.size:
        raise InsufficientBandwidthError(
            f"need {total} nodes but only {band.bins.size} out-of-band bins"
        )
    lo, hi = band.band_edge, band.sampling_rate / 2.0
    n_pos, n_neg = N + 1, N
    pos = lo + (np.arange(n_pos) + 0.5) * (hi - lo) / n_pos
    if n_neg:
        neg = -(lo + (np.arange(n_neg) + 0.5) * (hi - lo) / n_neg)
    else:
        neg = np.empty(0)
    return np.sort(np.concatenate([neg, pos]))


def build_vandermonde(
    band: FrequencyBand, constraint: SupportConstraint
) -> tuple[np.ndarray, np.ndarray]:
    """Matrix V[i, n+N] = e^{-j w_i n T_s}, n in {-N..N}, plus the node list."""
    nodes = vandermonde_nodes(band, constraint)
    N = constraint.half_width
    n = np.arange(-N, N + 1)
    V = np.exp(-1j * np.outer(nodes * band.sample_interval, n))
    return V, nodes


def dtft_at(
    seq: np.ndarray, omegas: np.ndarray, sample_interval: float, origin: int = 0
) -> np.ndarray:
    """Direct-summation DTFT at arbitrary frequencies (rad/s)."""
    seq = np.asarray(seq, dtype=float)
    n = np.arange(origin, origin + len(seq))
    return np.exp(-1j * np.outer(np.asarray(omegas) * sample_interval, n)) @ seq
