import numpy as np
import pytest

from unfoldkit.errors import (BandEmptyError, ConfigurationError,
                              InsufficientBandwidthError)
from unfoldkit.signal_core import SamplingGrid
from unfoldkit.spectral_ops import (SupportConstraint, build_vandermonde,
                                    dtft_at, highpass_gram, lowpass_project,
                                    out_of_band, partial_dtft,
                                    partial_dtft_adjoint, project_support,
                                    slice_inner, vandermonde_nodes)


def band_for(of=4.0, length=64, M=None):
    return out_of_band(SamplingGrid(1.0 / of, np.pi, length), M)


def test_out_of_band_bin_selection():
    band = band_for(of=4.0, length=8, M=8)
    # b = 1/4, M = 8: keep |k| > 1, i.e. k in {-4..-2, 2, 3}
    np.testing.assert_array_equal(band.bins, [-4, -3, -2, 2, 3])
    assert np.all(np.abs(band.omegas) > band.band_edge)


def test_out_of_band_empty_at_nyquist():
    with pytest.raises(BandEmptyError):
        band_for(of=1.0, length=8, M=8)


def test_partial_dtft_matches_direct_sum():
    rng = np.random.default_rng(0)
    seq = rng.standard_normal(40)
    band = band_for(of=4.0, length=40)
    origin = -20
    got = partial_dtft(seq, band, origin=origin).values
    want = dtft_at(seq, band.omegas, band.sample_interval, origin=origin)
    np.testing.assert_allclose(got, want, atol=1e-9)


def test_adjoint_identity():
    """<F x, y> with the 1/M weight equals <x, F* y> for random pairs."""
    rng = np.random.default_rng(1)
    band = band_for(of=3.0, length=50)
    origin = -25
    for _ in range(20):
        x = rng.standard_normal(50)
        y_vals = rng.standard_normal(band.bins.size) \
            + 1j * rng.standard_normal(band.bins.size)
        fx = partial_dtft(x, band, origin=origin)
        lhs = float(np.real(np.vdot(y_vals, fx.values)) / band.transform_length)
        fy = partial_dtft_adjoint(type(fx)(band, y_vals), 50, origin=origin)
        rhs = float(np.dot(x, fy))
        assert lhs == pytest.approx(rhs, abs=1e-8)


def test_gram_is_adjoint_composition():
    rng = np.random.default_rng(2)
    seq = rng.standard_normal(32)
    band = band_for(of=4.0, length=32)
    slc = partial_dtft(seq, band, origin=0)
    via_adjoint = partial_dtft_adjoint(slc, 32, origin=0)
    np.testing.assert_allclose(highpass_gram(seq, band), via_adjoint, atol=1e-10)


def test_gram_idempotent_and_contractive_at_window_length():
    rng = np.random.default_rng(3)
    band = band_for(of=4.0, length=64, M=64)
    for _ in range(10):
        x = rng.standard_normal(64)
        px = highpass_gram(x, band)
        np.testing.assert_allclose(highpass_gram(px, band), px, atol=1e-10)
        assert np.linalg.norm(px) <= np.linalg.norm(x) + 1e-10


def test_gram_annihilates_bandlimited_input():
    g = SamplingGrid(0.25, np.pi, 64)
    band = out_of_band(g, 64)
    spec = np.zeros(64, dtype=complex)
    spec[0], spec[1], spec[-1] = 2.0, 1.0 - 0.5j, 1.0 + 0.5j  # in-band only
    x = np.real(np.fft.ifft(spec))
    np.testing.assert_allclose(highpass_gram(x, band), 0.0, atol=1e-12)


def test_lowpass_plus_highpass_is_identity():
    rng = np.random.default_rng(4)
    x = rng.standard_normal(48)
    band = band_for(of=4.0, length=48, M=48)
    np.testing.assert_allclose(
        lowpass_project(x, band) + highpass_gram(x, band, 48), x, atol=1e-12)


def test_slice_inner_is_weighted_norm():
    band = band_for(of=4.0, length=16, M=16)
    vals = np.full(band.bins.size, 2.0 + 0j)
    slc = partial_dtft(np.zeros(16), band)
    slc = type(slc)(band, vals)
    assert slice_inner(slc, slc) == pytest.approx(4.0 * band.bins.size / 16)


def test_project_support():
    seq = np.arange(7, dtype=float)
    out = project_support(seq, SupportConstraint(1), origin=-3)
    np.testing.assert_array_equal(out, [0, 0, 2, 3, 4, 0, 0])
    with pytest.raises(ConfigurationError):
        SupportConstraint(-1)


def test_vandermonde_nodes_placement():
    band = band_for(of=4.0, length=64)
    nodes = vandermonde_nodes(band, SupportConstraint(2))
    assert nodes.size == 5
    lo, hi = band.band_edge, band.sampling_rate / 2
    assert np.sum(nodes > 0) == 3 and np.sum(nodes < 0) == 2
    assert np.all((np.abs(nodes) > lo) & (np.abs(nodes) < hi))
    # positive nodes: midpoints of 3 equal subintervals of (lo, hi)
    np.testing.assert_allclose(nodes[nodes > 0],
                               lo + (np.arange(3) + 0.5) * (hi - lo) / 3)


def test_vandermonde_nodes_insufficient_band():
    band = band_for(of=2.0, length=8, M=8)
    with pytest.raises(InsufficientBandwidthError):
        vandermonde_nodes(band, SupportConstraint(band.bins.size))


def test_build_vandermonde_solves_sparse_dtft():
    """V a reproduces the DTFT of a support-limited sequence at the nodes,
    so the least-squares solve recovers the sequence exactly."""
    band = band_for(of=6.0, length=128)
    N = 3
    rng = np.random.default_rng(5)
    a = rng.standard_normal(2 * N + 1)
    V, nodes = build_vandermonde(band, SupportConstraint(N))
    rhs = dtft_at(a, nodes, band.sample_interval, origin=-N)
    sol, *_ = np.linalg.lstsq(V, rhs, rcond=None)
    np.testing.assert_allclose(np.real(sol), a, atol=1e-9)
