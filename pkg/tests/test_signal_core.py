import numpy as np
import pytest

from unfoldkit.errors import ConfigurationError, DegenerateInputError
from unfoldkit.signal_core import (SampledSignal, SamplingGrid, SynthesisConfig,
                                   compute_support_bound, normalize_peak,
                                   sinc_interpolate, synthesize_sum_of_sincs,
                                   validate_edge_decay)


def grid(of=6.0, length=1024):
    return SamplingGrid(1.0 / of, np.pi, length)


def test_grid_invariants():
    g = grid(of=6.0)
    assert g.oversampling_factor == pytest.approx(6.0)
    assert g.band_fraction == pytest.approx(1.0 / 6.0)
    assert g.origin_index == -512
    assert g.indices()[0] == -512 and g.indices()[-1] == 511


def test_grid_rejects_bad_params():
    with pytest.raises(ConfigurationError):
        SamplingGrid(0.0, np.pi, 16)
    with pytest.raises(ConfigurationError):
        SamplingGrid(0.5, -1.0, 16)
    with pytest.raises(ConfigurationError):
        SamplingGrid(0.5, np.pi, 0)


def test_single_sinc_at_nyquist_is_impulse():
    # at OF=1 the sinc lands on the integer lattice: delta at n=0
    g = SamplingGrid(1.0, np.pi, 64)
    cfg = SynthesisConfig(num_sincs=1, coefficient_seed=0, grid=g,
                          center_span=0.0, center_jitter=0.0, periodize=False)
    sig = synthesize_sum_of_sincs(cfg)
    expect = np.zeros(64)
    expect[64 // 2] = 1.0  # index 0 after peak normalization
    np.testing.assert_allclose(sig.values, expect, atol=1e-12)


def test_synthesis_deterministic():
    cfg = SynthesisConfig(num_sincs=3, coefficient_seed=7, grid=grid())
    a = synthesize_sum_of_sincs(cfg)
    b = synthesize_sum_of_sincs(cfg)
    assert np.array_equal(a.values, b.values)


def test_synthesis_peak_is_one():
    cfg = SynthesisConfig(num_sincs=4, coefficient_seed=3, grid=grid())
    sig = synthesize_sum_of_sincs(cfg)
    assert np.max(np.abs(sig.values)) == pytest.approx(1.0, abs=1e-12)


def test_synthesized_signal_is_bandlimited():
    """Out-of-band DFT energy below 1e-6 of the total."""
    cfg = SynthesisConfig(num_sincs=5, coefficient_seed=11, grid=grid())
    sig = synthesize_sum_of_sincs(cfg)
    spec = np.fft.fft(sig.values)
    theta = 2.0 * np.pi * np.fft.fftfreq(len(spec))
    out = np.abs(theta) > np.pi * sig.grid.band_fraction + 1e-12
    assert np.sum(np.abs(spec[out]) ** 2) < 1e-6 * np.sum(np.abs(spec) ** 2)


def test_normalize_peak_examples():
    g = SamplingGrid(1.0, np.pi, 3)
    out = normalize_peak(SampledSignal(g, np.array([0.0, 0.5, 0.0])))
    np.testing.assert_array_equal(out.values, [0.0, 1.0, 0.0])
    g2 = SamplingGrid(1.0, np.pi, 2)
    out2 = normalize_peak(SampledSignal(g2, np.array([-2.0, 1.0])))
    np.testing.assert_array_equal(out2.values, [-1.0, 0.5])
    # idempotent
    np.testing.assert_array_equal(normalize_peak(out2).values, out2.values)


def test_normalize_peak_zero_signal():
    g = SamplingGrid(1.0, np.pi, 4)
    with pytest.raises(DegenerateInputError):
        normalize_peak(SampledSignal(g, np.zeros(4)))


def sinc_signal(of=6.0, length=1024):
    g = grid(of, length)
    return normalize_peak(SampledSignal(g, np.sinc(g.times())))


def test_support_bound_sinc_of6():
    sig = sinc_signal()
    assert compute_support_bound(sig, 0.25) == 4
    assert compute_support_bound(sig, 0.20) == 9


def test_support_bound_trivial_and_monotone():
    sig = sinc_signal()
    assert compute_support_bound(sig, 1.5) == 0
    lams = [0.05, 0.1, 0.2, 0.25, 0.5, 0.9]
    bounds = [compute_support_bound(sig, lam) for lam in lams]
    assert bounds == sorted(bounds, reverse=True)


def test_sinc_interpolate():
    g = SamplingGrid(1.0, np.pi, 32)
    vals = np.zeros(32)
    vals[g.length // 2] = 1.0  # impulse at n=0
    sig = SampledSignal(g, vals)
    assert sinc_interpolate(sig, 0.0) == pytest.approx(1.0)
    assert sinc_interpolate(sig, 0.5) == pytest.approx(2.0 / np.pi)
    zero = SampledSignal(g, np.zeros(32))
    assert sinc_interpolate(zero, 0.37) == 0.0


def test_interpolation_property_on_grid_points():
    cfg = SynthesisConfig(num_sincs=3, coefficient_seed=5, grid=grid(length=256))
    sig = synthesize_sum_of_sincs(cfg)
    for n in (-10, 0, 17):
        t = n * sig.grid.sample_interval
        idx = n - sig.grid.origin_index
        assert sinc_interpolate(sig, t) == pytest.approx(sig.values[idx])


def test_edge_decay_validation():
    sig = sinc_signal()
    validate_edge_decay(sig, 0.2)  # decays fine
    g = SamplingGrid(1.0, np.pi, 64)
    flat = SampledSignal(g, np.ones(64))
    with pytest.raises(ConfigurationError):
        validate_edge_decay(flat, 0.2)
