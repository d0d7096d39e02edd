import numpy as np
import pytest

from unfoldkit.bench import (MSE_FLOOR_DB, ExperimentConfig, NoiseModel,
                             add_noise, bounded_sigma_for_snr, compute_mse,
                             compute_snr, read_sweep_csv, run_experiment,
                             sweep_to_csv)
from unfoldkit.errors import ConfigurationError, DegenerateInputError
from unfoldkit.signal_core import SampledSignal, SamplingGrid


def sig(values, of=4.0):
    n = len(values)
    return SampledSignal(SamplingGrid(1.0 / of, np.pi, n),
                         np.asarray(values, float))


def test_compute_mse_known_values():
    t = sig([1.0, 0.0, 0.0, 0.0])
    assert compute_mse(t, t) == MSE_FLOOR_DB
    r = sig([0.9, 0.0, 0.0, 0.0])
    assert compute_mse(t, r) == pytest.approx(10 * np.log10(0.01))
    with pytest.raises(DegenerateInputError):
        compute_mse(sig([0.0, 0.0]), sig([1.0, 0.0]))


def test_compute_snr_known_values():
    f = sig([3.0, 4.0])  # norm 5
    assert compute_snr(f, np.array([0.5, 0.0])) == pytest.approx(20.0)
    assert compute_snr(f, np.zeros(2)) == np.inf


def test_noise_model_validation():
    with pytest.raises(ConfigurationError):
        NoiseModel(kind="pink")
    with pytest.raises(ConfigurationError):
        NoiseModel(kind="bounded_uniform", sigma=-1.0)
    with pytest.raises(ConfigurationError):
        NoiseModel(kind="gaussian_snr")


def test_add_noise_bounded_respects_sigma():
    f = sig(np.ones(2000))
    out = add_noise(f, NoiseModel("bounded_uniform", sigma=0.1, seed=0))
    v = out.values - f.values
    assert np.max(np.abs(v)) <= 0.1
    assert np.max(np.abs(v)) > 0.09  # actually fills the interval


def test_add_noise_gaussian_hits_target_snr():
    f = sig(np.ones(5000))
    out = add_noise(f, NoiseModel("gaussian_snr", target_snr_db=20.0, seed=1))
    snr = compute_snr(f, out.values - f.values)
    assert snr == pytest.approx(20.0, abs=0.5)


def test_bounded_sigma_for_snr_expected_energy():
    f = sig(np.ones(3000))
    sigma = bounded_sigma_for_snr(f, 30.0)
    rng = np.random.default_rng(2)
    v = rng.uniform(-sigma, sigma, 3000)
    assert compute_snr(f, v) == pytest.approx(30.0, abs=0.5)


def test_experiment_config_validation():
    with pytest.raises(ConfigurationError):
        ExperimentConfig(lambdas=())
    with pytest.raises(ConfigurationError):
        ExperimentConfig(trials=0)
    with pytest.raises(ConfigurationError):
        ExperimentConfig(algorithms=("b2r2", "magic"))
    assert ExperimentConfig(operator_kind="clip").operator(0.3).kind == "clip"


SMALL = ExperimentConfig(
    lambdas=(0.25,), oversampling_factors=(6.0,), snrs_db=(40.0,),
    trials=3, algorithms=("b2r2", "hod"), length=256, seed=9,
    num_sincs=3, center_span=0.02, hod_order=2,
)


def test_run_experiment_shape_and_lookup():
    report = run_experiment(SMALL)
    assert len(report.cells) == 2  # one per algorithm x 1x1x1 grid
    cell = report.cell("b2r2", 0.25, 6.0, 40.0)
    assert cell.trials == 3
    assert cell.mse_db < -30.0  # mild noise, easy instance
    with pytest.raises(KeyError):
        report.cell("b2r2", 0.25, 6.0, 99.0)


def test_run_experiment_deterministic_and_parallel_identical():
    a = run_experiment(SMALL)
    b = run_experiment(SMALL)
    c = run_experiment(SMALL, jobs=2)
    assert a.cells == b.cells == c.cells


def test_sweep_csv_roundtrip(tmp_path):
    report = run_experiment(SMALL)
    p = tmp_path / "sweep.csv"
    sweep_to_csv(report, p)
    text = p.read_text()
    assert text.splitlines()[0] == \
        "algorithm,lambda,of,snr_db,mse_db,mse_std_db,trials,fail_rate"
    assert "np.float64" not in text
    cells = read_sweep_csv(p)
    assert cells == report.cells  # repr round-trips floats exactly


def test_snr_improves_mse():
    cfg = ExperimentConfig(
        lambdas=(0.25,), oversampling_factors=(6.0,), snrs_db=(10.0, 40.0),
        trials=3, algorithms=("b2r2",), length=256, seed=9,
        num_sincs=3, center_span=0.02,
    )
    report = run_experiment(cfg)
    lo = report.cell("b2r2", 0.25, 6.0, 10.0).mse_db
    hi = report.cell("b2r2", 0.25, 6.0, 40.0).mse_db
    assert hi < lo
