"""unfoldkit: recover bandlimited signals from amplitude-folded samples.

Simulates sampling through invertible-plus-folding nonlinearities (clipping,
modulo wrap, mu-law companded modulo) and recovers the true samples from the
out-of-band spectrum of the folding residual, with direct Vandermonde and
higher-order-difference baselines and a Monte-Carlo MSE benchmark harness.
"""
from .bench import (ExperimentConfig, MseReport, NoiseModel, add_noise,
                    compute_mse, compute_snr, read_sweep_csv, run_experiment,
                    sweep_to_csv)
from .errors import UnfoldKitError
from .nonlinear_ops import (OperatorSpec, apply_clip, apply_modulo,
                            apply_operator, clipping_operator,
                            construct_nyquist_counterexample, invert_in_range,
                            modulo_operator, mu_law_forward, mu_law_inverse,
                            mulaw_modulo_operator)
from .recovery import (HODConfig, PGDConfig, RecoveryResult, b2r2_recover,
                       brute_force_residual_oracle, hod_recover, pgd_residual,
                       round_residual, vandermonde_recover)
from .signal_core import (SampledSignal, SamplingGrid, SynthesisConfig,
                          compute_support_bound, normalize_peak,
                          sinc_interpolate, synthesize_sum_of_sincs)
from .spectral_ops import (FrequencyBand, SupportConstraint, build_vandermonde,
                           highpass_gram, lowpass_project, out_of_band,
                           partial_dtft, partial_dtft_adjoint, project_support,
                           vandermonde_nodes)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
