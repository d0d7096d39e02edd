"""Recovery of true samples from folded ones.

The main routine alternates projected gradient descent on the out-of-band
fit with structure rounding and support peeling: the residual estimate is
most reliable at the edges of its support, so the support half-width is
decremented once per outer pass until the whole residual is accounted for.
A direct Vandermonde solve and the higher-order-differences unwrapping
method are provided as baselines, plus a brute-force lattice oracle for
certifying small instances.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AnchoringError,
    ConditioningError,
    ConfigurationError,
    InsufficientBandwidthError,
    OracleTooLargeError,
)
from .nonlinear_ops import (
    LATTICE_2LAMBDA,
    NO_STRUCTURE,
    SIGN_FROM_SATURATION,
    OperatorSpec,
    apply_modulo,
)
from .signal_core import SampledSignal
from .spectral_ops import (
    FrequencyBand,
    SupportConstraint,
    build_vandermonde,
    dtft_at,
    highpass_gram,
    lowpass_project,
    out_of_band,
    project_support,
)


@dataclass(frozen=True, eq=False)
class ResidualEstimate:
    """A support-limited residual sequence plus its structure tag."""

    values: np.ndarray  # full window length; zero outside the support
    structure: str
    half_width: int
    converged: bool = True
    costs: tuple = ()


@dataclass(frozen=True)
class PGDConfig:
    """Inner-loop settings for the projected gradient descent."""

    max_iters: int = 500
    step_rule: str = "backtracking"  # or "fixed"
    gamma: float = 1.0
    bt_gamma0: float = 2.0
    bt_shrink: float = 0.5
    bt_c: float = 1e-4
    stop_tol: float | None = None  # sup-norm change; None -> lambda/100 at call

    def __post_init__(self):
        if self.max_iters < 1 or self.gamma <= 0:
            raise ConfigurationError("max_iters >= 1 and gamma > 0 required")
        if self.step_rule not in ("fixed", "backtracking"):
            raise ConfigurationError(f"unknown step rule {self.step_rule!r}")
        if self.stop_tol is not None and self.stop_tol <= 0:
            raise ConfigurationError("stop_tol must be positive")


@dataclass(frozen=True)
class HODConfig:
    """Higher-order-differences unwrapping settings."""

    order: int = 1
    anchor_policy: str = "left_tail"

    def __post_init__(self):
        if self.order < 1:
            raise ConfigurationError("difference order must be >= 1")


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    signal: SampledSignal
    warning: bool = False
    traces: tuple = ()  # one cost tuple per outer pass


def _band_cost(diff: np.ndarray, band: FrequencyBand, M: int) -> float:
    """(1/2M) * sum over out-of-band bins of |DFT(diff)|^2."""
    buf = np.zeros(M)
    buf[: len(diff)] = diff
    spec = np.fft.fft(buf)
    spec[band.in_band_mask()] = 0.0
    return float(np.sum(np.abs(spec) ** 2) / (2.0 * M))


def pgd_residual(
    f_hat: np.ndarray,
    band: FrequencyBand,
    constraint: SupportConstraint,
    cfg: PGDConfig | None = None,
    origin: int = 0,
    z0: np.ndarray | None = None,
    structure: str = NO_STRUCTURE,
) -> ResidualEstimate:
    """Minimize C(z) = 1/2 ||F_rho f_hat - F_rho z||^2 over z in S_N.

    Gradient steps use the highpass Gram operator; iterates are projected
    onto the support after each step.  Default initial point is the
    projected highpass filtering of f_hat itself.
    """
    if cfg is None:
        cfg = PGDConfig()
    f_hat = np.asarray(f_hat, dtype=float)
    M = band.transform_length
    gram = lambda x: highpass_gram(x, band)
    h = gram(f_hat)
    if z0 is None:
        z = project_support(h, constraint, origin)
    else:
        z = project_support(np.asarray(z0, dtype=float), constraint, origin)
    stop_tol = cfg.stop_tol if cfg.stop_tol is not None else 1e-8

    cost = _band_cost(z - f_hat, band, M)
    costs = [cost]
    converged = False
    for _ in range(cfg.max_iters):
        grad = project_support(gram(z) - h, constraint, origin)
        gnorm2 = float(np.dot(grad, grad))
        if gnorm2 == 0.0:
            converged = True
            break
        if cfg.step_rule == "fixed":
            gamma = cfg.gamma
            z_new = z - gamma * grad
            cost_new = _band_cost(z_new - f_hat, band, M)
        else:
            gamma = cfg.bt_gamma0
            while True:
                z_new = z - gamma * grad
                cost_new = _band_cost(z_new - f_hat, band, M)
                if cost_new <= cost - cfg.bt_c * gamma * gnorm2 or gamma < 1e-12:
                    break
                gamma *= cfg.bt_shrink
        change = float(np.max(np.abs(z_new - z)))
        z = z_new
        cost = cost_new
        costs.append(cost)
        if change < stop_tol:
            converged = True
            break
    return ResidualEstimate(z, structure, constraint.half_width, converged, tuple(costs))


def round_residual(
    est: ResidualEstimate, op: OperatorSpec, folded: SampledSignal | np.ndarray
) -> ResidualEstimate:
    """Impose the operator's residual structure on an estimate.

    Lattice: snap to the nearest multiple of 2*lambda (ties toward zero).
    Saturation signs: residual <= 0 where the folded sample saturates high,
    >= 0 where it saturates low, 0 strictly inside the range.
    """
    folded_values = folded.values if isinstance(folded, SampledSignal) else np.asarray(folded)
    z = est.values
    if est.structure == LATTICE_2LAMBDA:
        q = z / (2.0 * op.lam)
        k = np.sign(q) * np.ceil(np.abs(q) - 0.5)
        out = 2.0 * op.lam * k
    elif est.structure == SIGN_FROM_SATURATION:
        out = np.zeros_like(z)
        hi = folded_values >= op.lam
        lo = folded_values <= -op.lam
        out[hi] = np.minimum(0.0, z[hi])
        out[lo] = np.maximum(0.0, z[lo])
    else:
        out = z.copy()
    return ResidualEstimate(out, est.structure, est.half_width, est.converged, est.costs)


def _inverted_input(folded: SampledSignal, op: OperatorSpec) -> np.ndarray:
    """g^{-1} of the folded samples, clamping noise excursions to the range."""
    clamped = np.clip(folded.values, -op.lam, op.lam)
    return np.asarray(op.g_inverse(clamped), dtype=float)


def _check_identifiable(band: FrequencyBand, n_lambda: int) -> None:
    if 2 * n_lambda + 1 > band.bins.size:
        raise InsufficientBandwidthError(
            f"support width {2 * n_lambda + 1} exceeds the {band.bins.size} "
            "out-of-band bins; oversampling is insufficient"
        )


def b2r2_recover(
    folded: SampledSignal,
    op: OperatorSpec,
    n_lambda: int,
    cfg: PGDConfig | None = None,
    denoise: bool = False,
) -> RecoveryResult:
    """Beyond-bandwidth residual reconstruction with sequential peeling.

    Starts from g^{-1} of the folded samples; each outer pass solves the
    out-of-band fit restricted to the current support, imposes the residual
    structure, subtracts the estimate, and shrinks the support by one.  With
    denoise=True the output is finally projected onto the in-band subspace.
    """
    if folded.grid.oversampling_factor <= 1.0:
        raise ConfigurationError("recovery requires oversampling (OF > 1)")
    if n_lambda < 0:
        raise ConfigurationError("N_lambda must be >= 0")
    grid = folded.grid
    band = out_of_band(grid, transform_length=grid.length)
    _check_identifiable(band, n_lambda)
    if cfg is None:
        cfg = PGDConfig()
    if cfg.stop_tol is None:
        cfg = PGDConfig(
            cfg.max_iters, cfg.step_rule, cfg.gamma, cfg.bt_gamma0,
            cfg.bt_shrink, cfg.bt_c, op.lam / 100.0,
        )
    origin = grid.origin_index
    f_hat = _inverted_input(folded, op)
    warning = False
    traces = []
    z_warm = None
    for N in range(n_lambda, 0, -1):
        constraint = SupportConstraint(N)
        est = pgd_residual(
            f_hat, band, constraint, cfg, origin, z0=z_warm,
            structure=op.residual_structure,
        )
        warning = warning or not est.converged
        traces.append(est.costs)
        est = round_residual(est, op, folded)
        f_hat = f_hat - est.values
        z_warm = project_support(est.values, SupportConstraint(N - 1), origin)
    if denoise:
        f_hat = lowpass_project(f_hat, band)
    return RecoveryResult(folded.with_values(f_hat), warning, tuple(traces))


def vandermonde_recover(
    folded: SampledSignal,
    op: OperatorSpec,
    n_lambda: int,
    cond_limit: float = 1e12,
    denoise: bool = False,
) -> RecoveryResult:
    """Solve the (2N+1) x (2N+1) out-of-band Vandermonde system directly."""
    grid = folded.grid
    band = out_of_band(grid, transform_length=grid.length)
    _check_identifiable(band, n_lambda)
    u = _inverted_input(folded, op)
    if n_lambda == 0:
        out = lowpass_project(u, band) if denoise else u
        return RecoveryResult(folded.with_values(out))
    constraint = SupportConstraint(n_lambda)
    V, nodes = build_vandermonde(band, constraint)
    cond = np.linalg.cond(V)
    if cond > cond_limit:
        raise ConditioningError(f"Vandermonde condition number {cond:.3g} too large")
    rhs = dtft_at(u, nodes, grid.sample_interval, grid.origin_index)
    coeffs = np.real(np.linalg.solve(V, rhs))
    z = np.zeros(grid.length)
    idx = grid.indices()
    mask = np.abs(idx) <= n_lambda
    z[mask] = coeffs[idx[mask] + n_lambda]
    est = round_residual(
        ResidualEstimate(z, op.residual_structure, n_lambda), op, folded
    )
    out = u - est.values
    if denoise:
        out = lowpass_project(out, band)
    return RecoveryResult(folded.with_values(out))


def hod_recover(
    folded: SampledSignal,
    lam: float,
    cfg: HODConfig | None = None,
    denoise: bool = False,
) -> RecoveryResult:
    """Unfold via modulo of N-th order differences plus N-fold summation.

    Correct whenever the N-th differences of the true samples stay inside
    (-lam, lam); integration constants come from the first samples of the
    window, which are assumed unfolded (the signal must have decayed below
    lam there).
    """
    if cfg is None:
        cfg = HODConfig()
    N = cfg.order
    v = folded.values
    if len(v) <= N:
        raise AnchoringError(f"window of {len(v)} samples cannot anchor order {N}")
    cur = apply_modulo(np.diff(v, N), lam)
    for k in range(N - 1, -1, -1):
        anchor = float(np.diff(v[: k + 1], k)[0]) if k else float(v[0])
        cur = np.concatenate(([anchor], anchor + np.cumsum(cur)))
    if denoise:
        band = out_of_band(folded.grid, transform_length=folded.grid.length)
        cur = lowpass_project(cur, band)
    return RecoveryResult(folded.with_values(cur))


def brute_force_residual_oracle(
    folded: SampledSignal,
    op: OperatorSpec,
    n_lambda: int,
    max_folds: int,
    budget: int = 10_000_000,
) -> ResidualEstimate:
    """Exhaustive lattice search minimizing the out-of-band fit.

    Enumerates every residual supported on {-N..N} with entries in
    2*lam*{-K..K} and returns the minimizer of ||F_rho(g^{-1} folded - z)||^2.
    Independent of the PGD path; used to certify small instances.
    """
    K = max_folds
    width = 2 * n_lambda + 1
    n_candidates = (2 * K + 1) ** width
    if n_candidates > budget:
        raise OracleTooLargeError(
            f"{n_candidates} candidates exceed the {budget} budget"
        )
    grid = folded.grid
    band = out_of_band(grid, transform_length=grid.length)
    u = _inverted_input(folded, op)
    target = dtft_at(u, band.omegas, grid.sample_interval, grid.origin_index)
    support = np.arange(-n_lambda, n_lambda + 1)
    A = np.exp(-1j * np.outer(band.omegas * grid.sample_interval, support))
    steps = 2.0 * op.lam * np.arange(-K, K + 1)
    best_obj, best = np.inf, None
    chunk, combos = 4096, []

    def flush(combos, best_obj, best):
        if not combos:
            return best_obj, best
        C = np.array(combos)  # (m, width) lattice values
        resid = target[:, None] - A @ C.T
        objs = np.sum(np.abs(resid) ** 2, axis=0)
        i = int(np.argmin(objs))
        if objs[i] < best_obj:
            return float(objs[i]), C[i]
        return best_obj, best

    for combo in itertools.product(steps, repeat=width):
        combos.append(combo)
        if len(combos) >= chunk:
            best_obj, best = flush(combos, best_obj, best)
            combos = []
    best_obj, best = flush(combos, best_obj, best)

    z = np.zeros(grid.length)
    idx = grid.indices()
    mask = np.abs(idx) <= n_lambda
    z[mask] = best[idx[mask] + n_lambda]
    return ResidualEstimate(z, op.residual_structure, n_lambda, True, (best_obj,))
