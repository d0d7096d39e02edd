"""Amplitude-folding nonlinearities and their in-range inverses.

The generalized operator keeps a known invertible map g on [-lam, lam] and
does something range-bounded outside: clip saturates, modulo wraps onto the
2*lam lattice, and mulaw_modulo companders first and then wraps.  Recovery
only ever reads the folded values and g inverse; the out-of-range behavior
beyond that is opaque by design.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError
from .signal_core import SampledSignal

# residual structure tags
LATTICE_2LAMBDA = "lattice_2lambda"
SIGN_FROM_SATURATION = "sign_from_saturation"
NO_STRUCTURE = "none"

_KIND_STRUCTURE = {
    "clip": SIGN_FROM_SATURATION,
    "modulo": LATTICE_2LAMBDA,
    "mulaw_modulo": NO_STRUCTURE,
}


@dataclass(frozen=True)
class MuLawParams:
    """Compression parameter mu and the amplitude scale of the map."""

    mu: float
    normalizer: float

    def __post_init__(self):
        if self.mu <= 0:
            raise ConfigurationError("mu must be > 0")
        if self.normalizer <= 0:
            raise ConfigurationError("normalizer must be > 0")


def mu_law_forward(x, p: MuLawParams):
    """lam * sgn(x) * ln(1 + mu |x|/lam) / ln(1 + mu), lam = p.normalizer."""
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > p.normalizer * (1 + 1e-12)):
        raise DomainError("mu-law input exceeds the normalizer amplitude")
    lam = p.normalizer
    y = lam * np.sign(x) * np.log1p(p.mu * np.abs(x) / lam) / np.log1p(p.mu)
    return y if y.ndim else float(y)


def mu_law_inverse(y, p: MuLawParams):
    """Exact algebraic inverse of mu_law_forward."""
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) > p.normalizer * (1 + 1e-12)):
        raise DomainError("mu-law inverse input exceeds the normalizer amplitude")
    lam = p.normalizer
    x = lam * np.sign(y) * (np.expm1(np.abs(y) / lam * np.log1p(p.mu))) / p.mu
    return x if x.ndim else float(x)


def _mu_law_unbounded(x, p: MuLawParams):
    """Forward map without the domain check, for the full-range compander."""
    lam = p.normalizer
    return lam * np.sign(x) * np.log1p(p.mu * np.abs(x) / lam) / np.log1p(p.mu)


@dataclass(frozen=True)
class OperatorSpec:
    """The folding operator: threshold, in-range map, out-of-range mode.

    kind is one of clip / modulo / mulaw_modulo.  The in-range map is the
    identity for clip and modulo, and the mu-law compander (normalized by
    lam, so it is signal-independent) for mulaw_modulo.
    """

    lam: float
    kind: str
    mu: float | None = None

    def __post_init__(self):
        if self.lam <= 0:
            raise ConfigurationError("lambda must be > 0")
        if self.kind not in _KIND_STRUCTURE:
            raise ConfigurationError(f"unknown operator kind {self.kind!r}")
        if self.kind == "mulaw_modulo" and (self.mu is None or self.mu <= 0):
            raise ConfigurationError("mulaw_modulo requires mu > 0")

    @property
    def residual_structure(self) -> str:
        return _KIND_STRUCTURE[self.kind]

    @property
    def mu_params(self) -> MuLawParams | None:
        if self.kind == "mulaw_modulo":
            return MuLawParams(self.mu, self.lam)
        return None

    def g(self, x):
        """In-range map, defined on [-lam, lam]."""
        p = self.mu_params
        return mu_law_forward(x, p) if p is not None else x

    def g_inverse(self, y):
        p = self.mu_params
        return mu_law_inverse(y, p) if p is not None else y


def clipping_operator(lam: float) -> OperatorSpec:
    return OperatorSpec(lam, "clip")


def modulo_operator(lam: float) -> OperatorSpec:
    return OperatorSpec(lam, "modulo")


def mulaw_modulo_operator(lam: float, mu: float = 255.0) -> OperatorSpec:
    return OperatorSpec(lam, "mulaw_modulo", mu)


def fold_count(x, lam: float):
    """Integer k with apply_modulo(x) = x - 2*lam*k."""
    if lam <= 0:
        raise ConfigurationError("lambda must be > 0")
    x = np.asarray(x, dtype=float)
    k = np.floor((x + lam) / (2.0 * lam))
    return k if k.ndim else float(k)


def apply_modulo(x, lam: float):
    """(x + lam) mod 2*lam - lam, computed through the integer fold count.

    x - result is then 2*lam*k bit-for-bit, which Algorithm rounding to the
    2*lam lattice relies on.
    """
    k = fold_count(x, lam)
    out = np.asarray(x, dtype=float) - 2.0 * lam * np.asarray(k)
    return out if out.ndim else float(out)


def apply_clip(x, lam: float):
    if lam <= 0:
        raise ConfigurationError("lambda must be > 0")
    out = np.clip(np.asarray(x, dtype=float), -lam, lam)
    return out if out.ndim else float(out)


def _apply_values(values: np.ndarray, op: OperatorSpec) -> np.ndarray:
    lam = op.lam
    x = np.asarray(values, dtype=float)
    in_range = np.abs(x) <= lam
    out = np.empty_like(x)
    out[in_range] = np.asarray(op.g(x[in_range]))
    xo = x[~in_range]
    if op.kind == "clip":
        out[~in_range] = np.sign(xo) * lam
    elif op.kind == "modulo":
        out[~in_range] = apply_modulo(xo, lam)
    else:  # mulaw_modulo: full-range compander, then wrap
        out[~in_range] = apply_modulo(_mu_law_unbounded(xo, op.mu_params), lam)
    return out


def apply_operator(signal: SampledSignal, op: OperatorSpec) -> SampledSignal:
    """Samplewise folding; every output lies in [-lam, lam]."""
    return signal.with_values(_apply_values(signal.values, op))


def invert_in_range(op: OperatorSpec, y):
    """g^{-1}(y) for |y| <= lam; folded samples must lie in the ADC range."""
    y_arr = np.asarray(y, dtype=float)
    if np.any(np.abs(y_arr) > op.lam * (1 + 1e-12)):
        raise DomainError("folded value outside [-lambda, lambda]")
    return op.g_inverse(y)


def construct_nyquist_counterexample(
    signal: SampledSignal, op: OperatorSpec, n0: int
) -> SampledSignal:
    """A distinct signal with identical folded samples at the Nyquist rate.

    Replaces the sample at index n0 (which must fold) by g^{-1} of its folded
    value; the result differs from the input yet folds to the same sequence,
    so no recovery method can tell them apart at OF = 1.
    """
    if not np.isclose(signal.grid.oversampling_factor, 1.0, rtol=1e-9):
        raise ConfigurationError("counterexample construction requires OF = 1")
    idx = signal.grid.indices()
    pos = np.nonzero(idx == n0)[0]
    if pos.size != 1:
        raise ConfigurationError(f"index {n0} not inside the window")
    pos = int(pos[0])
    if np.abs(signal.values[pos]) <= op.lam:
        raise ConfigurationError(f"|signal[{n0}]| must exceed lambda for a fold")
    folded_value = _apply_values(signal.values[pos : pos + 1], op)[0]
    values = signal.values.copy()
    values[pos] = np.asarray(op.g_inverse(folded_value))
    return signal.with_values(values)
