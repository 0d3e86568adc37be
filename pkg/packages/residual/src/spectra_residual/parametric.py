"""Parametric residual estimator used by the baseline policy.

Assumes exponential OFF periods with an unknown rate and keeps a Gamma
(shape, rate) posterior per channel. Being memoryless, the residual OFF time
has the same law as a full OFF period, so a prediction draws a rate from the
posterior, then an exponential residual, then quantizes it.

Windows that ended in a failure observed the end of the idle period (one
event, `tau` exposure); windows that succeeded only saw `tau` frames of it
(right-censored, exposure only).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from spectra_shared.config_models import ResidualConfig

from spectra_residual.quantize import quantize


@dataclass
class ParametricResidualModel:
    shape: NDArray[np.float64]
    rate: NDArray[np.float64]
    support: int
    truncations: int = 0

    @classmethod
    def prior(cls, channels: int, cfg: ResidualConfig) -> ParametricResidualModel:
        return cls(
            shape=np.full(channels, cfg.parametric_prior_shape),
            rate=np.full(channels, cfg.parametric_prior_rate),
            support=cfg.support,
        )

    def posterior_mean_rate(self, channel: int) -> float:
        return float(self.shape[channel] / self.rate[channel])


def predict_residual_parametric(
    model: ParametricResidualModel, channel: int, rng: np.random.Generator
) -> int:
    lam = rng.gamma(model.shape[channel], 1.0 / model.rate[channel])
    k, truncated = quantize(float(rng.exponential(1.0 / lam)), model.support)
    if truncated:
        model.truncations += 1
    return k


def update_parametric(
    model: ParametricResidualModel, channel: int, tau: float, *, closed: bool
) -> ParametricResidualModel:
    if tau <= 0:
        raise ValueError(f"tau must be > 0, got {tau!r}")
    model.rate[channel] += tau
    if closed:
        model.shape[channel] += 1.0
    return model
