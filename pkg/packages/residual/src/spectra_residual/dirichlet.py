"""Non-parametric residual OFF-time estimator, one Dirichlet per channel.

Each channel c keeps pseudo-counts a[c, k] over skip classes k = 1..K. A
prediction draws a categorical p ~ Dirichlet(a[c]), moves eps of its mass
onto the largest class K, and samples t_skip from the result. The eps mass
probes for idle periods longer than anything observed so far.

Updates add one count per observed residual. Two observations whose windows
are separated by no more than `hold_frames` are one idle period seen twice
(the channel was handed straight to the next device), so the second one
retracts the first count and re-adds it at the summed class. An observation
that ended in a failure closes the idle period and is never merged forward.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from spectra_shared.config_models import ResidualConfig

from spectra_residual.quantize import quantize


@dataclass
class ResidualModel:
    counts: NDArray[np.float64]  # shape (channels, support); column k - 1 is class k
    prior: float
    hold_frames: int
    last_class: list[int | None] = field(default_factory=list)
    last_frame: list[int | None] = field(default_factory=list)
    last_closed: list[bool] = field(default_factory=list)
    samples: int = 0
    truncations: int = 0

    @classmethod
    def uniform(cls, channels: int, cfg: ResidualConfig) -> ResidualModel:
        return cls(
            counts=np.full((channels, cfg.support), cfg.prior_count),
            prior=cfg.prior_count,
            hold_frames=cfg.hold_frames,
            last_class=[None] * channels,
            last_frame=[None] * channels,
            last_closed=[False] * channels,
        )

    @property
    def support(self) -> int:
        return int(self.counts.shape[1])

    def posterior_mean(self, channel: int) -> NDArray[np.float64]:
        row = self.counts[channel]
        return row / row.sum()


def augmented_distribution(p: NDArray[np.float64], epsilon: float) -> NDArray[np.float64]:
    """(1 - eps) * p + eps * delta(K)."""
    out = (1.0 - epsilon) * p
    out[-1] += epsilon
    return out


def predict_residual(
    model: ResidualModel,
    channel: int,
    epsilon: float,
    rng: np.random.Generator,
) -> int:
    """Sample a skip budget t_skip in 1..K for `channel`."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon!r}")
    p = augmented_distribution(rng.dirichlet(model.counts[channel]), epsilon)
    cdf = np.cumsum(p)
    k = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    return min(k, model.support - 1) + 1


def update_residual(
    model: ResidualModel,
    channel: int,
    tau: float,
    now: int,
    *,
    started_at: int | None = None,
    closed: bool = False,
) -> ResidualModel:
    """Record an observed residual of `tau` frames on `channel`, ending at frame `now`.

    `started_at` is the first frame of the observing window; the hold-window
    test measures the gap from the previous update to it.
    """
    if tau <= 0:
        raise ValueError(f"tau must be > 0, got {tau!r}")
    k, truncated = quantize(tau, model.support)
    start = now if started_at is None else started_at
    prev_class = model.last_class[channel]
    prev_frame = model.last_frame[channel]

    if (
        prev_class is not None
        and prev_frame is not None
        and not model.last_closed[channel]
        and start - prev_frame <= model.hold_frames
    ):
        merged = prev_class + k
        if merged > model.support:
            merged, truncated = model.support, True
        model.counts[channel, prev_class - 1] -= 1.0
        model.counts[channel, merged - 1] += 1.0
        model.last_class[channel] = merged
    else:
        model.counts[channel, k - 1] += 1.0
        model.last_class[channel] = k
        model.samples += 1

    if truncated:
        model.truncations += 1
    model.last_frame[channel] = now
    model.last_closed[channel] = closed
    return model
