"""Per-channel PU law randomization.

Channels are modelled independently; each gets its own parameters drawn
uniformly from the configured ranges, in frame periods.
"""

from __future__ import annotations

import numpy as np
from spectra_shared.config_models import (
    ExponentialTraffic,
    GpdParams,
    GpdTraffic,
    PuRandomization,
    PuTrafficModel,
)


def draw_channel_models(
    randomization: PuRandomization,
    channels: int,
    rng: np.random.Generator,
) -> list[PuTrafficModel]:
    """Draw one PU law per channel from the randomization ranges."""
    models: list[PuTrafficModel] = []
    for _ in range(channels):
        if randomization.model == "gpd":
            models.append(_draw_gpd(randomization, rng))
        else:
            lo, hi = randomization.exp_mean_min, randomization.exp_mean_max
            models.append(
                ExponentialTraffic(
                    mean_on=float(rng.uniform(lo, hi)),
                    mean_off=float(rng.uniform(lo, hi)),
                )
            )
    return models


def _draw_gpd(r: PuRandomization, rng: np.random.Generator) -> GpdTraffic:
    def one() -> GpdParams:
        return GpdParams(
            shape=float(rng.uniform(r.gpd_shape_min, r.gpd_shape_max)),
            scale=r.gpd_scale,
            location=float(rng.uniform(r.gpd_location_min, r.gpd_location_max)),
        )

    return GpdTraffic(on=one(), off=one())
