"""Duration samplers for PU ON/OFF periods.

Pure functions of (params, generator). Each accepts an optional `size` so the
statistical test suites can draw 10^5-10^6 samples without a Python loop; the
simulator always draws scalars.

  sample_gpd     : inverse-CDF Generalized Pareto
  sample_hed_off : hyper-exponential mixture (component pick, then exponential)
  sample_on/off  : dispatch on a PuTrafficModel
  mean_on/off    : analytic means, for occupancy checks and logging
"""

from __future__ import annotations

from typing import overload

import numpy as np
from numpy.typing import NDArray
from spectra_shared.config_models import (
    ExponentialTraffic,
    GpdParams,
    GpdTraffic,
    HedParams,
    HedTraffic,
    PuTrafficModel,
)

# Durations are floored here so a PU state never has zero length.
_MIN_DURATION = 1e-9


def gpd_inverse_cdf(params: GpdParams, u: NDArray[np.float64]) -> NDArray[np.float64]:
    """Map u in (0, 1] to a GPD quantile; u = 1 gives the location exactly."""
    if params.shape == 0.0:
        return params.location - params.scale * np.log(u)
    return params.location + (params.scale / params.shape) * (u ** (-params.shape) - 1.0)


def gpd_cdf(params: GpdParams, x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Analytic GPD CDF, used by the KS suites."""
    z = np.maximum(x - params.location, 0.0) / params.scale
    if params.shape == 0.0:
        return 1.0 - np.exp(-z)
    return 1.0 - (1.0 + params.shape * z) ** (-1.0 / params.shape)


@overload
def sample_gpd(params: GpdParams, rng: np.random.Generator) -> float: ...
@overload
def sample_gpd(
    params: GpdParams, rng: np.random.Generator, size: int
) -> NDArray[np.float64]: ...
def sample_gpd(
    params: GpdParams, rng: np.random.Generator, size: int | None = None
) -> float | NDArray[np.float64]:
    # 1 - U[0,1) lies in (0, 1], keeping log/power finite
    u = 1.0 - rng.random(size if size is not None else 1)
    x = gpd_inverse_cdf(params, u)
    return x if size is not None else float(x[0])


@overload
def sample_hed_off(params: HedParams, rng: np.random.Generator) -> float: ...
@overload
def sample_hed_off(
    params: HedParams, rng: np.random.Generator, size: int
) -> NDArray[np.float64]: ...
def sample_hed_off(
    params: HedParams, rng: np.random.Generator, size: int | None = None
) -> float | NDArray[np.float64]:
    n = size if size is not None else 1
    means = np.asarray(params.means, dtype=np.float64)
    component = rng.choice(len(means), size=n, p=params.weights)
    x = rng.exponential(means[component])
    return x if size is not None else float(x[0])


def as_hed(model: ExponentialTraffic) -> HedParams:
    """Exponential traffic is the one-component hyper-exponential."""
    return HedParams(weights=[1.0], means=[model.mean_off], mean_on=model.mean_on)


def sample_on(model: PuTrafficModel, rng: np.random.Generator) -> float:
    match model:
        case GpdTraffic():
            x = sample_gpd(model.on, rng)
        case HedTraffic():
            x = float(rng.exponential(model.params.mean_on))
        case ExponentialTraffic():
            x = float(rng.exponential(as_hed(model).mean_on))
    return max(x, _MIN_DURATION)


def sample_off(model: PuTrafficModel, rng: np.random.Generator) -> float:
    match model:
        case GpdTraffic():
            x = sample_gpd(model.off, rng)
        case HedTraffic():
            x = sample_hed_off(model.params, rng)
        case ExponentialTraffic():
            x = sample_hed_off(as_hed(model), rng)
    return max(x, _MIN_DURATION)


def _gpd_mean(params: GpdParams) -> float:
    if params.shape >= 1.0:
        return float("inf")
    return params.location + params.scale / (1.0 - params.shape)


def mean_on(model: PuTrafficModel) -> float:
    match model:
        case GpdTraffic():
            return _gpd_mean(model.on)
        case HedTraffic():
            return model.params.mean_on
        case ExponentialTraffic():
            return model.mean_on


def mean_off(model: PuTrafficModel) -> float:
    match model:
        case GpdTraffic():
            return _gpd_mean(model.off)
        case HedTraffic():
            return sum(w * m for w, m in zip(model.params.weights, model.params.means, strict=True))
        case ExponentialTraffic():
            return model.mean_off
