"""Normalized cumulative series and replication aggregation.

    y_t = (1 / N_active,t) * (1 / F_t) * sum_{n <= t} X_n

N_active,t is the number of devices holding payload at frame t and F_t the
number of device-frames transmitted up to t, so collisions stay a fraction
of what was actually sent. Points where either is zero are missing (NaN),
never infinite.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from numpy.typing import NDArray

from spectra_metrics.trace import Metric, MetricsTrace


def normalized_series(trace: MetricsTrace, metric: Metric) -> NDArray[np.float64]:
    cumulative = np.cumsum(trace.series(metric))
    denom = trace.n_active.astype(np.float64) * trace.f_t.astype(np.float64)
    out = np.full(trace.frames, np.nan)
    ok = denom > 0
    out[ok] = cumulative[ok] / denom[ok]
    return out


def aggregate_replications(
    series: Sequence[NDArray[np.float64]],
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Pointwise mean and sample std across replications, skipping missing points."""
    if not series:
        raise ValueError("no replications to aggregate")
    lengths = {len(s) for s in series}
    if len(lengths) != 1:
        raise ValueError(f"replication traces differ in length: {sorted(lengths)}")
    stacked = np.vstack(series)
    present = np.sum(~np.isnan(stacked), axis=0)
    mean = np.full(stacked.shape[1], np.nan)
    std = np.full(stacked.shape[1], np.nan)
    any_present = present > 0
    mean[any_present] = np.nanmean(stacked[:, any_present], axis=0)
    std[any_present] = 0.0
    several = present > 1
    std[several] = np.nanstd(stacked[:, several], axis=0, ddof=1)
    return mean, std


def final_value(series: NDArray[np.float64]) -> float:
    """Last non-missing point of a series; NaN when every point is missing."""
    finite = np.flatnonzero(~np.isnan(series))
    return float(series[finite[-1]]) if finite.size else float("nan")
