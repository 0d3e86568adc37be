"""CSV publication of replication traces.

Files written under an experiment's output directory:

  trace_<policy>.csv    long format: frame, policy, metric, mean, std
  epsilon_<policy>.csv  per-channel exploration factor, scheduled policies only
  summary.csv           one row per policy with end-of-horizon values
  config_resolved.json  the fully resolved config every replication ran with

Frames are numbered from 1 in every CSV. Missing points (no active device yet)
are written as empty cells.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
import pandas as pd
from numpy.typing import NDArray
from spectra_shared.config_models import ExperimentConfig, Policy
from spectra_shared.sim_models import PolicySummary, ReplicationPointer

from spectra_metrics.series import aggregate_replications, final_value, normalized_series
from spectra_metrics.trace import Metric, MetricsTrace

logger = logging.getLogger(__name__)

SUMMARY_FILE = "summary.csv"
CONFIG_FILE = "config_resolved.json"


def trace_file(policy: Policy) -> str:
    return f"trace_{policy}.csv"


def epsilon_file(policy: Policy) -> str:
    return f"epsilon_{policy}.csv"


# ============================================================================
# Loading
# ============================================================================


def collect_traces(
    pointers: Iterable[ReplicationPointer], policies: Sequence[Policy]
) -> dict[Policy, list[MetricsTrace]]:
    """Load successful replications, ordered by (policy, replication)."""
    grouped: dict[Policy, list[ReplicationPointer]] = {p: [] for p in policies}
    for pointer in pointers:
        if not pointer.success:
            logger.warning(
                f"Skipping {pointer.policy} rep={pointer.replication}: {pointer.message}"
            )
            continue
        grouped.setdefault(pointer.policy, []).append(pointer)
    return {
        policy: [
            MetricsTrace.load(Path(p.trace_path))
            for p in sorted(batch, key=lambda p: p.replication)
        ]
        for policy, batch in grouped.items()
        if batch
    }


# ============================================================================
# Frames
# ============================================================================


def _rows(frames: int, stride: int) -> NDArray[np.intp]:
    """Every `stride`-th frame index, always keeping the last one."""
    return np.unique(np.append(np.arange(0, frames, stride), frames - 1))


def trace_frame(policy: Policy, traces: Sequence[MetricsTrace], stride: int = 1) -> pd.DataFrame:
    parts = []
    for metric in Metric:
        mean, std = aggregate_replications([normalized_series(t, metric) for t in traces])
        rows = _rows(len(mean), stride)
        parts.append(
            pd.DataFrame(
                {
                    "frame": rows + 1,
                    "policy": policy.value,
                    "metric": metric.value,
                    "mean": mean[rows],
                    "std": std[rows],
                }
            )
        )
    return pd.concat(parts, ignore_index=True)


def epsilon_frame(
    policy: Policy, traces: Sequence[MetricsTrace], stride: int = 1
) -> pd.DataFrame:
    stacked = np.stack([t.epsilon for t in traces])  # (replications, frames, channels)
    mean = stacked.mean(axis=0)
    std = stacked.std(axis=0, ddof=1) if len(traces) > 1 else np.zeros_like(mean)
    rows = _rows(stacked.shape[1], stride)
    columns: dict[str, object] = {"frame": rows + 1, "policy": policy.value}
    for c in range(stacked.shape[2]):
        columns[f"eps_{c}"] = mean[rows, c]
        columns[f"eps_{c}_std"] = std[rows, c]
    return pd.DataFrame(columns)


def _mean_std(values: NDArray[np.float64]) -> tuple[float, float]:
    present = values[~np.isnan(values)]
    if present.size == 0:
        return float("nan"), float("nan")
    std = float(present.std(ddof=1)) if present.size > 1 else 0.0
    return float(present.mean()), std


def summarize_policy(
    policy: Policy, traces: Sequence[MetricsTrace], devices: int
) -> PolicySummary:
    """End-of-horizon metrics of one policy averaged over its replications.

    Sensing is reported three ways: the normalized series' final value, sensings
    per device-frame holding payload, and sensings per device per wall-clock frame.
    """
    if not traces:
        raise ValueError(f"no traces for {policy}")
    finals = {
        metric: np.array([final_value(normalized_series(t, metric)) for t in traces])
        for metric in Metric
    }
    sensing, sensing_std = _mean_std(finals[Metric.SENSING])
    throughput, throughput_std = _mean_std(finals[Metric.THROUGHPUT])
    collisions, collisions_std = _mean_std(finals[Metric.COLLISIONS])

    total_sensing = float(sum(t.sensing.sum() for t in traces))
    device_frames = float(sum(t.n_active.sum() for t in traces))
    wall_frames = float(sum(t.frames for t in traces))
    return PolicySummary(
        policy=policy,
        replications=len(traces),
        avg_sensing_per_frame=sensing,
        avg_sensing_per_frame_std=sensing_std,
        avg_sensing_per_active_frame=(
            total_sensing / device_frames if device_frames else float("nan")
        ),
        avg_sensing_wallclock=total_sensing / (wall_frames * devices),
        avg_throughput=throughput,
        avg_throughput_std=throughput_std,
        avg_frame_collisions=collisions,
        avg_frame_collisions_std=collisions_std,
        sensings_per_device=total_sensing / (len(traces) * devices),
    )


def summary_frame(summaries: Sequence[PolicySummary]) -> pd.DataFrame:
    return pd.DataFrame([s.model_dump(mode="json") for s in summaries])


# ============================================================================
# Writers
# ============================================================================


def write_policy_outputs(
    out_dir: Path,
    policy: Policy,
    traces: Sequence[MetricsTrace],
    stride: int = 1,
) -> list[Path]:
    written = []
    path = out_dir / trace_file(policy)
    trace_frame(policy, traces, stride).to_csv(path, index=False)
    written.append(path)
    if traces[0].epsilon.shape[1] > 0:
        path = out_dir / epsilon_file(policy)
        epsilon_frame(policy, traces, stride).to_csv(path, index=False)
        written.append(path)
    return written


def write_summary(out_dir: Path, summaries: Sequence[PolicySummary]) -> Path:
    path = out_dir / SUMMARY_FILE
    summary_frame(summaries).to_csv(path, index=False)
    return path


def write_config(out_dir: Path, config: ExperimentConfig) -> Path:
    path = out_dir / CONFIG_FILE
    path.write_text(config.model_dump_json(indent=2))
    return path


def publish(
    config: ExperimentConfig,
    out_dir: Path,
    traces: dict[Policy, list[MetricsTrace]],
) -> tuple[list[Path], list[PolicySummary]]:
    """Write every output file for one experiment; policies in config order."""
    out_dir.mkdir(parents=True, exist_ok=True)
    files: list[Path] = [write_config(out_dir, config)]
    summaries: list[PolicySummary] = []
    for policy in config.policies:
        runs = traces.get(policy)
        if not runs:
            logger.warning(f"No successful replications for {policy}; nothing to publish")
            continue
        files.extend(write_policy_outputs(out_dir, policy, runs, config.trace_stride))
        summaries.append(summarize_policy(policy, runs, config.devices))
    files.append(write_summary(out_dir, summaries))
    logger.info(f"Wrote {len(files)} files to {out_dir}")
    return files, summaries
