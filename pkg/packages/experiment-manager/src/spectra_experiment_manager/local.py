"""Local experiment runner: the workflow's steps without a Temporal server.

Replications run through a process pool calling the same activity bodies the
workers run. `ProcessPoolExecutor.map` returns results in submission order, so
outputs are merged by (policy, replication) however the pool schedules them.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import pandas as pd
from spectra_metrics.activities import publish_outputs
from spectra_shared.config_models import ExperimentConfig
from spectra_shared.sim_models import ExperimentResult, PublishRequest, ReplicationPointer
from spectra_simcore.activities import run_replication

from spectra_experiment_manager.planning import (
    experiment_result,
    plan_replications,
    resolve_config,
)

logger = logging.getLogger(__name__)

SWEEP_SUMMARY_FILE = "sweep_summary.csv"


def prepare_out_dir(out_dir: Path) -> Path:
    """Create the output directory; raise OSError if nothing can be written there."""
    out_dir.mkdir(parents=True, exist_ok=True)
    if not os.access(out_dir, os.W_OK | os.X_OK):
        raise OSError(f"output directory {out_dir} is not writable")
    return out_dir


def run_experiment(
    config: ExperimentConfig, out_dir: Path | str, jobs: int = 1
) -> ExperimentResult:
    out = prepare_out_dir(Path(out_dir))
    resolved = resolve_config(config)
    requests = plan_replications(resolved, str(out))
    logger.info(
        f"Running {len(requests)} replications ({len(resolved.policies)} policies x "
        f"{resolved.replications}) of {resolved.horizon} frames, seed={resolved.seed}, "
        f"jobs={jobs}"
    )

    pointers: list[ReplicationPointer]
    if jobs <= 1:
        pointers = [run_replication(r) for r in requests]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            pointers = list(pool.map(run_replication, requests))

    published = publish_outputs(
        PublishRequest(config=resolved, out_dir=str(out), pointers=pointers)
    )
    result = experiment_result(str(out), pointers, published)
    log = logger.info if result.success else logger.error
    log(result.message)
    return result


def run_sweep(
    config: ExperimentConfig,
    out_dir: Path | str,
    device_counts: Sequence[int],
    jobs: int = 1,
) -> tuple[list[ExperimentResult], Path]:
    """Rerun the experiment once per device count and collect the summaries.

    Each count gets its own `devices_<m>/` directory; the combined table lands in
    sweep_summary.csv with a leading `devices` column. Per-device lists in the
    config (SU traffic, capacity) cannot be resized and fail validation.
    """
    if not device_counts:
        raise ValueError("device_counts must name at least one count")
    out = prepare_out_dir(Path(out_dir))
    results = []
    rows = []
    for devices in device_counts:
        sized = ExperimentConfig.model_validate({**config.model_dump(), "devices": devices})
        result = run_experiment(sized, out / f"devices_{devices}", jobs)
        results.append(result)
        rows.extend({"devices": devices, **s.model_dump(mode="json")} for s in result.summaries)

    path = out / SWEEP_SUMMARY_FILE
    pd.DataFrame(rows).to_csv(path, index=False)
    logger.info(f"Sweep over {list(device_counts)} devices written to {path}")
    return results, path
