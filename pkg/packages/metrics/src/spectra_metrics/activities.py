"""Metrics activities: turn replication traces into published CSVs.

Run on METRICS_QUEUE, after every replication of an experiment has reported.

Activities:
  publish_experiment_outputs  load traces, aggregate, write CSVs and the config
"""

from __future__ import annotations

import asyncio
from pathlib import Path

from spectra_shared.sim_models import PublishRequest, PublishResult
from temporalio import activity

from spectra_metrics.export import collect_traces, publish


def publish_outputs(request: PublishRequest) -> PublishResult:
    try:
        traces = collect_traces(request.pointers, request.config.policies)
        files, summaries = publish(request.config, Path(request.out_dir), traces)
    except Exception as exc:
        return PublishResult(success=False, message=f"Publication failed: {exc}")
    return PublishResult(
        success=True,
        message=f"Published {len(summaries)} policies to {request.out_dir}",
        files=[str(f) for f in files],
        summaries=summaries,
    )


@activity.defn
async def publish_experiment_outputs(request: PublishRequest) -> PublishResult:
    activity.logger.info(
        f"Metrics: publishing {len(request.pointers)} replications to {request.out_dir}"
    )
    return await asyncio.to_thread(publish_outputs, request)
