"""Simcore activities: one seeded replication per call.

Run on SIMCORE_QUEUE. A replication is CPU-bound numpy work, so the async
activity hands it to a thread and the worker stays responsive to heartbeats
and cancellation.

Activities:
  simulate_replication  run one (policy, replication) and write its trace

The trace lands at <out_dir>/replications/<policy>/rep_<r>.npz; only the path
and the scalar totals travel back through Temporal.
"""

from __future__ import annotations

import asyncio
import logging
import time
from pathlib import Path

from spectra_shared.sim_models import ReplicationPointer, ReplicationRequest
from temporalio import activity

from spectra_simcore.engine import Simulation

logger = logging.getLogger(__name__)


def trace_path(out_dir: str | Path, policy: str, replication: int) -> Path:
    return Path(out_dir) / "replications" / policy / f"rep_{replication}.npz"


def run_replication(request: ReplicationRequest) -> ReplicationPointer:
    """Synchronous body shared by the activity and the local process pool."""
    policy = request.policy
    label = f"{policy} rep={request.replication} seed={request.config.seed}"
    try:
        started = time.perf_counter()
        sim = Simulation.create(request.config, policy, request.replication)
        trace = sim.run()
        path = trace_path(request.out_dir, policy, request.replication)
        trace.save(path)
        elapsed = time.perf_counter() - started

        if sim.grants != sim.terminal_events + sim.open_windows():
            logger.warning(
                f"{label}: {sim.grants} grants but {sim.terminal_events} terminal events "
                f"and {sim.open_windows()} open windows"
            )
        totals = sim.totals
        logger.info(
            f"{label}: {trace.frames} frames, {totals.sensings} sensings, "
            f"{totals.frame_failures} failures, {totals.dropped_frames} dropped in {elapsed:.1f}s"
        )
        return ReplicationPointer(
            success=True,
            message=f"{label} complete",
            policy=policy,
            replication=request.replication,
            trace_path=str(path),
            frames=trace.frames,
            totals=totals,
            wall_seconds=elapsed,
        )
    except Exception as exc:
        logger.exception(f"{label} failed")
        return ReplicationPointer(
            success=False,
            message=f"{label} failed: {exc}",
            policy=policy,
            replication=request.replication,
        )


@activity.defn
async def simulate_replication(request: ReplicationRequest) -> ReplicationPointer:
    activity.logger.info(
        f"Simcore: {request.policy} replication {request.replication} "
        f"({request.config.horizon} frames)"
    )
    return await asyncio.to_thread(run_replication, request)
