"""Replication planning shared by the local runner and the experiment workflow.

Both paths resolve the config once, fan out one ReplicationRequest per
(policy, replication) and fold the pointers and the publication result into
one ExperimentResult. Everything here is pure so the workflow can call it
deterministically.
"""

from __future__ import annotations

from collections.abc import Sequence

from spectra_shared.config_models import ExperimentConfig
from spectra_shared.sim_models import (
    ExperimentResult,
    PublishResult,
    ReplicationPointer,
    ReplicationRequest,
)
from spectra_simcore.radio import capacity_matrix


def resolve_config(config: ExperimentConfig) -> ExperimentConfig:
    """Pin every derived parameter so the config alone reproduces the run.

    The capacity matrix is drawn once from the master seed and written into the
    radio section; every replication and policy then reads the same values.
    """
    if config.radio.capacity is not None:
        return config
    capacity = capacity_matrix(config).tolist()
    radio = config.radio.model_copy(update={"capacity": capacity})
    return config.model_copy(update={"radio": radio})


def plan_replications(config: ExperimentConfig, out_dir: str) -> list[ReplicationRequest]:
    """One request per (policy, replication), in that order."""
    return [
        ReplicationRequest(config=config, policy=policy, replication=rep, out_dir=out_dir)
        for policy in config.policies
        for rep in range(config.replications)
    ]


def experiment_result(
    out_dir: str,
    pointers: Sequence[ReplicationPointer],
    published: PublishResult,
) -> ExperimentResult:
    failed = [p for p in pointers if not p.success]
    if not published.success:
        return ExperimentResult(
            success=False,
            message=published.message,
            out_dir=out_dir,
            failed_replications=len(failed),
        )
    if failed:
        first = failed[0]
        message = (
            f"{len(failed)} of {len(pointers)} replications failed "
            f"(first: {first.policy} rep={first.replication}: {first.message})"
        )
    else:
        message = f"{len(pointers)} replications published to {out_dir}"
    return ExperimentResult(
        success=not failed,
        message=message,
        out_dir=out_dir,
        files=published.files,
        summaries=published.summaries,
        failed_replications=len(failed),
    )
