"""RunExperimentWorkflow: plan -> Simcore (fan-out) -> Metrics.

1. Resolve the config and plan one request per (policy, replication)
2. Run every replication as a simulate_replication activity on SIMCORE_QUEUE
3. Publish the traces with publish_experiment_outputs on METRICS_QUEUE

Replications are independent and dispatched concurrently; results come back
in plan order regardless of which worker finishes first. The output directory
must be reachable from every worker (a shared volume when workers run on
several hosts).
"""

import asyncio
from datetime import timedelta

from temporalio import workflow

with workflow.unsafe.imports_passed_through():
    from spectra_metrics.activities import publish_experiment_outputs
    from spectra_shared.sim_models import ExperimentRequest, ExperimentResult, PublishRequest
    from spectra_shared.task_queues import METRICS_QUEUE, SIMCORE_QUEUE
    from spectra_simcore.activities import simulate_replication

    from spectra_experiment_manager.planning import (
        experiment_result,
        plan_replications,
        resolve_config,
    )


@workflow.defn
class RunExperimentWorkflow:
    """Fans an experiment's replications out to simcore workers and publishes the result."""

    @workflow.run
    async def run(self, request: ExperimentRequest) -> ExperimentResult:
        # Step 1: Resolve and plan
        config = resolve_config(request.config)
        requests = plan_replications(config, request.out_dir)
        workflow.logger.info(
            f"Experiment: {len(requests)} replications of {config.horizon} frames"
        )

        # Step 2: One activity per (policy, replication)
        pointers = await asyncio.gather(
            *(
                workflow.execute_activity(
                    simulate_replication,
                    r,
                    task_queue=SIMCORE_QUEUE,
                    start_to_close_timeout=timedelta(hours=2),
                )
                for r in requests
            )
        )

        # Step 3: Aggregate and write CSVs
        published = await workflow.execute_activity(
            publish_experiment_outputs,
            PublishRequest(config=config, out_dir=request.out_dir, pointers=list(pointers)),
            task_queue=METRICS_QUEUE,
            start_to_close_timeout=timedelta(minutes=30),
        )

        return experiment_result(request.out_dir, pointers, published)
