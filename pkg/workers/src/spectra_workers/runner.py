"""Worker runner and workflow submission.

Usage:
  spectra worker <component-name>
  COMPONENT=simcore python -m spectra_workers.runner

The CLI argument takes precedence over the COMPONENT environment variable.
A worker polls its component's dedicated task queue, registering only that
component's workflows and/or activities, and runs until interrupted.
"""

import asyncio
import logging
import os
import sys
import uuid

from spectra_experiment_manager.workflows.run_experiment import RunExperimentWorkflow
from spectra_shared.sim_models import ExperimentRequest, ExperimentResult
from spectra_shared.task_queues import EXPERIMENT_MANAGER_QUEUE
from spectra_shared.temporal_client import connect
from temporalio.worker import Worker

from spectra_workers.registry import COMPONENTS

logger = logging.getLogger(__name__)


async def run_worker(component_name: str) -> None:
    """Start a Temporal worker for the specified component."""
    if component_name not in COMPONENTS:
        available = ", ".join(sorted(COMPONENTS.keys()))
        logger.error(f"Unknown component '{component_name}'. Available: {available}")
        sys.exit(1)

    config = COMPONENTS[component_name]
    client = await connect()

    logger.info(
        f"Starting worker for '{component_name}' on queue '{config.task_queue}' "
        f"(workflows={len(config.workflows)}, activities={len(config.activities)})"
    )

    worker = Worker(
        client,
        task_queue=config.task_queue,
        workflows=config.workflows,
        activities=config.activities,
    )

    await worker.run()


async def submit_experiment(request: ExperimentRequest) -> ExperimentResult:
    """Run an experiment as a workflow and wait for its result."""
    client = await connect()
    workflow_id = f"experiment-{request.config.seed}-{uuid.uuid4().hex[:8]}"
    logger.info(f"Submitting {workflow_id} to '{EXPERIMENT_MANAGER_QUEUE}'")
    return await client.execute_workflow(
        RunExperimentWorkflow.run,
        request,
        id=workflow_id,
        task_queue=EXPERIMENT_MANAGER_QUEUE,
    )


def main() -> None:
    """Module entrypoint: parse the component name and start the worker."""
    logging.basicConfig(level=logging.INFO)
    component_name = sys.argv[1] if len(sys.argv) >= 2 else os.environ.get("COMPONENT", "")

    if not component_name:
        print("Usage: python -m spectra_workers.runner <component>")
        print("  or: COMPONENT=<component> python -m spectra_workers.runner")
        print(f"Components: {', '.join(sorted(COMPONENTS.keys()))}")
        sys.exit(1)

    asyncio.run(run_worker(component_name))


if __name__ == "__main__":
    main()
