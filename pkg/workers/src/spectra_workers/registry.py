"""Component registry: maps component names to their workflows and activities.

The runner looks a component up here by the name given on the command line:

- task_queue: which Temporal task queue the worker polls
- workflows: workflow classes to register (only the Experiment Manager has these)
- activities: activity functions to register

Simcore is the only component worth scaling out: start as many simcore
workers as there are cores to spare and the experiment workflow's fan-out
spreads over them.
"""

from dataclasses import dataclass, field
from typing import Any

from spectra_experiment_manager.workflows.run_experiment import RunExperimentWorkflow
from spectra_metrics.activities import publish_experiment_outputs
from spectra_shared.task_queues import (
    EXPERIMENT_MANAGER_QUEUE,
    METRICS_QUEUE,
    SIMCORE_QUEUE,
)
from spectra_simcore.activities import simulate_replication


@dataclass
class ComponentConfig:
    """Configuration for a single component's worker."""

    task_queue: str
    workflows: list[Any] = field(default_factory=list)
    activities: list[Any] = field(default_factory=list)


COMPONENTS: dict[str, ComponentConfig] = {
    "experiment-manager": ComponentConfig(
        task_queue=EXPERIMENT_MANAGER_QUEUE,
        workflows=[RunExperimentWorkflow],
    ),
    "simcore": ComponentConfig(
        task_queue=SIMCORE_QUEUE,
        activities=[simulate_replication],
    ),
    "metrics": ComponentConfig(
        task_queue=METRICS_QUEUE,
        activities=[publish_experiment_outputs],
    ),
}
