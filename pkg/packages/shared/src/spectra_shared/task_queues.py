"""Task queue name constants for each component.

Each component runs on its own Temporal worker with a dedicated task queue.
Replications are CPU-bound pure Python, so throughput scales by adding
simcore workers (processes), not by packing more activities into one.

These constants are the single source of truth for queue names. Both the worker
runner and the experiment workflow reference them.
"""

# Manager: runs the experiment workflow that fans replications out
EXPERIMENT_MANAGER_QUEUE = "experiment-manager-queue"

# Engine: one activity per (policy, replication) simulation
SIMCORE_QUEUE = "simcore-queue"

# Post-processing: aggregation and CSV publication
METRICS_QUEUE = "metrics-queue"
