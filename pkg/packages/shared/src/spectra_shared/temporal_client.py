"""Temporal client connection factory.

Only `spectra run --temporal` and `spectra worker` need a cluster; the default
local mode never imports a client. Two connection modes:

1. **Dev server**: `TEMPORAL_ADDRESS` (default `localhost:7233`), no auth;
   `temporal server start-dev` is enough to fan replications out to workers.

2. **Temporal Cloud**: `TEMPORAL_API_KEY` plus `TEMPORAL_REGIONAL_ENDPOINT`
   (the regional endpoint from the namespace "Connect" dialog, not the
   `<ns>.tmprl.cloud` namespace endpoint). TLS is always on.

Both modes use the Pydantic v2 data converter so ExperimentConfig and the
replication pointers survive the workflow/activity boundary intact.
"""

from __future__ import annotations

import os

from temporalio.client import Client
from temporalio.contrib.pydantic import pydantic_data_converter

DEFAULT_ADDRESS = "localhost:7233"


def _cloud_endpoint(api_key: str | None) -> str | None:
    """Return the regional endpoint when cloud auth is configured, else None."""
    if not api_key:
        return None
    endpoint = os.environ.get("TEMPORAL_REGIONAL_ENDPOINT")
    if not endpoint:
        raise ValueError(
            "TEMPORAL_API_KEY is set but TEMPORAL_REGIONAL_ENDPOINT is missing. "
            "Set it to the regional endpoint shown in Temporal Cloud "
            "(e.g., us-east-1.aws.api.temporal.io:7233)."
        )
    return endpoint


async def connect() -> Client:
    """Create a connected Temporal client for the configured environment."""
    namespace = os.environ.get("TEMPORAL_NAMESPACE", "default")
    api_key = os.environ.get("TEMPORAL_API_KEY")

    endpoint = _cloud_endpoint(api_key)
    if endpoint is not None:
        return await Client.connect(
            endpoint,
            namespace=namespace,
            api_key=api_key,
            tls=True,
            data_converter=pydantic_data_converter,
        )

    return await Client.connect(
        os.environ.get("TEMPORAL_ADDRESS", DEFAULT_ADDRESS),
        namespace=namespace,
        data_converter=pydantic_data_converter,
    )
