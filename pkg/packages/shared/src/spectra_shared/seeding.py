"""Seed-stream layout for paired, reproducible replications.

Every random draw in a replication comes from a Generator spawned from the
master seed with a fixed spawn key, so:

  - PU renewals, PU retransmission redraws and SU traffic depend only on
    (seed, replication): every policy sees the same traffic realization.
  - Sensing outcomes, channel errors and learner randomness depend on
    (seed, replication, policy): a learner never perturbs traffic.
  - The capacity matrix depends on the seed alone, fixed across replications
    and policies.

Spawn keys are namespaced by their first element so no two streams collide.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_NS_CAPACITY = 0
_NS_REPLICATION = 1

_RENEWAL = 0
_RETRANSMIT = 1
_DEVICE = 2
_LAYOUT = 3
_RADIO = 4
_LEARNER = 5


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


@dataclass(frozen=True)
class ReplicationStreams:
    """All independent generators one replication of one policy draws from."""

    renewal: list[np.random.Generator]
    retransmit: list[np.random.Generator]
    devices: list[np.random.Generator]
    radio: np.random.Generator
    learner: np.random.Generator


def replication_streams(
    seed: int,
    replication: int,
    policy_index: int,
    channels: int,
    devices: int,
) -> ReplicationStreams:
    """Spawn the per-channel, per-device and per-policy streams for one run."""
    rep = (_NS_REPLICATION, replication)
    return ReplicationStreams(
        renewal=[_stream(seed, *rep, _RENEWAL, c) for c in range(channels)],
        retransmit=[_stream(seed, *rep, _RETRANSMIT, c) for c in range(channels)],
        devices=[_stream(seed, *rep, _DEVICE, d) for d in range(devices)],
        radio=_stream(seed, *rep, _RADIO, policy_index),
        learner=_stream(seed, *rep, _LEARNER, policy_index),
    )


def layout_stream(seed: int, replication: int) -> np.random.Generator:
    """Stream that randomizes per-channel PU laws for one replication."""
    return _stream(seed, _NS_REPLICATION, replication, _LAYOUT)


def capacity_stream(seed: int) -> np.random.Generator:
    """Stream for the device x channel capacity matrix, shared by all runs."""
    return _stream(seed, _NS_CAPACITY)
