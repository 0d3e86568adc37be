"""Sensor, link and capacity abstractions."""

from __future__ import annotations

from enum import StrEnum

import numpy as np
from numpy.typing import NDArray
from spectra_shared.config_models import ExperimentConfig, RadioConfig
from spectra_shared.seeding import capacity_stream
from spectra_traffic.pu_process import PuProcess, PuState


class SenseResult(StrEnum):
    FREE = "free"
    BUSY = "busy"


def sense(pu: PuProcess, radio: RadioConfig, rng: np.random.Generator) -> SenseResult:
    """Energy-detector outcome at the PU's current instant.

    Busy w.p. P_d when the PU is Active, w.p. P_f when it is Idle.
    """
    p_busy = radio.p_detect if pu.state is PuState.ACTIVE else radio.p_false_alarm
    return SenseResult.BUSY if rng.random() < p_busy else SenseResult.FREE


def channel_error(radio: RadioConfig, rng: np.random.Generator) -> bool:
    return bool(rng.random() < radio.channel_error)


def capacity_matrix(config: ExperimentConfig) -> NDArray[np.float64]:
    """Throughput units per frame for each (device, channel) pairing.

    Taken from the config when listed, else drawn once from the master seed so
    every policy and replication sees the same values.
    """
    if config.radio.capacity is not None:
        return np.asarray(config.radio.capacity, dtype=np.float64)
    rng = capacity_stream(config.seed)
    return rng.uniform(
        config.radio.capacity_min,
        config.radio.capacity_max,
        size=(config.devices, config.channels),
    )
