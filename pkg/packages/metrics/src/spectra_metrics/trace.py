"""Per-frame counters of one replication.

A trace is a handful of equal-length numpy arrays indexed by frame. Simcore
fills it through a TraceRecorder and stores it as one compressed .npz file per
(policy, replication); the publication step loads the files back.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from pathlib import Path

import numpy as np
from numpy.typing import NDArray


class Metric(StrEnum):
    SENSING = "sensing"
    THROUGHPUT = "throughput"
    COLLISIONS = "collisions"


@dataclass(frozen=True)
class MetricsTrace:
    sensing: NDArray[np.int64]
    throughput: NDArray[np.float64]
    collisions: NDArray[np.int64]  # failed device-frames
    n_active: NDArray[np.int64]  # devices holding payload
    attempted: NDArray[np.int64]  # device-frames transmitted
    epsilon: NDArray[np.float64]  # shape (frames, channels); zero columns without a schedule

    def __post_init__(self) -> None:
        n = len(self.sensing)
        for name in ("throughput", "collisions", "n_active", "attempted"):
            if len(getattr(self, name)) != n:
                got = len(getattr(self, name))
                raise ValueError(f"trace column '{name}' has {got} frames, expected {n}")
        if self.epsilon.shape[0] != n:
            raise ValueError(f"epsilon has {self.epsilon.shape[0]} frames, expected {n}")

    @property
    def frames(self) -> int:
        return len(self.sensing)

    @property
    def f_t(self) -> NDArray[np.int64]:
        """Device-frames transmitted up to each frame, cumulative."""
        return np.cumsum(self.attempted)

    def series(self, metric: Metric) -> NDArray[np.float64]:
        return np.asarray(getattr(self, metric.value), dtype=np.float64)

    def save(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savez_compressed(
            path,
            sensing=self.sensing,
            throughput=self.throughput,
            collisions=self.collisions,
            n_active=self.n_active,
            attempted=self.attempted,
            epsilon=self.epsilon,
        )

    @classmethod
    def load(cls, path: Path) -> MetricsTrace:
        with np.load(path) as data:
            return cls(
                sensing=data["sensing"],
                throughput=data["throughput"],
                collisions=data["collisions"],
                n_active=data["n_active"],
                attempted=data["attempted"],
                epsilon=data["epsilon"],
            )


class TraceRecorder:
    """Preallocated columns filled one frame at a time."""

    def __init__(self, frames: int, channels: int) -> None:
        self._sensing = np.zeros(frames, dtype=np.int64)
        self._throughput = np.zeros(frames, dtype=np.float64)
        self._collisions = np.zeros(frames, dtype=np.int64)
        self._n_active = np.zeros(frames, dtype=np.int64)
        self._attempted = np.zeros(frames, dtype=np.int64)
        self._epsilon = np.zeros((frames, channels), dtype=np.float64)
        self._filled = 0

    def record(
        self,
        sensing: int,
        throughput: float,
        collisions: int,
        n_active: int,
        attempted: int,
        epsilon: list[float],
    ) -> None:
        t = self._filled
        if t >= len(self._sensing):
            raise ValueError(f"recorder is full ({t} frames)")
        self._sensing[t] = sensing
        self._throughput[t] = throughput
        self._collisions[t] = collisions
        self._n_active[t] = n_active
        self._attempted[t] = attempted
        if epsilon:
            self._epsilon[t] = epsilon
        self._filled += 1

    def trace(self) -> MetricsTrace:
        """Frames recorded so far."""
        n = self._filled
        return MetricsTrace(
            sensing=self._sensing[:n].copy(),
            throughput=self._throughput[:n].copy(),
            collisions=self._collisions[:n].copy(),
            n_active=self._n_active[:n].copy(),
            attempted=self._attempted[:n].copy(),
            epsilon=self._epsilon[:n].copy(),
        )
