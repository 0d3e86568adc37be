"""Frame-synchronous simulation of one policy over one replication.

One call to `Simulation.step()` runs frame t, i.e. the interval [t, t + 1):

  1. Devices draw new payload; idle devices with payload start waiting.
  2. The central node hill-climbs an assignment of waiting devices onto the
     channels no active device holds.
  3. Each assigned device either inherits the unused residue of a previous
     grant on its channel (no sensing) or senses at the frame start:
     Busy sends it back to wait with a zero value update, Free opens a
     transmission window of min(t_skip, payload) frames.
  4. Every channel's PU advances to t + 1. A channel carrying an SU frame
     collides if the PU is Active at any point of the frame, which ends the
     window. A clean frame can still be lost to channel error; the window
     carries on.
  5. Windows that completed or collided feed the value table, the residual
     estimator and the exploration controller. Under `deadline` demand,
     waiting devices that sent nothing lose one frame of demand.
  6. The frame's counters are recorded.

The six policies differ only in where t_skip comes from:

  proposed-fixed / -decay / -spsa  Dirichlet residual sample, eps from the schedule
  parametric-baseline              Gamma-exponential residual sample
  traditional                      1 (sense every frame)
  genie                            floor of the true residual OFF time

Every policy but traditional hands the unused part of a grant to the next
device assigned the channel.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray
from spectra_assign.hill_climb import hill_climb
from spectra_assign.value_table import ValueTable, update_value
from spectra_explore.policies import ExplorationController, ScheduleKind
from spectra_metrics.trace import MetricsTrace, TraceRecorder
from spectra_residual.dirichlet import ResidualModel, predict_residual, update_residual
from spectra_residual.parametric import (
    ParametricResidualModel,
    predict_residual_parametric,
    update_parametric,
)
from spectra_shared.config_models import ExperimentConfig, Policy, PuTrafficModel
from spectra_shared.seeding import layout_stream, replication_streams
from spectra_shared.sim_models import ReplicationTotals
from spectra_traffic.layout import draw_channel_models
from spectra_traffic.pu_process import PuProcess, advance_pu_to, residual_off_time, start_pu
from spectra_traffic.su import periodic_phase

from spectra_simcore.devices import DeviceState, Lifecycle, TxWindow
from spectra_simcore.events import (
    FrameEvent,
    SensedBusy,
    SensedFree,
    SkipGranted,
    TxCollision,
    TxDeclined,
    TxSuccess,
)
from spectra_simcore.radio import SenseResult, capacity_matrix, sense
from spectra_simcore.window import FrameOutcome, frame_throughput, transmit_frame

logger = logging.getLogger(__name__)

_SCHEDULES = {
    Policy.PROPOSED_FIXED: ScheduleKind.CONSTANT,
    Policy.PROPOSED_DECAY: ScheduleKind.DECAY,
    Policy.PROPOSED_SPSA: ScheduleKind.SPSA,
}

# Policies whose over-long grants leave a residue for the next device
_HANDS_ON_RESIDUE = frozenset({*_SCHEDULES, Policy.PARAMETRIC, Policy.GENIE})


def channel_models(config: ExperimentConfig, replication: int) -> list[PuTrafficModel]:
    """PU laws for one replication: listed in the config, or drawn from its ranges."""
    if config.traffic.pu_channels is not None:
        return list(config.traffic.pu_channels)
    return draw_channel_models(
        config.traffic.pu_randomization,
        config.channels,
        layout_stream(config.seed, replication),
    )


@dataclass
class _FrameCounters:
    sensings: int = 0
    throughput: float = 0.0
    failures: int = 0
    attempted: int = 0


@dataclass
class Simulation:
    config: ExperimentConfig
    policy: Policy
    replication: int
    capacity: NDArray[np.float64]
    channels: list[PuProcess]
    devices: list[DeviceState]
    values: ValueTable
    radio_rng: np.random.Generator
    learner_rng: np.random.Generator
    recorder: TraceRecorder
    residual: ResidualModel | None = None
    parametric: ParametricResidualModel | None = None
    exploration: ExplorationController | None = None
    residue_until: list[int] = field(default_factory=list)
    totals: ReplicationTotals = field(default_factory=ReplicationTotals)
    grants: int = 0
    terminal_events: int = 0
    t: int = 0

    @classmethod
    def create(
        cls,
        config: ExperimentConfig,
        policy: Policy,
        replication: int,
        *,
        pu_models: list[PuTrafficModel] | None = None,
        capacity: NDArray[np.float64] | None = None,
    ) -> Simulation:
        n_channels, n_devices = config.channels, config.devices
        streams = replication_streams(
            config.seed, replication, policy.index, n_channels, n_devices
        )
        models = pu_models if pu_models is not None else channel_models(config, replication)

        channels = [
            start_pu(
                model,
                streams.renewal[c],
                streams.retransmit[c],
                config.traffic.collision_policy,
            )
            for c, model in enumerate(models)
        ]
        devices = []
        for d in range(n_devices):
            traffic = config.device_traffic(d)
            rng = streams.devices[d]
            devices.append(
                DeviceState(id=d, traffic=traffic, rng=rng, phase=periodic_phase(traffic, rng))
            )

        residual = None
        parametric = None
        exploration = None
        if policy in _SCHEDULES:
            residual = ResidualModel.uniform(n_channels, config.residual)
            exploration = ExplorationController.build(
                _SCHEDULES[policy], config.exploration, n_channels, streams.learner
            )
        elif policy is Policy.PARAMETRIC:
            parametric = ParametricResidualModel.prior(n_channels, config.residual)

        return cls(
            config=config,
            policy=policy,
            replication=replication,
            capacity=capacity if capacity is not None else capacity_matrix(config),
            channels=channels,
            devices=devices,
            values=ValueTable.zeros(n_channels, n_devices, config.assign.kappa),
            radio_rng=streams.radio,
            learner_rng=streams.learner,
            recorder=TraceRecorder(config.horizon, n_channels if exploration is not None else 0),
            residual=residual,
            parametric=parametric,
            exploration=exploration,
            residue_until=[-1] * n_channels,
        )

    # ------------------------------------------------------------------
    # Frame loop
    # ------------------------------------------------------------------

    def run(self, horizon: int | None = None) -> MetricsTrace:
        frames = self.config.horizon if horizon is None else horizon
        for _ in range(frames):
            self.step()
        self.finish()
        return self.recorder.trace()

    def step(self) -> list[FrameEvent]:
        t = self.t
        events: list[FrameEvent] = []
        counters = _FrameCounters()

        # Step 1: payload arrivals
        for dev in self.devices:
            dev.generate(t)
        n_active = sum(1 for dev in self.devices if dev.pending > 0)

        # Step 2: assignment over channels no active device holds
        waiting = [dev.id for dev in self.devices if dev.lifecycle is Lifecycle.WAIT]
        if waiting:
            held = {dev.channel for dev in self.devices if dev.window is not None}
            pool = [c for c in range(self.config.channels) if c not in held]
            if pool:
                assignment = hill_climb(
                    self.values, waiting, pool, self.learner_rng, self.config.assign
                )
                # Step 3: residue hand-over or sensing
                for d, c in sorted(assignment.items()):
                    self.grants += 1
                    self._grant(self.devices[d], c, t, events, counters)

        # Step 4: PU advance; transmitting devices resolve their frame
        transmitting = {dev.channel: dev for dev in self.devices if dev.window is not None}
        for c, pu in enumerate(self.channels):
            dev = transmitting.get(c)
            if dev is None:
                advance_pu_to(pu, t + 1)
                continue
            outcome = transmit_frame(pu, t + 1, self.config.radio, self.radio_rng)
            counters.attempted += 1
            self._resolve_frame(dev, outcome, t, events, counters)

        # Step 5: unsent deadline demand expires
        if self.config.traffic.su_demand == "deadline":
            sent = {dev.id for dev in transmitting.values()}
            for dev in self.devices:
                if dev.pending > 0 and dev.window is None and dev.id not in sent:
                    dev.lapse()
                    self.totals.dropped_frames += 1

        # Step 6: record
        eps = self.exploration.iterates(t + 1) if self.exploration is not None else []
        self.recorder.record(
            sensing=counters.sensings,
            throughput=counters.throughput,
            collisions=counters.failures,
            n_active=n_active,
            attempted=counters.attempted,
            epsilon=eps,
        )
        self.totals.sensings += counters.sensings
        self.totals.throughput += counters.throughput
        self.totals.frame_failures += counters.failures
        self.totals.attempted_device_frames += counters.attempted
        self.t += 1
        return events

    def finish(self) -> ReplicationTotals:
        """Fold process-level counters into the totals and log the renewal audit."""
        self.totals.pu_notifications = sum(pu.notifications for pu in self.channels)
        truncations = 0
        if self.residual is not None:
            truncations = self.residual.truncations
        elif self.parametric is not None:
            truncations = self.parametric.truncations
        self.totals.residual_truncations = truncations
        if truncations:
            logger.info(
                f"{self.policy} rep={self.replication}: {truncations} residual samples "
                f"clamped at the support bound"
            )
        if logger.isEnabledFor(logging.DEBUG):
            for c, pu in enumerate(self.channels):
                head = ", ".join(f"{x:.4f}" for x in pu.renewal_log)
                logger.debug(f"rep={self.replication} channel={c} renewals=[{head}]")
        return self.totals

    def lifecycle_sets(self) -> dict[Lifecycle, set[int]]:
        sets: dict[Lifecycle, set[int]] = {state: set() for state in Lifecycle}
        for dev in self.devices:
            sets[dev.lifecycle].add(dev.id)
        return sets

    def open_windows(self) -> int:
        return sum(1 for dev in self.devices if dev.window is not None)

    # ------------------------------------------------------------------
    # Grants
    # ------------------------------------------------------------------

    def _residue(self, channel: int, t: int) -> int:
        until = self.residue_until[channel]
        return until - t + 1 if until >= t else 0

    def _grant(
        self,
        dev: DeviceState,
        channel: int,
        t: int,
        events: list[FrameEvent],
        counters: _FrameCounters,
    ) -> None:
        dev.lifecycle = Lifecycle.SENSE
        residue = self._residue(channel, t)
        if residue > 0:
            self.residue_until[channel] = -1
            frames = min(residue, dev.pending)
            events.append(SkipGranted(device=dev.id, channel=channel, t_skip=frames))
            dev.open_window(
                TxWindow(
                    channel=channel,
                    frames=frames,
                    started_at=t,
                    sensed=False,
                    residue=residue - frames,
                )
            )
            return

        counters.sensings += 1
        dev.sensings += 1
        pu = self.channels[channel]
        if sense(pu, self.config.radio, self.radio_rng) is SenseResult.BUSY:
            events.append(SensedBusy(device=dev.id, channel=channel))
            update_value(self.values, dev.id, channel, 0.0)
            dev.lifecycle = Lifecycle.WAIT
            self.terminal_events += 1
            return

        events.append(SensedFree(device=dev.id, channel=channel))
        t_skip = self._skip_budget(dev, channel, t)
        if t_skip < 1:
            events.append(TxDeclined(device=dev.id, channel=channel))
            dev.lifecycle = Lifecycle.WAIT
            self.terminal_events += 1
            return

        events.append(SkipGranted(device=dev.id, channel=channel, t_skip=t_skip))
        frames = min(t_skip, dev.pending)
        residue = t_skip - frames if self.policy in _HANDS_ON_RESIDUE else 0
        dev.open_window(
            TxWindow(channel=channel, frames=frames, started_at=t, sensed=True, residue=residue)
        )

    def _skip_budget(self, dev: DeviceState, channel: int, t: int) -> int:
        match self.policy:
            case Policy.TRADITIONAL:
                return 1
            case Policy.GENIE:
                return math.floor(residual_off_time(self.channels[channel]))
            case Policy.PARAMETRIC:
                assert self.parametric is not None
                return predict_residual_parametric(self.parametric, channel, self.learner_rng)
            case _:
                assert self.residual is not None and self.exploration is not None
                eps = self.exploration.epsilon(channel, t + 1)
                return predict_residual(self.residual, channel, eps, self.learner_rng)

    # ------------------------------------------------------------------
    # Window outcomes
    # ------------------------------------------------------------------

    def _resolve_frame(
        self,
        dev: DeviceState,
        outcome: FrameOutcome,
        t: int,
        events: list[FrameEvent],
        counters: _FrameCounters,
    ) -> None:
        window = dev.window
        if window is None:
            raise ValueError(f"device {dev.id} transmitted without a window")

        deadline = self.config.traffic.su_demand == "deadline"
        if outcome is FrameOutcome.PU:
            counters.failures += 1
            self.totals.pu_collisions += 1
            if deadline:
                dev.pending -= 1
            dev.close_window()
            events.append(
                TxCollision(
                    device=dev.id,
                    channel=window.channel,
                    frames_before_collision=window.done,
                    throughput=window.throughput,
                    lost=window.lost,
                )
            )
            self._learn(dev.id, window, t, failed=True)
        else:
            if outcome is FrameOutcome.OK:
                tp = frame_throughput(
                    float(self.capacity[dev.id, window.channel]),
                    self.config.radio,
                    carries_sensing=window.sensed and window.done == 0,
                )
                window.throughput += tp
                counters.throughput += tp
                dev.pending -= 1
            else:
                counters.failures += 1
                window.lost += 1
                if deadline:
                    dev.pending -= 1
            window.done += 1
            if window.done < window.frames:
                return
            dev.close_window()
            events.append(
                TxSuccess(
                    device=dev.id,
                    channel=window.channel,
                    frames=window.frames,
                    throughput=window.throughput,
                    lost=window.lost,
                )
            )
            self._learn(dev.id, window, t, failed=False)
            if window.residue > 0:
                self.residue_until[window.channel] = t + window.residue

        self.totals.windows += 1
        self.terminal_events += 1

    def _learn(self, device: int, window: TxWindow, t: int, *, failed: bool) -> None:
        channel = window.channel
        rate = 0.0 if failed else window.throughput / window.frames
        update_value(self.values, device, channel, rate)

        tau = max(window.done, 1) if failed else window.frames
        if self.residual is not None:
            update_residual(
                self.residual, channel, tau, now=t, started_at=window.started_at, closed=failed
            )
        if self.parametric is not None:
            update_parametric(self.parametric, channel, tau, closed=failed)
        if self.exploration is not None:
            self.exploration.observe(
                channel, self.learner_rng, sensed=window.sensed, collided=failed
            )
