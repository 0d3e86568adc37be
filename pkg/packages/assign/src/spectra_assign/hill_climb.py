"""Random-restart hill climbing over device-channel assignments.

One call plans one frame's assignment for the devices waiting on a channel:

  1. Draw a uniformly random valid assignment Z_0 pairing min(|W|, |C|)
     waiting devices with distinct assignable channels.
  2. With probability eta, return Z_0 as is (exploration).
  3. Otherwise climb: propose random neighbours and accept any that does not
     lower the summed quality. Stop after `max_stall` consecutive proposals
     without a strict improvement, or after `iteration_cap` proposals. Every
     few stalled proposals the whole neighbourhood is scored at once; when no
     neighbour improves, the climb ends early.

Neighbourhood:
  - swap     exchange the channels of two assigned devices
  - move     move one assigned device to an unassigned channel
  - replace  hand one device's channel to a waiting device left out of Z

`replace` only exists when |W| > |C| and `move` only when |C| > |W|; together
with `swap` every valid assignment is reachable. Quality deltas are
evaluated per proposal in O(1).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import NDArray
from spectra_shared.config_models import AssignConfig

from spectra_assign.value_table import Assignment, ValueTable, quality

# Uniform draws requested from the generator per refill
_BATCH = 256


class Move(StrEnum):
    SWAP = "swap"
    MOVE = "move"
    REPLACE = "replace"


@dataclass(frozen=True)
class ClimbOutcome:
    assignment: Assignment
    qualities: list[float]  # quality after each accepted proposal, Z_0 first
    proposals: int


def max_stall_for(cfg: AssignConfig, waiting: int, channels: int) -> int:
    return cfg.max_stall if cfg.max_stall is not None else 5 * waiting * channels


def random_assignment(
    waiting: Sequence[int], channels: Sequence[int], rng: np.random.Generator
) -> Assignment:
    """Uniformly random injective pairing of min(|W|, |C|) devices and channels."""
    n = min(len(waiting), len(channels))
    devices = rng.permutation(len(waiting))[:n]
    chans = rng.permutation(len(channels))[:n]
    return {waiting[int(i)]: channels[int(j)] for i, j in zip(devices, chans, strict=True)}


def improvable(
    values: NDArray[np.float64],
    devices: Sequence[int],
    chans: Sequence[int],
    idle_devices: Sequence[int],
    free_channels: Sequence[int],
) -> bool:
    """Whether any single swap, move or replace strictly raises the quality."""
    own = values[chans, devices]
    if len(devices) >= 2:
        cross = values[np.ix_(chans, devices)]  # cross[j, i] = v[c_j, d_i]
        if np.any(cross + cross.T - own[None, :] - own[:, None] > 0.0):
            return True
    if free_channels and np.any(values[np.ix_(free_channels, devices)] - own[None, :] > 0.0):
        return True
    return bool(idle_devices) and bool(
        np.any(values[np.ix_(chans, idle_devices)] - own[:, None] > 0.0)
    )


def climb(
    table: ValueTable,
    start: Assignment,
    waiting: Sequence[int],
    channels: Sequence[int],
    rng: np.random.Generator,
    max_stall: int,
    iteration_cap: int,
) -> ClimbOutcome:
    """Climb from `start`; the accepted quality sequence is non-decreasing."""
    devices = list(start)
    chans = [start[d] for d in devices]
    idle_devices = [d for d in waiting if d not in start]
    used = set(chans)
    free_channels = [c for c in channels if c not in used]
    n = len(devices)

    moves: list[Move] = []
    if n >= 2:
        moves.append(Move.SWAP)
    if n >= 1 and free_channels:
        moves.append(Move.MOVE)
    if n >= 1 and idle_devices:
        moves.append(Move.REPLACE)

    current = quality(table, start)
    qualities = [current]
    if not moves:
        return ClimbOutcome(assignment=dict(start), qualities=qualities, proposals=0)

    v = table.values.tolist()
    check_every = n + len(free_channels) + len(idle_devices)
    stall = 0
    proposals = 0
    optimal = False
    while not optimal and stall < max_stall and proposals < iteration_cap:
        for r0, r1, r2 in rng.random((_BATCH, 3)).tolist():
            proposals += 1
            move = moves[int(r0 * len(moves))]
            i = int(r1 * n)
            di, ci = devices[i], chans[i]
            if move is Move.SWAP:
                j = int(r2 * (n - 1))
                if j >= i:
                    j += 1
                dj, cj = devices[j], chans[j]
                delta = v[cj][di] + v[ci][dj] - v[ci][di] - v[cj][dj]
                if delta >= 0.0:
                    chans[i], chans[j] = cj, ci
            elif move is Move.MOVE:
                k = int(r2 * len(free_channels))
                f = free_channels[k]
                delta = v[f][di] - v[ci][di]
                if delta >= 0.0:
                    chans[i], free_channels[k] = f, ci
            else:
                k = int(r2 * len(idle_devices))
                u = idle_devices[k]
                delta = v[ci][u] - v[ci][di]
                if delta >= 0.0:
                    devices[i], idle_devices[k] = u, di

            if delta >= 0.0:
                current += delta
                qualities.append(current)
            stall = 0 if delta > 0.0 else stall + 1
            if stall >= max_stall or proposals >= iteration_cap:
                break
            if stall % check_every == 0 and stall > 0:
                optimal = not improvable(
                    table.values, devices, chans, idle_devices, free_channels
                )
                if optimal:
                    break

    return ClimbOutcome(
        assignment=dict(zip(devices, chans, strict=True)),
        qualities=qualities,
        proposals=proposals,
    )


def hill_climb(
    table: ValueTable,
    waiting: Sequence[int],
    channels: Sequence[int],
    rng: np.random.Generator,
    cfg: AssignConfig,
) -> Assignment:
    """Plan this frame's assignment for `waiting` devices over assignable `channels`.

    Devices beyond the number of channels stay unassigned.
    """
    if not waiting:
        raise ValueError("hill_climb needs at least one waiting device")
    if not channels:
        return {}

    start = random_assignment(waiting, channels, rng)
    if rng.random() < cfg.eta:
        return start

    max_stall = max_stall_for(cfg, len(waiting), len(channels))
    outcome = climb(
        table,
        start,
        waiting,
        channels,
        rng,
        max_stall=max_stall,
        iteration_cap=cfg.iteration_cap_factor * max_stall,
    )
    return outcome.assignment
