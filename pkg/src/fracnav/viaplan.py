"""Via-point plans: proximity-triggered target advancement, face-target yaw,
and time-scheduled plan swaps (formation changes)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .util import wrap_angle

__all__ = ["ViaPlan", "ViaSequencer", "face_target_yaw"]

YAW_DEADBAND = 1e-3  # m; below this the face-target yaw holds its last value


def face_target_yaw(pose, via, previous: float = 0.0) -> float:
    """Yaw aligning the agent with the vector to the via point (planar part)."""
    dx = via[0] - pose[0]
    dy = via[1] - pose[1]
    if math.hypot(dx, dy) <= YAW_DEADBAND:
        return previous
    return wrap_angle(math.atan2(dy, dx))


@dataclass
class ViaPlan:
    """Ordered via poses for one agent.

    yaw_mode "explicit" uses the yaw stored in each via pose; "face" points
    the yaw along the line from the agent to the current via.  schedule
    holds (time, vias) pairs that replace the remaining plan when reached.
    """

    vias: list[list[float]]
    r_trig: float = 0.2
    yaw_mode: str = "explicit"
    schedule: list[tuple[float, list[list[float]]]] = field(default_factory=list)

    def __post_init__(self):
        if not self.vias:
            raise ValueError("via plan must not be empty")
        if self.r_trig <= 0:
            raise ValueError("trigger radius must be positive")
        if self.yaw_mode not in ("explicit", "face"):
            raise ValueError(f"unknown yaw mode: {self.yaw_mode!r}")
        times = [t for t, _ in self.schedule]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("schedule times must be strictly increasing")
        for t, vias in self.schedule:
            if not vias:
                raise ValueError("scheduled plan swap must not be empty")


class ViaSequencer:
    """Single-writer cursor over a ViaPlan.

    The cursor only moves forward; reaching within r_trig of the current via
    issues the next one (repeatedly, so an oversized r_trig degenerates to
    the final target at once).  The last via is held forever.
    """

    __slots__ = ("plan", "vias", "cursor", "advances", "_next_swap", "_last_yaw", "_pos_idx")

    def __init__(self, plan: ViaPlan, n_dofs: int):
        self.plan = plan
        self.vias = plan.vias
        self.cursor = 0
        self.advances = 0
        self._next_swap = 0
        self._last_yaw = plan.vias[0][-1]
        # positional DoFs are everything before the angular block
        self._pos_idx = 2 if n_dofs == 3 else 3

    def current_target(self, pose, t: float) -> list[float]:
        """Return the active via pose for an agent at `pose` and time `t`."""
        sched = self.plan.schedule
        while self._next_swap < len(sched) and t >= sched[self._next_swap][0]:
            self.vias = sched[self._next_swap][1]
            self.cursor = 0
            self._next_swap += 1
        npos = self._pos_idx
        while self.cursor < len(self.vias) - 1:
            via = self.vias[self.cursor]
            d2 = sum((via[i] - pose[i]) ** 2 for i in range(npos))
            if d2 >= self.plan.r_trig**2:
                break
            self.cursor += 1
            self.advances += 1
        via = self.vias[self.cursor]
        if self.plan.yaw_mode == "face":
            yaw = face_target_yaw(pose, via, self._last_yaw)
            self._last_yaw = yaw
            via = list(via)
            via[-1] = yaw
            if len(via) == 6:
                via[3] = 0.0
                via[4] = 0.0
            return via
        return list(via)

    def reached_final(self) -> bool:
        return self._next_swap >= len(self.plan.schedule) and self.cursor == len(self.vias) - 1
