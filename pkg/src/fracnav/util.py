"""Shared helpers: angle wrapping, clamping, DoF naming conventions."""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi

# DoF orderings used everywhere: planar agents are (x, y, yaw),
# spatial agents are (x, y, z, roll, pitch, yaw), each an independent channel.
PLANAR_DOFS = ("x", "y", "yaw")
SPATIAL_DOFS = ("x", "y", "z", "roll", "pitch", "yaw")
PLANAR_ANGULAR = (False, False, True)
SPATIAL_ANGULAR = (False, False, False, True, True, True)


def dof_names(kind: str) -> tuple[str, ...]:
    if kind == "planar":
        return PLANAR_DOFS
    if kind == "spatial":
        return SPATIAL_DOFS
    raise ValueError(f"unknown agent kind: {kind!r}")


def angular_mask(kind: str) -> tuple[bool, ...]:
    return PLANAR_ANGULAR if kind == "planar" else SPATIAL_ANGULAR


def wrap_angle(a: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    return math.pi - (math.pi - a) % TWO_PI


def clamp(v: float, lo: float, hi: float) -> float:
    return lo if v < lo else hi if v > hi else v
