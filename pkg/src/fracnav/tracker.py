"""Region-of-attraction tracker: per-DoF fractal impedance with a
soft-saturated force profile, producing the control wrench that pulls an
agent to the desired state.

The profile is linear (stiffness k0) up to x0, then rises exponentially
toward its saturation force f_max with length constant b = (xb - x0)/20,
so it is within 0.1% of f_max by xb and exactly f_max beyond.  Because
the force saturates instead of diverging, the region of attraction is the
whole state space: convergence holds from arbitrarily large errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .fic import ChannelState, fic_force
from .util import wrap_angle

__all__ = ["RoaProfile", "ProfileReport", "validate_profile", "Tracker", "track_wrench"]


class RoaProfile:
    """Soft-saturated odd force profile over a scalar error."""

    __slots__ = ("k0", "x0", "xb", "f_max", "delta_f", "b", "f_sat")

    def __init__(self, k0: float, x0: float, xb: float, f_max: float):
        self.k0 = float(k0)
        self.x0 = float(x0)
        self.xb = float(xb)
        self.f_max = float(f_max)
        problems = validate_profile(self).problems
        if problems:
            raise ValueError("; ".join(problems))
        self.delta_f = self.f_max - self.k0 * self.x0
        self.b = (self.xb - self.x0) / 20.0
        self.f_sat = self.f_max

    def evaluate(self, err: float) -> float:
        a = abs(err)
        if a < self.x0:
            return self.k0 * err
        sign = 1.0 if err > 0 else -1.0
        if a >= self.xb:
            return sign * self.f_max
        return sign * (
            self.delta_f * (1.0 - math.exp(-(a - self.x0) / self.b)) + self.k0 * self.x0
        )

    def integral(self, err: float) -> float:
        """Closed-form ∫₀^|err| evaluate(s) ds."""
        a = abs(err)
        if a <= self.x0:
            return 0.5 * self.k0 * a * a
        lin = 0.5 * self.k0 * self.x0 * self.x0
        y = min(a, self.xb) - self.x0
        mid = (self.delta_f + self.k0 * self.x0) * y - self.delta_f * self.b * (
            1.0 - math.exp(-y / self.b)
        )
        if a <= self.xb:
            return lin + mid
        return lin + mid + self.f_max * (a - self.xb)

    def __repr__(self):
        return f"RoaProfile(k0={self.k0}, x0={self.x0}, xb={self.xb}, f_max={self.f_max})"

    def __eq__(self, other):
        if not isinstance(other, RoaProfile):
            return NotImplemented
        return (self.k0, self.x0, self.xb, self.f_max) == (
            other.k0,
            other.x0,
            other.xb,
            other.f_max,
        )


@dataclass
class ProfileReport:
    ok: bool
    problems: list[str]
    continuity_residual: float = math.nan
    fraction_at_xb: float = math.nan


def validate_profile(p) -> ProfileReport:
    """Check profile parameters; report the continuity residual at x0 and
    how close the nonlinear section gets to f_max just below xb (must be
    at least 99.9%)."""
    problems = []
    if not (p.k0 > 0):
        problems.append(f"k0 must be > 0 (got {p.k0})")
    if not (p.x0 > 0):
        problems.append(f"x0 must be > 0 (got {p.x0})")
    if not (p.xb > p.x0):
        problems.append(f"xb must exceed x0 (got xb={p.xb}, x0={p.x0})")
    if not (p.f_max >= p.k0 * p.x0):
        problems.append(
            f"f_max must be >= k0*x0 so delta_f >= 0 (got f_max={p.f_max}, k0*x0={p.k0 * p.x0})"
        )
    if problems:
        return ProfileReport(ok=False, problems=problems)

    delta_f = p.f_max - p.k0 * p.x0
    b = (p.xb - p.x0) / 20.0
    linear_end = p.k0 * p.x0
    nonlinear_start = delta_f * (1.0 - math.exp(0.0)) + p.k0 * p.x0
    residual = abs(linear_end - nonlinear_start)
    value_below_xb = delta_f * (1.0 - math.exp(-(p.xb - p.x0) / b)) + p.k0 * p.x0
    fraction = value_below_xb / p.f_max if p.f_max > 0 else 1.0
    report = ProfileReport(
        ok=True, problems=[], continuity_residual=residual, fraction_at_xb=fraction
    )
    if residual > 1e-12:
        report.ok = False
        report.problems.append(f"profile discontinuous at x0 (residual {residual})")
    if fraction < 0.999:
        report.ok = False
        report.problems.append(
            f"profile reaches only {fraction:.4%} of f_max below xb (needs 99.9%)"
        )
    return report


@dataclass
class Tracker:
    """One fractal impedance channel per DoF; angular DoFs wrap errors."""

    profiles: list[RoaProfile]
    angular: list[bool]
    channels: list[ChannelState] = field(default_factory=list)

    def __post_init__(self):
        if len(self.profiles) != len(self.angular):
            raise ValueError("profiles and angular mask must have equal length")
        if not self.channels:
            self.channels = [ChannelState() for _ in self.profiles]
        elif len(self.channels) != len(self.profiles):
            raise ValueError("channels must match profiles")

    def wrench(self, x_d, x) -> list[float]:
        """Advance all channels on the error x_d - x and return the wrench."""
        if len(x_d) != len(self.profiles) or len(x) != len(self.profiles):
            raise ValueError(
                f"pose dimension mismatch: tracker has {len(self.profiles)} DoF, "
                f"got x_d={len(x_d)}, x={len(x)}"
            )
        out = []
        for i, profile in enumerate(self.profiles):
            err = x_d[i] - x[i]
            if self.angular[i]:
                err = wrap_angle(err)
            ch = self.channels[i]
            ch.advance(err)
            out.append(fic_force(ch, profile, err))
        return out

    def stored_energy(self) -> float:
        """Total potential energy across channels, via closed-form integrals."""
        from .fic import Phase, convergence_energy

        total = 0.0
        for ch, profile in zip(self.channels, self.profiles):
            if ch.phase is Phase.DIVERGENCE:
                total += profile.integral(ch.prev_abs_err)
            else:
                total += convergence_energy(profile, ch.x_max, ch.prev_abs_err)
        return total


def track_wrench(tracker: Tracker, x_d, x) -> list[float]:
    """Control wrench pulling the agent at pose x toward x_d."""
    return tracker.wrench(x_d, x)
