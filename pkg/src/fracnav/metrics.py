"""Post-run analysis: trajectory logs, tracking RMSE with angular wrapping,
peak momentum / power of the planned stream, and a minimum-jerk reference
for point-to-point comparisons."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .util import dof_names

__all__ = [
    "TrajectoryLog",
    "rmse",
    "min_jerk",
    "peak_momentum",
    "peak_power",
    "compare_with_min_jerk",
    "MinJerkComparison",
]

CHANNELS = ("x_vp", "x_d", "x", "v", "w", "w_ext")
CSV_SCHEMA = "fracnav-log v1"


class TrajectoryLog:
    """Uniform-dt time series of all logged channels for every agent.

    data[agent][channel] is an (n_steps, n_dofs) float array; channels are
    x_vp, x_d, x, v, w, w_ext in that order.  dt is the grid spacing of
    consecutive rows (the sim dt times any logging decimation).
    """

    def __init__(self, dt: float, agents: dict[str, str]):
        if dt <= 0:
            raise ValueError("dt must be positive")
        self.dt = float(dt)
        self.kinds = dict(agents)  # name -> "planar" | "spatial"
        self.data: dict[str, dict[str, np.ndarray]] = {}
        self._rows: dict[str, list] = {name: [] for name in agents}
        self.n_steps = 0

    def append(self, agent: str, row: list[float]) -> None:
        """Append one flat row (all channels concatenated) for an agent."""
        self._rows[agent].append(row)

    def finish(self) -> None:
        for name, rows in self._rows.items():
            n = len(dof_names(self.kinds[name]))
            arr = np.asarray(rows, dtype=float).reshape(len(rows), len(CHANNELS) * n)
            self.data[name] = {
                ch: arr[:, i * n : (i + 1) * n] for i, ch in enumerate(CHANNELS)
            }
            self.n_steps = len(rows)
        self._rows = {}

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.n_steps) * self.dt

    def angular_mask(self, agent: str) -> np.ndarray:
        names = dof_names(self.kinds[agent])
        return np.array([d in ("roll", "pitch", "yaw") for d in names])

    # ---- CSV round trip -------------------------------------------------

    def header(self) -> list[str]:
        cols = ["t"]
        for name in self.data:
            for ch in CHANNELS:
                for dof in dof_names(self.kinds[name]):
                    cols.append(f"{name}.{ch}.{dof}")
        return cols

    def to_csv(self, path) -> None:
        cols = self.header()
        t = self.t
        blocks = [
            self.data[name][ch] for name in self.data for ch in CHANNELS
        ]
        with open(path, "w") as f:
            f.write(f"# {CSV_SCHEMA}\n")
            f.write(",".join(cols) + "\n")
            for i in range(self.n_steps):
                parts = [repr(float(t[i]))]
                for b in blocks:
                    row = b[i]
                    parts.extend(repr(float(v)) for v in row)
                f.write(",".join(parts) + "\n")

    @classmethod
    def from_csv(cls, path) -> "TrajectoryLog":
        with open(path) as f:
            first = f.readline().strip()
            if not first.startswith("#"):
                raise ValueError("missing schema comment line")
            header = f.readline().strip().split(",")
            body = np.loadtxt(f, delimiter=",", ndmin=2)
        if body.size == 0:
            raise ValueError("empty trajectory log")
        t = body[:, 0]
        dt = float(t[1] - t[0]) if len(t) > 1 else 1.0
        agents: dict[str, str] = {}
        layout: dict[str, dict[str, list[int]]] = {}
        for ci, col in enumerate(header[1:], start=1):
            name, ch, dof = col.split(".")
            kind = "spatial" if dof in ("z", "roll", "pitch") else agents.get(name, "planar")
            if name not in agents or kind == "spatial":
                agents[name] = kind
            layout.setdefault(name, {}).setdefault(ch, []).append(ci)
        log = cls(dt, agents)
        log.n_steps = body.shape[0]
        log._rows = {}
        for name, chans in layout.items():
            log.data[name] = {ch: body[:, idx] for ch, idx in chans.items()}
        return log


def _wrapped_error(ref: np.ndarray, actual: np.ndarray, angular: np.ndarray) -> np.ndarray:
    err = ref - actual
    if angular.any():
        wrapped = np.pi - np.mod(np.pi - err, 2.0 * np.pi)
        err = np.where(angular[None, :], wrapped, err)
    return err


def rmse(log: TrajectoryLog, ref_channel: str, actual_channel: str,
         angular_mask=None, agent: str | None = None) -> np.ndarray:
    """Per-DoF root-mean-square error between two channels of one agent."""
    if agent is None:
        agent = next(iter(log.data))
    ref = log.data[agent][ref_channel]
    actual = log.data[agent][actual_channel]
    if ref.shape != actual.shape or len(ref) == 0:
        raise ValueError("channels must be non-empty and of equal shape")
    angular = (
        np.asarray(angular_mask, dtype=bool)
        if angular_mask is not None
        else log.angular_mask(agent)
    )
    err = _wrapped_error(ref, actual, angular)
    return np.sqrt(np.mean(err * err, axis=0))


def min_jerk(x_start, x_end, duration: float, t):
    """Quintic point-to-point blend with zero boundary velocity/acceleration.

    Returns (position, velocity, acceleration); x_start/x_end may be
    scalars or vectors and t a scalar or array (broadcast over both).
    """
    if duration <= 0:
        raise ValueError("duration must be positive")
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0) or np.any(t_arr > duration):
        raise ValueError("t must lie in [0, duration]")
    x0 = np.asarray(x_start, dtype=float)
    x1 = np.asarray(x_end, dtype=float)
    d = x1 - x0
    tau = t_arr / duration
    if d.ndim > 0 and tau.ndim > 0:
        tau = tau[..., None]
    blend = 10.0 * tau**3 - 15.0 * tau**4 + 6.0 * tau**5
    dblend = (30.0 * tau**2 - 60.0 * tau**3 + 30.0 * tau**4) / duration
    ddblend = (60.0 * tau - 180.0 * tau**2 + 120.0 * tau**3) / duration**2
    return x0 + d * blend, d * dblend, d * ddblend


def _unwrap_channel(values: np.ndarray, angular: np.ndarray) -> np.ndarray:
    out = values.copy()
    for i in np.flatnonzero(angular):
        out[:, i] = np.unwrap(out[:, i])
    return out


def _derivative(values: np.ndarray, dt: float) -> np.ndarray:
    """Central differences, one-sided at the endpoints."""
    return np.gradient(values, dt, axis=0)


def peak_momentum(log: TrajectoryLog, inertia, agent: str | None = None,
                  channel: str = "x_d") -> float:
    """Largest Euclidean norm of M * d(channel)/dt over the run."""
    if agent is None:
        agent = next(iter(log.data))
    m = np.asarray(inertia, dtype=float)
    xd = _unwrap_channel(log.data[agent][channel], log.angular_mask(agent))
    vel = _derivative(xd, log.dt)
    return float(np.max(np.linalg.norm(vel * m[None, :], axis=1)))


def peak_power(log: TrajectoryLog, inertia, agent: str | None = None,
               channel: str = "x_d") -> float:
    """Largest |v^T M a| of the channel, with v, a by finite differences."""
    if agent is None:
        agent = next(iter(log.data))
    m = np.asarray(inertia, dtype=float)
    xd = _unwrap_channel(log.data[agent][channel], log.angular_mask(agent))
    vel = _derivative(xd, log.dt)
    acc = _derivative(vel, log.dt)
    return float(np.max(np.abs(np.sum(vel * m[None, :] * acc, axis=1))))


@dataclass
class MinJerkComparison:
    q_max_planned: float
    p_max_planned: float
    q_max_min_jerk: float
    p_max_min_jerk: float
    duration: float
    start: np.ndarray = field(repr=False, default=None)
    end: np.ndarray = field(repr=False, default=None)

    @property
    def q_ratio(self) -> float:
        return self.q_max_planned / self.q_max_min_jerk if self.q_max_min_jerk else math.nan

    @property
    def p_ratio(self) -> float:
        return self.p_max_planned / self.p_max_min_jerk if self.p_max_min_jerk else math.nan


def _hold_intervals(x_vp: np.ndarray, npos: int) -> list[tuple[int, int]]:
    """Index ranges [i0, i1) where the positional via target is constant."""
    pos = x_vp[:, :npos]
    changed = np.any(pos[1:] != pos[:-1], axis=1)
    boundaries = [0] + list(np.flatnonzero(changed) + 1) + [len(pos)]
    return [(a, b) for a, b in zip(boundaries, boundaries[1:]) if b > a]


def compare_with_min_jerk(log: TrajectoryLog, agent: str | None = None,
                          inertia=None, segment: int | None = None) -> MinJerkComparison:
    """Compare the planned x_d stream of one via-hold segment against a
    minimum-jerk move with the same endpoints and transit duration."""
    if agent is None:
        agent = next(iter(log.data))
    kind = log.kinds[agent]
    npos = 2 if kind == "planar" else 3
    if inertia is None:
        inertia = np.ones(len(dof_names(kind)))
    m = np.asarray(inertia, dtype=float)

    intervals = _hold_intervals(log.data[agent]["x_vp"], npos)
    if segment is None:
        # default: the longest hold (the principal point-to-point move)
        i0, i1 = max(intervals, key=lambda ab: ab[1] - ab[0])
    else:
        i0, i1 = intervals[segment]
    if i1 - i0 < 10:
        raise ValueError(f"segment has {i1 - i0} samples; need at least 10")

    xd = _unwrap_channel(log.data[agent]["x_d"], log.angular_mask(agent))[i0:i1]
    dt = log.dt
    start, end = xd[0].copy(), xd[-1].copy()
    dist = float(np.linalg.norm(end - start))
    if dist == 0.0:
        return MinJerkComparison(0.0, 0.0, 0.0, 0.0, 0.0, start, end)

    # transit ends when x_d settles onto its final value
    tol = 1e-9 * max(1.0, dist)
    moving = np.flatnonzero(np.max(np.abs(xd - end[None, :]), axis=1) > tol)
    n_transit = (int(moving[-1]) + 2) if len(moving) else len(xd)
    n_transit = min(n_transit, len(xd))
    duration = (n_transit - 1) * dt

    vel = _derivative(xd[:n_transit], dt)
    acc = _derivative(vel, dt)
    q_planned = float(np.max(np.linalg.norm(vel * m[None, :], axis=1)))
    p_planned = float(np.max(np.abs(np.sum(vel * m[None, :] * acc, axis=1))))

    ts = np.arange(n_transit) * dt
    _, mj_vel, mj_acc = min_jerk(start, end, duration, ts)
    q_mj = float(np.max(np.linalg.norm(mj_vel * m[None, :], axis=1)))
    p_mj = float(np.max(np.abs(np.sum(mj_vel * m[None, :] * mj_acc, axis=1))))
    return MinJerkComparison(q_planned, p_planned, q_mj, p_mj, duration, start, end)
