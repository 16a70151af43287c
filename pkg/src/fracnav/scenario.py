"""Declarative scenario files: parsing, validation and serialization.

Grammar (line oriented): blank lines and `#` comments are ignored; a line
`key = v1 v2 ...` sets a key inside the current section; a bare line like
`agent ada`, `band`, `plan from 30` or `obstacle box` opens a nested
section closed by `end`.  Numeric vectors are space separated; per-DoF
vectors may be given as a single scalar, which broadcasts to all DoFs.
See README for the full key reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .tracker import RoaProfile, validate_profile

__all__ = [
    "Scenario", "AgentSpec", "BandSpec", "TrackerSpec", "BubbleSpec",
    "PlanSpec", "ObstacleSpec", "GateSpec", "ScenarioError", "Diagnostic",
    "load_scenario", "load_scenario_file", "serialize_scenario",
    "bundled_scenarios", "load_bundled",
]


@dataclass
class Diagnostic:
    line: int
    message: str

    def __str__(self):
        return f"line {self.line}: {self.message}"


class ScenarioError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


@dataclass
class BandSpec:
    k: list[float]
    m_d: list[float]
    a_max: list[float] | None = None   # default: agent a_max
    v_max: list[float] | None = None   # default: agent v_max
    mode: str = "plain_spring"


@dataclass
class TrackerSpec:
    k0: list[float]
    x0: list[float]
    xb: list[float]
    f_max: list[float]


@dataclass
class BubbleSpec:
    shape: str = "circle"
    d0: float = 0.0
    half_extents: list[float] | None = None
    k0: float = 0.0
    x0: float = 0.0
    xb: float = 0.0
    f_max: float = 0.0


@dataclass
class PlanSpec:
    start_time: float = 0.0
    r_trig: float = 0.2
    yaw_mode: str = "explicit"
    vias: list[list[float]] = field(default_factory=list)
    random_count: int = 0
    random_lo: list[float] | None = None
    random_hi: list[float] | None = None


@dataclass
class AgentSpec:
    name: str
    start: list[float]
    inertia: list[float]
    a_max: list[float]
    v_max: list[float]
    wrench_max: list[float]
    band: BandSpec = None
    tracker: TrackerSpec = None
    bubble: BubbleSpec | None = None
    plans: list[PlanSpec] = field(default_factory=list)
    xd_start: list[float] | None = None
    feedback_hz: float = 1000.0
    wrench_frame: str = "world"


@dataclass
class ObstacleSpec:
    shape: str                       # "wall" | "box"
    p0: list[float] = None           # wall endpoints
    p1: list[float] = None
    lo: list[float] = None           # box corners
    hi: list[float] = None
    track: list[tuple[float, list[float]]] = field(default_factory=list)


@dataclass
class GateSpec:
    name: str
    center: list[float]
    normal: str                      # "x" | "y"
    direction: float                 # +1 / -1 along the normal
    width: float                     # aperture horizontal extent
    height: float                    # aperture vertical extent
    panel_w: float
    panel_h: float
    thickness: float

    def frame_boxes(self) -> list[ObstacleSpec]:
        """Expand the gate into the four boxes surrounding the aperture."""
        cx, cy, cz = self.center
        th = self.thickness / 2.0
        w2, h2 = self.width / 2.0, self.height / 2.0
        pw2, ph2 = self.panel_w / 2.0, self.panel_h / 2.0
        if self.normal == "x":
            nlo, nhi = cx - th, cx + th
            def box(u0, u1, v0, v1):
                return ObstacleSpec("box", lo=[nlo, u0, v0], hi=[nhi, u1, v1])
            u, v = cy, cz
        else:
            nlo, nhi = cy - th, cy + th
            def box(u0, u1, v0, v1):
                return ObstacleSpec("box", lo=[u0, nlo, v0], hi=[u1, nhi, v1])
            u, v = cx, cz
        return [
            box(u - pw2, u - w2, v - ph2, v + ph2),
            box(u + w2, u + pw2, v - ph2, v + ph2),
            box(u - w2, u + w2, v - ph2, v - h2),
            box(u - w2, u + w2, v + h2, v + ph2),
        ]


@dataclass
class Scenario:
    name: str
    kind: str                        # "planar" | "spatial"
    duration: float
    dt: float
    seed: int = 0
    log_every: int = 1
    bounds: list[float] | None = None
    viscous: list[float] | None = None
    agents: list[AgentSpec] = field(default_factory=list)
    obstacles: list[ObstacleSpec] = field(default_factory=list)
    gates: list[GateSpec] = field(default_factory=list)

    @property
    def n_dofs(self) -> int:
        return 3 if self.kind == "planar" else 6

    @property
    def n_steps(self) -> int:
        return int(round(self.duration / self.dt))

    def with_overrides(self, feedback_hz=None, seed=None, duration=None) -> "Scenario":
        s = replace(self)
        if seed is not None:
            s.seed = seed
        if duration is not None:
            s.duration = duration
        if feedback_hz is not None:
            s.agents = [replace(a, feedback_hz=feedback_hz) for a in s.agents]
        return s


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_SCALAR_KEYS = {"duration", "dt", "log_every", "seed", "feedback_hz", "r_trig",
                "d0", "k0", "x0", "xb", "f_max", "width", "height", "thickness",
                "direction"}


class _Parser:
    def __init__(self, text: str):
        self.diags: list[Diagnostic] = []
        self.lines = text.splitlines()

    def fail(self, line: int, msg: str):
        self.diags.append(Diagnostic(line, msg))

    def floats(self, line: int, value: str, key: str) -> list[float]:
        out = []
        for tok in value.split():
            try:
                out.append(float(tok))
            except ValueError:
                self.fail(line, f"{key}: {tok!r} is not a number")
        return out

    def parse(self) -> Scenario:
        sc = Scenario(name="", kind="planar", duration=0.0, dt=0.0)
        stack: list[tuple[str, object]] = [("scenario", sc)]
        for lineno, raw in enumerate(self.lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line == "end":
                if len(stack) == 1:
                    self.fail(lineno, "unmatched 'end'")
                else:
                    stack.pop()
                continue
            if "=" in line:
                key, _, value = line.partition("=")
                self.key_value(lineno, stack, key.strip(), value.strip())
            else:
                self.open_section(lineno, stack, line.split())
        if len(stack) > 1:
            self.fail(len(self.lines), f"unclosed section {stack[-1][0]!r}")
        if self.diags:
            raise ScenarioError(self.diags)
        _validate(sc, self)
        if self.diags:
            raise ScenarioError(self.diags)
        return sc

    def open_section(self, lineno, stack, words):
        kind, ctx = stack[-1]
        head = words[0]
        sc = stack[0][1]
        if head == "agent" and kind == "scenario":
            if len(words) != 2:
                return self.fail(lineno, "agent section needs a name: 'agent <name>'")
            n = sc.n_dofs
            a = AgentSpec(words[1], [0.0] * n, [1.0] * n, [1.0] * n, [1.0] * n, [1.0] * n)
            sc.agents.append(a)
            stack.append(("agent", a))
        elif head == "viscous" and kind == "scenario":
            sc.viscous = []
            stack.append(("viscous", sc))
        elif head == "obstacle" and kind == "scenario":
            if len(words) < 2 or words[1] not in ("wall", "box", "gate"):
                return self.fail(lineno, "obstacle section needs a shape: wall, box or gate")
            if words[1] == "gate":
                name = words[2] if len(words) > 2 else f"gate{len(sc.gates) + 1}"
                g = GateSpec(name, [0.0, 0.0, 0.0], "x", 1.0, 1.0, 1.0, 2.0, 2.0, 0.1)
                sc.gates.append(g)
                stack.append(("gate", g))
            else:
                o = ObstacleSpec(words[1])
                sc.obstacles.append(o)
                stack.append(("obstacle", o))
        elif head == "band" and kind == "agent":
            ctx.band = BandSpec([], [])
            stack.append(("band", ctx.band))
        elif head == "tracker" and kind == "agent":
            ctx.tracker = TrackerSpec([], [], [], [])
            stack.append(("tracker", ctx.tracker))
        elif head == "bubble" and kind == "agent":
            ctx.bubble = BubbleSpec()
            stack.append(("bubble", ctx.bubble))
        elif head == "plan" and kind == "agent":
            t0 = 0.0
            if len(words) == 3 and words[1] == "from":
                try:
                    t0 = float(words[2])
                except ValueError:
                    return self.fail(lineno, f"plan from: {words[2]!r} is not a time")
            elif len(words) != 1:
                return self.fail(lineno, "plan section is 'plan' or 'plan from <t>'")
            p = PlanSpec(start_time=t0)
            ctx.plans.append(p)
            stack.append(("plan", p))
        else:
            self.fail(lineno, f"unknown section {' '.join(words)!r} inside {kind!r}")

    def key_value(self, lineno, stack, key, value):
        kind, ctx = stack[-1]
        handler = getattr(self, f"kv_{kind}", None)
        if handler is None or not handler(lineno, ctx, key, value):
            self.fail(lineno, f"unknown key {key!r} in section {kind!r}")

    def kv_scenario(self, lineno, sc, key, value) -> bool:
        if key == "name":
            sc.name = value
        elif key == "kind":
            if value not in ("planar", "spatial"):
                self.fail(lineno, f"kind must be planar or spatial, got {value!r}")
            else:
                sc.kind = value
        elif key in ("duration", "dt"):
            vals = self.floats(lineno, value, key)
            if vals:
                setattr(sc, key, vals[0])
        elif key == "seed":
            try:
                sc.seed = int(value)
            except ValueError:
                self.fail(lineno, f"seed: {value!r} is not an integer")
        elif key == "log_every":
            try:
                sc.log_every = int(value)
            except ValueError:
                self.fail(lineno, f"log_every: {value!r} is not an integer")
        elif key == "bounds":
            sc.bounds = self.floats(lineno, value, key)
        else:
            return False
        return True

    def kv_viscous(self, lineno, sc, key, value) -> bool:
        if key == "c":
            sc.viscous = self.floats(lineno, value, key)
            return True
        return False

    def kv_agent(self, lineno, a, key, value) -> bool:
        if key in ("start", "xd_start", "inertia", "a_max", "v_max", "wrench_max"):
            setattr(a, key, self.floats(lineno, value, key))
        elif key == "feedback_hz":
            vals = self.floats(lineno, value, key)
            if vals:
                a.feedback_hz = vals[0]
        elif key == "wrench_frame":
            if value not in ("world", "body"):
                self.fail(lineno, f"wrench_frame must be world or body, got {value!r}")
            else:
                a.wrench_frame = value
        else:
            return False
        return True

    def kv_band(self, lineno, b, key, value) -> bool:
        if key in ("k", "m_d", "a_max", "v_max"):
            setattr(b, key, self.floats(lineno, value, key))
        elif key == "mode":
            if value not in ("plain_spring", "fractal"):
                self.fail(lineno, f"band mode must be plain_spring or fractal, got {value!r}")
            else:
                b.mode = value
        else:
            return False
        return True

    def kv_tracker(self, lineno, t, key, value) -> bool:
        if key in ("k0", "x0", "xb", "f_max"):
            setattr(t, key, self.floats(lineno, value, key))
            return True
        return False

    def kv_bubble(self, lineno, b, key, value) -> bool:
        if key == "shape":
            if value not in ("circle", "rect"):
                self.fail(lineno, f"bubble shape must be circle or rect, got {value!r}")
            else:
                b.shape = value
        elif key == "half_extents":
            b.half_extents = self.floats(lineno, value, key)
        elif key in ("d0", "k0", "x0", "xb", "f_max"):
            vals = self.floats(lineno, value, key)
            if vals:
                setattr(b, key, vals[0])
        else:
            return False
        return True

    def kv_plan(self, lineno, p, key, value) -> bool:
        if key == "via":
            p.vias.append(self.floats(lineno, value, key))
        elif key == "r_trig":
            vals = self.floats(lineno, value, key)
            if vals:
                p.r_trig = vals[0]
        elif key == "yaw":
            if value not in ("explicit", "face"):
                self.fail(lineno, f"yaw mode must be explicit or face, got {value!r}")
            else:
                p.yaw_mode = value
        elif key == "random_vias":
            vals = self.floats(lineno, value, key)
            if len(vals) < 3 or len(vals) % 2 == 0:
                self.fail(lineno, "random_vias needs: count lo... hi...")
            else:
                half = (len(vals) - 1) // 2
                p.random_count = int(vals[0])
                p.random_lo = vals[1 : 1 + half]
                p.random_hi = vals[1 + half :]
        else:
            return False
        return True

    def kv_obstacle(self, lineno, o, key, value) -> bool:
        if key == "from" and o.shape == "wall":
            o.p0 = self.floats(lineno, value, key)
        elif key == "to" and o.shape == "wall":
            o.p1 = self.floats(lineno, value, key)
        elif key == "min" and o.shape == "box":
            o.lo = self.floats(lineno, value, key)
        elif key == "max" and o.shape == "box":
            o.hi = self.floats(lineno, value, key)
        elif key == "at":
            vals = self.floats(lineno, value, key)
            if len(vals) < 3:
                self.fail(lineno, "track point needs: t dx dy [dz]")
            else:
                o.track.append((vals[0], vals[1:]))
        else:
            return False
        return True

    def kv_gate(self, lineno, g, key, value) -> bool:
        if key == "center":
            g.center = self.floats(lineno, value, key)
        elif key == "normal":
            if value not in ("x", "y"):
                self.fail(lineno, f"gate normal must be x or y, got {value!r}")
            else:
                g.normal = value
        elif key in ("direction", "width", "height", "thickness"):
            vals = self.floats(lineno, value, key)
            if vals:
                setattr(g, key, vals[0])
        elif key == "panel":
            vals = self.floats(lineno, value, key)
            if len(vals) != 2:
                self.fail(lineno, "panel needs: width height")
            else:
                g.panel_w, g.panel_h = vals
        else:
            return False
        return True


def _broadcast(vec, n, lineno, key, parser):
    if len(vec) == 1:
        return vec * n
    if len(vec) != n:
        parser.fail(lineno, f"{key} needs 1 or {n} values, got {len(vec)}")
    return vec


def _validate(sc: Scenario, p: _Parser):
    line = 0  # validation diagnostics are structural, not positional
    if not sc.name:
        p.fail(line, "scenario name is required")
    if sc.dt <= 0:
        p.fail(line, f"dt must be positive, got {sc.dt}")
    if sc.duration < sc.dt:
        p.fail(line, f"duration must be at least dt, got {sc.duration}")
    if sc.log_every < 1:
        p.fail(line, "log_every must be >= 1")
    n = sc.n_dofs
    npos = 2 if sc.kind == "planar" else 3
    if sc.viscous is not None:
        sc.viscous = _broadcast(sc.viscous, n, line, "viscous.c", p)
        if any(v < 0 for v in sc.viscous):
            p.fail(line, "viscous coefficients must be >= 0")
    if sc.bounds is not None and len(sc.bounds) != 2 * npos:
        p.fail(line, f"bounds needs {2 * npos} values for a {sc.kind} world")
    if not sc.agents:
        p.fail(line, "scenario needs at least one agent")
    names = [a.name for a in sc.agents]
    if len(set(names)) != len(names):
        p.fail(line, f"agent names must be unique: {names}")

    for a in sc.agents:
        prefix = f"agent {a.name}"
        for key in ("start", "inertia", "a_max", "v_max", "wrench_max"):
            setattr(a, key, _broadcast(getattr(a, key), n, line, f"{prefix}.{key}", p))
        if a.xd_start is not None:
            a.xd_start = _broadcast(a.xd_start, n, line, f"{prefix}.xd_start", p)
        if any(v <= 0 for v in a.inertia):
            p.fail(line, f"{prefix}: inertia must be positive")
        if a.feedback_hz <= 0:
            p.fail(line, f"{prefix}: feedback_hz must be positive")
        if a.band is None:
            p.fail(line, f"{prefix}: band section is required")
        else:
            b = a.band
            b.k = _broadcast(b.k, n, line, f"{prefix}.band.k", p)
            b.m_d = _broadcast(b.m_d, n, line, f"{prefix}.band.m_d", p)
            b.a_max = _broadcast(b.a_max, n, line, f"{prefix}.band.a_max", p) if b.a_max else list(a.a_max)
            b.v_max = _broadcast(b.v_max, n, line, f"{prefix}.band.v_max", p) if b.v_max else list(a.v_max)
            if b.k and b.m_d and len(b.m_d) == n:
                for i in range(n):
                    if b.m_d[i] < a.inertia[i]:
                        p.fail(line, f"{prefix}: band.m_d[{i}] below agent inertia "
                                     f"({b.m_d[i]} < {a.inertia[i]})")
            if any(v <= 0 for v in b.k + b.m_d + b.a_max + b.v_max):
                p.fail(line, f"{prefix}: band gains and limits must be positive")
        if a.tracker is None:
            p.fail(line, f"{prefix}: tracker section is required")
        else:
            t = a.tracker
            for key in ("k0", "x0", "xb", "f_max"):
                setattr(t, key, _broadcast(getattr(t, key), n, line, f"{prefix}.tracker.{key}", p))
            if all(len(getattr(t, key)) == n for key in ("k0", "x0", "xb", "f_max")):
                for i in range(n):
                    rep = validate_profile(_ProfileView(t.k0[i], t.x0[i], t.xb[i], t.f_max[i]))
                    for msg in rep.problems:
                        p.fail(line, f"{prefix}: tracker DoF {i}: {msg}")
                    if t.f_max[i] > a.wrench_max[i]:
                        p.fail(line, f"{prefix}: tracker f_max[{i}] exceeds wrench_max "
                                     f"({t.f_max[i]} > {a.wrench_max[i]})")
        if a.bubble is not None:
            b = a.bubble
            if b.shape == "circle" and b.d0 <= 0:
                p.fail(line, f"{prefix}: Bubble.radius (d0) must be positive, got {b.d0}")
            if b.shape == "rect":
                if not b.half_extents or any(h <= 0 for h in b.half_extents):
                    p.fail(line, f"{prefix}: Bubble.half_extents must be positive")
            rep = validate_profile(_ProfileView(b.k0, b.x0, b.xb, b.f_max))
            for msg in rep.problems:
                p.fail(line, f"{prefix}: bubble profile: {msg}")
        if not a.plans:
            p.fail(line, f"{prefix}: at least one plan is required")
        times = [pl.start_time for pl in a.plans]
        if any(t1 <= t0 for t0, t1 in zip(times, times[1:])):
            p.fail(line, f"{prefix}: plan start times must be strictly increasing")
        for pl in a.plans:
            if pl.r_trig <= 0:
                p.fail(line, f"{prefix}: r_trig must be positive")
            if not pl.vias and pl.random_count <= 0:
                p.fail(line, f"{prefix}: plan needs via lines or random_vias")
            for v in pl.vias:
                if len(v) != n:
                    p.fail(line, f"{prefix}: via needs {n} values, got {len(v)}")
            if pl.random_count:
                if len(pl.random_lo or []) != npos or len(pl.random_hi or []) != npos:
                    p.fail(line, f"{prefix}: random_vias box needs {npos}+{npos} corners")

    for o in sc.obstacles:
        if o.shape == "wall":
            if sc.kind != "planar":
                p.fail(line, "wall obstacles are planar only")
            if not o.p0 or not o.p1 or len(o.p0) != 2 or len(o.p1) != 2:
                p.fail(line, "wall needs 2D 'from' and 'to' points")
        else:
            if not o.lo or not o.hi:
                p.fail(line, "box needs 'min' and 'max' corners")
            elif len(o.lo) != len(o.hi) or len(o.lo) != npos:
                p.fail(line, f"box corners need {npos} values each")
            elif any(h <= l for l, h in zip(o.lo, o.hi)):
                p.fail(line, "box max corner must exceed min corner")
        ts = [t for t, _ in o.track]
        if any(t1 <= t0 for t0, t1 in zip(ts, ts[1:])):
            p.fail(line, "obstacle track times must be strictly increasing")
    for g in sc.gates:
        if sc.kind != "spatial":
            p.fail(line, "gates are spatial only")
        if len(g.center) != 3:
            p.fail(line, f"gate {g.name}: center needs 3 values")
        if g.width <= 0 or g.height <= 0 or g.thickness <= 0:
            p.fail(line, f"gate {g.name}: width, height, thickness must be positive")
        if g.panel_w <= g.width or g.panel_h <= g.height:
            p.fail(line, f"gate {g.name}: panel must exceed the aperture")
        if g.direction not in (-1.0, 1.0):
            p.fail(line, f"gate {g.name}: direction must be +1 or -1")


class _ProfileView:
    """Duck-typed parameter holder for validate_profile."""

    def __init__(self, k0, x0, xb, f_max):
        self.k0, self.x0, self.xb, self.f_max = k0, x0, xb, f_max


def load_scenario(text: str) -> Scenario:
    """Parse and validate scenario text; raises ScenarioError with
    line-numbered diagnostics on any problem."""
    return _Parser(text).parse()


def load_scenario_file(path) -> Scenario:
    with open(path) as f:
        return load_scenario(f.read())


# ---------------------------------------------------------------------------
# serialization (canonical form; load(serialize(s)) == s)
# ---------------------------------------------------------------------------

def _fmt(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def serialize_scenario(sc: Scenario) -> str:
    out = [f"name = {sc.name}", f"kind = {sc.kind}",
           f"duration = {sc.duration!r}", f"dt = {sc.dt!r}", f"seed = {sc.seed}",
           f"log_every = {sc.log_every}"]
    if sc.bounds is not None:
        out.append(f"bounds = {_fmt(sc.bounds)}")
    if sc.viscous is not None:
        out += ["viscous", f"  c = {_fmt(sc.viscous)}", "end"]
    for a in sc.agents:
        out.append(f"agent {a.name}")
        out.append(f"  start = {_fmt(a.start)}")
        if a.xd_start is not None:
            out.append(f"  xd_start = {_fmt(a.xd_start)}")
        out.append(f"  inertia = {_fmt(a.inertia)}")
        out.append(f"  a_max = {_fmt(a.a_max)}")
        out.append(f"  v_max = {_fmt(a.v_max)}")
        out.append(f"  wrench_max = {_fmt(a.wrench_max)}")
        out.append(f"  feedback_hz = {a.feedback_hz!r}")
        if a.wrench_frame != "world":
            out.append(f"  wrench_frame = {a.wrench_frame}")
        b = a.band
        out += ["  band", f"    k = {_fmt(b.k)}", f"    m_d = {_fmt(b.m_d)}",
                f"    a_max = {_fmt(b.a_max)}", f"    v_max = {_fmt(b.v_max)}",
                f"    mode = {b.mode}", "  end"]
        t = a.tracker
        out += ["  tracker", f"    k0 = {_fmt(t.k0)}", f"    x0 = {_fmt(t.x0)}",
                f"    xb = {_fmt(t.xb)}", f"    f_max = {_fmt(t.f_max)}", "  end"]
        if a.bubble is not None:
            bu = a.bubble
            out.append("  bubble")
            out.append(f"    shape = {bu.shape}")
            if bu.shape == "circle":
                out.append(f"    d0 = {bu.d0!r}")
            else:
                out.append(f"    half_extents = {_fmt(bu.half_extents)}")
            out += [f"    k0 = {bu.k0!r}", f"    x0 = {bu.x0!r}",
                    f"    xb = {bu.xb!r}", f"    f_max = {bu.f_max!r}", "  end"]
        for pl in a.plans:
            head = "  plan" if pl.start_time == 0.0 else f"  plan from {pl.start_time!r}"
            out.append(head)
            out.append(f"    r_trig = {pl.r_trig!r}")
            out.append(f"    yaw = {pl.yaw_mode}")
            for v in pl.vias:
                out.append(f"    via = {_fmt(v)}")
            if pl.random_count:
                out.append(
                    f"    random_vias = {pl.random_count} "
                    f"{_fmt(pl.random_lo)} {_fmt(pl.random_hi)}"
                )
            out.append("  end")
        out.append("end")
    for o in sc.obstacles:
        out.append(f"obstacle {o.shape}")
        if o.shape == "wall":
            out += [f"  from = {_fmt(o.p0)}", f"  to = {_fmt(o.p1)}"]
        else:
            out += [f"  min = {_fmt(o.lo)}", f"  max = {_fmt(o.hi)}"]
        for t, off in o.track:
            out.append(f"  at = {t!r} {_fmt(off)}")
        out.append("end")
    for g in sc.gates:
        out += [f"obstacle gate {g.name}",
                f"  center = {_fmt(g.center)}",
                f"  normal = {g.normal}",
                f"  direction = {g.direction!r}",
                f"  width = {g.width!r}",
                f"  height = {g.height!r}",
                f"  panel = {g.panel_w!r} {g.panel_h!r}",
                f"  thickness = {g.thickness!r}",
                "end"]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# bundled scenarios
# ---------------------------------------------------------------------------

def bundled_scenarios() -> list[str]:
    from importlib import resources

    files = resources.files("fracnav").joinpath("scenarios")
    return sorted(p.name[:-4] for p in files.iterdir() if p.name.endswith(".scn"))


def load_bundled(name: str) -> Scenario:
    from importlib import resources

    path = resources.files("fracnav").joinpath("scenarios").joinpath(f"{name}.scn")
    return load_scenario(path.read_text())
