"""Closed-loop pushing simulation and the robustness parameter sweep."""

import logging
import math
import random
from dataclasses import dataclass, field, replace
from multiprocessing import Pool
from typing import NamedTuple

import numpy as np

from .controller import Gains, PathFrame
from .dynamics import (
    MODE_NAMES,
    SEPARATING,
    STICKING,
    solve_contact,
    wrap_angle,
)
from .geometry import (
    Circle,
    Polygon,
    contact_frame_at,
    max_support_distance,
    mean_support_distance,
)

log = logging.getLogger(__name__)

CORNER_MARGIN = 1e-9
PUSH_MARGIN_WARN = 1e-12
TAIL_WINDOW = 60.0  # seconds of trailing trajectory audited for convergence


class ConfigError(ValueError):
    """Invalid simulation configuration."""


@dataclass(frozen=True)
class SimState:
    """Slider pose (world frame) plus the contact parameter along the edge."""

    x: float
    y: float
    phi: float
    s: float

    def contact_world(self, shape, edge_id=None):
        """World position of the contact point (= pusher position)."""
        c = contact_frame_at(shape, self.s, edge_id).c
        cp, sp = math.cos(self.phi), math.sin(self.phi)
        return np.array([self.x + cp * c[0] - sp * c[1], self.y + sp * c[0] + cp * c[1]])


@dataclass(frozen=True)
class SimConfig:
    shape: object
    f_max: float = 1.0
    tau_max: float = 0.0
    mu_c: float = 0.5
    gains: Gains = field(default_factory=lambda: Gains(0.1, 0.01, 0.1))
    path: PathFrame = field(default_factory=PathFrame.make)
    y0: float = 0.0
    s0: float = 0.0
    phi0: float = 0.0
    x0: float = 0.0
    dt: float = 0.01
    duration: float = 600.0
    force_noise: float = 0.0
    noise_seed: int = 0
    edge_id: int | None = None
    force_deadband: float = 1e-6

    def validate(self):
        if not isinstance(self.shape, (Polygon, Circle)):
            raise ConfigError("slider must be a Polygon or Circle")
        if not (self.f_max > 0.0):
            raise ConfigError("f_max must be > 0")
        if not (self.tau_max > 0.0):
            raise ConfigError("tau_max must be > 0")
        if not (self.mu_c >= 0.0):
            raise ConfigError("mu_c must be >= 0")
        if not (self.dt > 0.0):
            raise ConfigError("dt must be > 0")
        if not (self.duration > 0.0):
            raise ConfigError("duration must be > 0")
        if not (self.force_noise >= 0.0):
            raise ConfigError("force_noise must be >= 0")
        if not isinstance(self.gains, Gains):
            raise ConfigError("gains must be a Gains instance")
        if not isinstance(self.path, PathFrame):
            raise ConfigError("path must be a PathFrame instance")
        for key in ("y0", "s0", "phi0", "x0"):
            if not math.isfinite(getattr(self, key)):
                raise ConfigError(f"{key} must be finite")
        if isinstance(self.shape, Polygon):
            edge = self.edge_id if self.edge_id is not None else self.shape.default_edge_id()
            if not (0 <= edge < self.shape.n_edges):
                raise ConfigError(f"edge must be in [0, {self.shape.n_edges})")
            half = self.shape.edge_frame(edge)[6]
            if not (-half <= self.s0 <= half):
                raise ConfigError(f"s0 outside edge bounds [{-half}, {half}]")


class Record(NamedTuple):
    t: float
    x: float
    y: float
    phi: float
    s: float
    fx: float  # measured world-frame force driving this tick
    fy: float
    theta_f: float
    theta_p: float
    alpha: float
    mode: str


@dataclass(frozen=True)
class TerminalStatus:
    kind: str  # completed | contact_lost | corner_reached
    t: float | None = None
    continued: bool | None = None

    @staticmethod
    def completed():
        return TerminalStatus("completed")

    @staticmethod
    def contact_lost(t):
        return TerminalStatus("contact_lost", t=t)

    @staticmethod
    def corner_reached(t, continued=True):
        return TerminalStatus("corner_reached", t=t, continued=continued)


@dataclass(frozen=True)
class RunSummary:
    final_x: float
    final_y: float
    final_phi: float
    final_s: float
    final_yc: float
    max_abs_y: float
    slip_fraction: float
    stick_fraction: float
    steps: int
    corner_times: tuple
    max_ls_residual: float
    tail_rise: float
    separation_margin: float | None


@dataclass
class Trajectory:
    records: list
    status: TerminalStatus
    summary: RunSummary


def run(config, record=True):
    """Simulate one closed-loop push.

    Per tick: contact frame at s, world force from the previous tick's
    recovered force (one-tick delay; the first tick bootstraps with a zero
    force angle), control law, motion solve, Euler step. A separating solve
    terminates the run with contact lost at the following tick; leaving the
    contact edge clamps s just inside the corner and continues.
    """
    config.validate()
    shape = config.shape
    is_circle = isinstance(shape, Circle)
    if is_circle:
        rho = shape.radius
        edge_id = None
        s_min = -math.inf
        s_max = math.inf
        nx = ny = tx = ty = mx = my = 0.0
    else:
        edge_id = config.edge_id if config.edge_id is not None else shape.default_edge_id()
        mx, my, nx, ny, tx, ty, half = shape.edge_frame(edge_id)
        s_min, s_max = -half, half
        rho = 0.0

    m = config.f_max**-2
    mt = config.tau_max**-2
    mu = config.mu_c
    dt = config.dt
    deadband = config.force_deadband
    kf1 = config.gains.k_f + 1.0
    ky = config.gains.k_y
    speed = config.gains.speed
    ox, oy = float(config.path.origin[0]), float(config.path.origin[1])
    dx, dy = float(config.path.direction[0]), float(config.path.direction[1])

    noise = config.force_noise
    rng = random.Random(config.noise_seed) if noise > 0.0 else None

    x, y, phi, s = config.x0, config.y0, wrap_angle(config.phi0), config.s0
    n_steps = int(math.floor(config.duration / dt + 1e-9))

    records = [] if record else None
    fbx = fby = 0.0
    have_force = False
    theta_f = 0.0
    status = None
    corner_times = []
    slip = 0
    stick = 0
    max_res = 0.0
    max_abs_y = abs(y)
    tail_t0 = config.duration - TAIL_WINDOW
    tail_min = math.inf
    tail_rise = 0.0
    separation_margin = None
    ycb = 0.0
    count = 0

    for k in range(n_steps + 1):
        t = k * dt
        if is_circle:
            u = s / rho
            cu = math.cos(u)
            su = math.sin(u)
            cx = -rho * cu
            cy = rho * su
            nx = cu
            ny = -su
            tx = su
            ty = cu
        else:
            cx = mx + s * tx
            cy = my + s * ty
        cphi = math.cos(phi)
        sphi = math.sin(phi)
        cwx = x + cphi * cx - sphi * cy
        cwy = y + sphi * cx + cphi * cy

        if have_force:
            fwx = cphi * fbx - sphi * fby
            fwy = sphi * fbx + cphi * fby
            if rng is not None:
                fwx += rng.uniform(-noise, noise)
                fwy += rng.uniform(-noise, noise)
            pfx = dx * fwx + dy * fwy
            pfy = -dy * fwx + dx * fwy
            if math.hypot(pfx, pfy) >= deadband:
                theta_f = math.atan2(pfy, pfx)
        else:
            fwx = fwy = 0.0

        ycb = -dy * (cwx - ox) + dx * (cwy - oy)
        theta_p = kf1 * theta_f + ky * ycb
        ctp = math.cos(theta_p)
        stp = math.sin(theta_p)
        vwx = speed * (dx * ctp - dy * stp)
        vwy = speed * (dy * ctp + dx * stp)
        vpx = cphi * vwx + sphi * vwy
        vpy = -sphi * vwx + cphi * vwy

        code, alpha, wvx, wvy, om, _ex, _ey, fx, fy = solve_contact(
            m, mt, cx, cy, nx, ny, tx, ty, mu, vpx, vpy
        )

        if record:
            records.append(Record(t, x, y, phi, s, fwx, fwy, theta_f, theta_p, alpha, MODE_NAMES[code]))
        count += 1
        if t >= tail_t0 - 1e-12:
            ya = abs(ycb)
            if ya - tail_min > tail_rise:
                tail_rise = ya - tail_min
            if ya < tail_min:
                tail_min = ya
        ay = abs(y)
        if ay > max_abs_y:
            max_abs_y = ay

        if code == SEPARATING:
            separation_margin = nx * vpx + ny * vpy
            if separation_margin > PUSH_MARGIN_WARN:
                log.warning("separation with positive push margin %.3e at t=%.3f", separation_margin, t)
            status = TerminalStatus.contact_lost(t + dt)
            break
        if abs(nx * vpx + ny * vpy) < PUSH_MARGIN_WARN:
            log.debug("near-grazing push margin at t=%.3f", t)

        # audit that the recovered load sits on the limit surface
        k11 = m + mt * cy * cy
        k12 = -mt * cx * cy
        k22 = m + mt * cx * cx
        res = abs(k11 * fx * fx + 2.0 * k12 * fx * fy + k22 * fy * fy - 1.0)
        if res > max_res:
            max_res = res
        if code == STICKING:
            stick += 1
        else:
            slip += 1
        fbx = fx
        fby = fy
        have_force = True

        if k == n_steps:
            break
        x += dt * (cphi * wvx - sphi * wvy)
        y += dt * (sphi * wvx + cphi * wvy)
        phi = wrap_angle(phi + dt * om)
        s += dt * alpha
        if s > s_max:
            s = s_max - CORNER_MARGIN
            corner_times.append(t + dt)
        elif s < s_min:
            s = s_min + CORNER_MARGIN
            corner_times.append(t + dt)

    if status is None:
        if corner_times:
            status = TerminalStatus.corner_reached(corner_times[0], continued=True)
        else:
            status = TerminalStatus.completed()

    nonsep = slip + stick
    summary = RunSummary(
        final_x=x,
        final_y=y,
        final_phi=phi,
        final_s=s,
        final_yc=ycb,
        max_abs_y=max_abs_y,
        slip_fraction=slip / nonsep if nonsep else 0.0,
        stick_fraction=stick / nonsep if nonsep else 0.0,
        steps=count,
        corner_times=tuple(corner_times),
        max_ls_residual=max_res,
        tail_rise=tail_rise,
        separation_margin=separation_margin,
    )
    return Trajectory(records=records if record else [], status=status, summary=summary)


@dataclass(frozen=True)
class Grid:
    """Sweep grid over initial state, contact friction, and torsional load."""

    y0s: tuple
    s0s: tuple
    phi0s: tuple
    mu_cs: tuple
    tau_maxes: tuple

    def combos(self):
        """All combinations in lexicographic (table-row) order."""
        return [
            (y0, s0, phi0, mu, tau)
            for y0 in self.y0s
            for s0 in self.s0s
            for phi0 in self.phi0s
            for mu in self.mu_cs
            for tau in self.tau_maxes
        ]


def table1_grid(shape, f_max=1.0):
    """Default robustness grid: 3 values per axis, 3^5 combinations.

    Torsional loads cover a tenth of the uniform-pressure value, the
    uniform-pressure value, and pressure concentrated at the boundary.
    """
    tau_bar = f_max * mean_support_distance(shape)
    tau_hat = f_max * max_support_distance(shape)
    return Grid(
        y0s=(-0.4, 0.0, 0.4),
        s0s=(-0.4, 0.0, 0.4),
        phi0s=(-math.pi / 8, 0.0, math.pi / 8),
        mu_cs=(0.0, 0.5, 1.0),
        tau_maxes=(0.1 * tau_bar, tau_bar, tau_hat),
    )


@dataclass
class SweepResult:
    index: int
    y0: float
    s0: float
    phi0: float
    mu_c: float
    tau_max: float
    status: TerminalStatus
    summary: RunSummary
    records: list | None = None


def _sweep_worker(args):
    config, want_records = args
    traj = run(config, record=want_records)
    return traj.status, traj.summary, traj.records if want_records else None


def sweep(base, grid=None, jobs=1, trajectories=False):
    """Run every grid combination; yields results in deterministic grid order.

    Combinations are independent and may execute in parallel (jobs > 1); the
    output order is the lexicographic grid order regardless of scheduling.
    """
    if grid is None:
        grid = table1_grid(base.shape, base.f_max)
    combos = grid.combos()
    tasks = [
        (replace(base, y0=y0, s0=s0, phi0=phi0, mu_c=mu, tau_max=tau), trajectories)
        for (y0, s0, phi0, mu, tau) in combos
    ]
    for cfg, _ in tasks:
        cfg.validate()

    def results_iter():
        if jobs <= 1 or len(tasks) <= 1:
            for task in tasks:
                yield _sweep_worker(task)
        else:
            with Pool(processes=min(jobs, len(tasks))) as pool:
                yield from pool.imap(_sweep_worker, tasks, chunksize=1)

    for i, ((y0, s0, phi0, mu, tau), (status, summary, records)) in enumerate(
        zip(combos, results_iter())
    ):
        yield SweepResult(
            index=i,
            y0=y0,
            s0=s0,
            phi0=phi0,
            mu_c=mu,
            tau_max=tau,
            status=status,
            summary=summary,
            records=records,
        )
