"""Quasistatic planar pushing: limit-surface dynamics and force-feedback control."""

__version__ = "0.1.0"

from .controller import Gains, PathFrame, PushController, force_angle, pushing_angle, pusher_velocity
from .dynamics import (
    LimitSurface,
    Mode,
    MotionResult,
    SeparatingStep,
    ZeroForceDirection,
    contact_map,
    recover_force,
    solve_motion,
    step,
    wrap_angle,
)
from .geometry import (
    Circle,
    ContactFrame,
    DegenerateShape,
    OutOfEdge,
    Polygon,
    SliderShape,
    contact_frame_at,
    max_support_distance,
    mean_support_distance,
    square,
)
from .sim import (
    ConfigError,
    Grid,
    Record,
    RunSummary,
    SimConfig,
    SimState,
    SweepResult,
    TerminalStatus,
    Trajectory,
    run,
    sweep,
    table1_grid,
)

__all__ = [
    "Gains",
    "PathFrame",
    "PushController",
    "force_angle",
    "pushing_angle",
    "pusher_velocity",
    "LimitSurface",
    "Mode",
    "MotionResult",
    "SeparatingStep",
    "ZeroForceDirection",
    "contact_map",
    "recover_force",
    "solve_motion",
    "step",
    "wrap_angle",
    "Circle",
    "ContactFrame",
    "DegenerateShape",
    "OutOfEdge",
    "Polygon",
    "SliderShape",
    "contact_frame_at",
    "max_support_distance",
    "mean_support_distance",
    "square",
    "ConfigError",
    "Grid",
    "Record",
    "RunSummary",
    "SimConfig",
    "SimState",
    "SweepResult",
    "TerminalStatus",
    "Trajectory",
    "run",
    "sweep",
    "table1_grid",
]
