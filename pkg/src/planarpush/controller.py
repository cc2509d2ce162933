"""Force-feedback pushing controller for straight-line path tracking."""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Gains:
    """Controller gains and the constant pushing speed."""

    k_f: float  # force-angle gain (dimensionless)
    k_y: float  # lateral-deviation gain (rad/m)
    speed: float  # commanded pusher speed (m/s)

    def __post_init__(self):
        if not (self.k_f > 0.0):
            raise ValueError("k_f must be > 0")
        if not (self.k_y > 0.0):
            raise ValueError("k_y must be > 0")
        if not (self.speed > 0.0):
            raise ValueError("speed must be > 0")


@dataclass(frozen=True, eq=False)
class PathFrame:
    """Desired straight-line path: origin point and unit direction in the world."""

    origin: np.ndarray
    direction: np.ndarray

    @staticmethod
    def make(origin=(0.0, 0.0), direction=(1.0, 0.0)):
        d = np.asarray(direction, dtype=float)
        norm = math.hypot(d[0], d[1])
        if norm == 0.0 or not math.isfinite(norm):
            raise ValueError("path direction must be a nonzero finite vector")
        return PathFrame(origin=np.asarray(origin, dtype=float), direction=d / norm)

    def to_path(self, p_world):
        """World point -> (along, lateral) path coordinates."""
        dx, dy = self.direction
        rx = p_world[0] - self.origin[0]
        ry = p_world[1] - self.origin[1]
        return np.array([dx * rx + dy * ry, -dy * rx + dx * ry])

    def vec_to_path(self, v_world):
        dx, dy = self.direction
        return np.array([dx * v_world[0] + dy * v_world[1], -dy * v_world[0] + dx * v_world[1]])

    def vec_to_world(self, v_path):
        dx, dy = self.direction
        return np.array([dx * v_path[0] - dy * v_path[1], dy * v_path[0] + dx * v_path[1]])


def force_angle(f_path, prev_theta_f, deadband=1e-6):
    """Polar angle of the measured force in the path frame.

    Forces below the deadband hold the previous angle, so a zero-force tick
    does not steer the pusher.
    """
    fx, fy = float(f_path[0]), float(f_path[1])
    if math.hypot(fx, fy) < deadband:
        return prev_theta_f
    return math.atan2(fy, fx)


def pushing_angle(theta_f, y_c_bar, gains):
    """Commanded pushing angle: overshoot the force angle and steer to the path."""
    return (gains.k_f + 1.0) * theta_f + gains.k_y * y_c_bar


def pusher_velocity(theta_p, gains, path):
    """World-frame pusher velocity at constant speed along the commanded angle."""
    v_path = (gains.speed * math.cos(theta_p), gains.speed * math.sin(theta_p))
    return path.vec_to_world(v_path)


class PushController:
    """Per-run controller state: holds the last valid force angle."""

    def __init__(self, gains, path, deadband=1e-6):
        self.gains = gains
        self.path = path
        self.deadband = deadband
        self.prev_theta_f = 0.0

    def command(self, f_world, contact_world):
        """One control tick: measured world force + contact point -> (theta_f, theta_p, v_world)."""
        theta_f = force_angle(self.path.vec_to_path(f_world), self.prev_theta_f, self.deadband)
        self.prev_theta_f = theta_f
        y_c = float(self.path.to_path(contact_world)[1])
        theta_p = pushing_angle(theta_f, y_c, self.gains)
        return theta_f, theta_p, pusher_velocity(theta_p, self.gains, self.path)
