"""Ellipsoidal limit-surface dynamics: contact-mode solve, force recovery, state step."""

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

TWO_PI = 2.0 * math.pi


class ZeroForceDirection(ValueError):
    """Force recovery requested for a zero direction vector."""


class SeparatingStep(ValueError):
    """State integration requested for a separating contact."""


class Mode(Enum):
    STICKING = "sticking"
    SLIDING_LEFT = "sliding_left"
    SLIDING_RIGHT = "sliding_right"
    SEPARATING = "separating"


# integer codes used by the scalar kernel (hot loop avoids enum overhead)
STICKING, SLIDING_LEFT, SLIDING_RIGHT, SEPARATING = 0, 1, 2, 3
MODE_NAMES = ("sticking", "sliding_left", "sliding_right", "separating")
_MODE_FROM_CODE = (Mode.STICKING, Mode.SLIDING_LEFT, Mode.SLIDING_RIGHT, Mode.SEPARATING)


@dataclass(frozen=True)
class LimitSurface:
    """Maximum frictional load between slider and support plane.

    Admissible generalized loads p = (f_x, f_y, tau) satisfy p^T M p <= 1
    with M = diag(f_max^-2, f_max^-2, tau_max^-2); motion occurs on the
    boundary with the twist normal to it.
    """

    f_max: float
    tau_max: float

    def __post_init__(self):
        if not (self.f_max > 0.0):
            raise ValueError("f_max must be > 0")
        if not (self.tau_max > 0.0):
            raise ValueError("tau_max must be > 0")

    @property
    def M(self):
        i_f = self.f_max**-2
        return np.diag([i_f, i_f, self.tau_max**-2])


@dataclass(eq=False)
class MotionResult:
    """Solution of the quasistatic motion problem for one commanded push."""

    twist: np.ndarray  # (v_x, v_y, omega), body frame about the CoM
    alpha: float  # slip velocity along t_hat
    eta: np.ndarray  # force direction (QP scale)
    force: np.ndarray  # recovered contact force, body frame, Newtons
    v_o: np.ndarray  # slider velocity at the contact point
    mode: Mode


def wrap_angle(phi):
    """Wrap an angle to (-pi, pi]."""
    if -math.pi < phi <= math.pi:
        return phi
    return math.pi - ((math.pi - phi) % TWO_PI)


def contact_map(c):
    """Map W_c from contact force to generalized load: p = W_c f."""
    x, y = float(c[0]), float(c[1])
    return np.array([[1.0, 0.0], [0.0, 1.0], [-y, x]])


def solve_contact(m, mt, cx, cy, nx, ny, tx, ty, mu, vx, vy):
    """Scalar contact-mode solve.

    Args are the limit-surface weights m = f_max^-2 and mt = tau_max^-2, the
    body-frame contact point, inward normal, tangent, friction coefficient,
    and commanded body-frame pusher velocity. Returns
    (mode_code, alpha, w_x, w_y, omega, eta_x, eta_y, f_x, f_y).

    The minimum-slip program is solved exactly: the slip velocity is strictly
    monotone in the force angle across the cone (det K > 0), so the optimum
    is either zero slip (sticking) or on a cone edge.
    """
    vn = nx * vx + ny * vy
    if vn < 0.0:
        # pulling away from the object: no admissible contact force
        return (SEPARATING, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    vt = tx * vx + ty * vy

    # K = W_c^T M W_c expressed in the (n_hat, t_hat) contact basis
    qn = cx * ny - cy * nx
    qt = cx * nx + cy * ny
    a11 = m + mt * qn * qn
    a12 = mt * qn * qt
    a22 = m + mt * qt * qt

    # sticking candidate: eta = K^-1 v_p, feasible iff inside the cone
    det = a11 * a22 - a12 * a12
    en = (a22 * vn - a12 * vt) / det
    et = (a11 * vt - a12 * vn) / det
    tol = 1e-13 * (abs(en) + abs(et))
    if en >= -tol and abs(et) <= mu * en + tol:
        alpha = 0.0
        hn, ht = en, et
        code = STICKING
    else:
        # sliding candidates: eta on a cone edge (1, sigma*mu), beta >= 0
        best = None
        for sigma in (1.0, -1.0):
            d = a11 + sigma * mu * a12
            if d <= 0.0:
                continue
            alpha_c = vt - vn * (a12 + sigma * mu * a22) / d
            if best is None or alpha_c * alpha_c < best[0]:
                best = (alpha_c * alpha_c, alpha_c, vn / d, sigma)
            if mu == 0.0:
                break
        if best is None:
            return (SEPARATING, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
        _, alpha, beta, sigma = best
        hn, ht = beta, beta * sigma * mu
        if alpha == 0.0:
            code = STICKING
        elif alpha > 0.0:
            code = SLIDING_LEFT
        else:
            code = SLIDING_RIGHT

    ee = a11 * hn * hn + 2.0 * a12 * hn * ht + a22 * ht * ht  # eta^T K eta
    if ee <= 0.0:
        # zero transmitted force (grazing contact): treat as separated
        return (SEPARATING, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    ex = hn * nx + ht * tx
    ey = hn * ny + ht * ty
    scale = 1.0 / math.sqrt(ee)
    wx = m * ex
    wy = m * ey
    om = mt * (qn * hn + qt * ht)
    return (code, alpha, wx, wy, om, ex, ey, scale * ex, scale * ey)


def solve_motion(ls, frame, v_p):
    """Quasistatic motion for a commanded body-frame pusher velocity.

    Minimizes squared slip subject to the limit-surface flow rule, the
    contact velocity constraint, and the friction cone; infeasible pushes
    (pulling away) return a Separating result with zero motion.
    """
    m = ls.f_max**-2
    mt = ls.tau_max**-2
    code, alpha, wx, wy, om, ex, ey, fx, fy = solve_contact(
        m,
        mt,
        float(frame.c[0]),
        float(frame.c[1]),
        float(frame.n_hat[0]),
        float(frame.n_hat[1]),
        float(frame.t_hat[0]),
        float(frame.t_hat[1]),
        float(frame.mu_c),
        float(v_p[0]),
        float(v_p[1]),
    )
    twist = np.array([wx, wy, om])
    v_o = np.array([wx - float(frame.c[1]) * om, wy + float(frame.c[0]) * om])
    return MotionResult(
        twist=twist,
        alpha=alpha,
        eta=np.array([ex, ey]),
        force=np.array([fx, fy]),
        v_o=v_o,
        mode=_MODE_FROM_CODE[code],
    )


def recover_force(ls, W_c, eta):
    """Contact force scaled so the generalized load lies on the limit surface."""
    eta = np.asarray(eta, dtype=float)
    K = W_c.T @ ls.M @ W_c
    ee = float(eta @ K @ eta)
    if ee <= 0.0:
        raise ZeroForceDirection("force direction must be nonzero")
    return eta / math.sqrt(ee)


def step(state, result, dt):
    """Explicit Euler update of pose and contact parameter over one timestep."""
    if not (dt > 0.0):
        raise ValueError("dt must be > 0")
    if result.mode is Mode.SEPARATING:
        raise SeparatingStep("cannot integrate a separating contact")
    vx, vy, om = (float(result.twist[i]) for i in range(3))
    c = math.cos(state.phi)
    s = math.sin(state.phi)
    return replace(
        state,
        x=state.x + dt * (c * vx - s * vy),
        y=state.y + dt * (s * vx + c * vy),
        phi=wrap_angle(state.phi + dt * om),
        s=state.s + dt * float(result.alpha),
    )
