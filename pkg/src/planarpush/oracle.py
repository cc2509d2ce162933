"""Brute-force reference for the contact-mode solver.

Scans force directions on a dense angular grid across the friction cone and
keeps the feasible minimum-slip solution. Deliberately independent of the
closed-form enumeration in `dynamics`.
"""

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import LimitSurface, solve_motion
from .geometry import ContactFrame


def motion_oracle(ls, frame, v_p, n_dirs=100001, refine=3, refine_dirs=4097):
    """Grid search over force directions inside the cone.

    Scans a uniform grid of force angles across the cone, solving the 2x2
    system beta * K e(psi) + alpha * t_hat = v_p at each angle and keeping
    the feasible (beta >= 0) minimum-|alpha| solution. The slip velocity is
    monotone in the angle on the feasible branch, so |alpha| is unimodal and
    the scan is then zoomed around the best grid point a few times to push
    the angular resolution far below the comparison tolerances.

    Returns (feasible, alpha, twist) or feasible=False if no grid direction
    admits a nonnegative force magnitude.
    """
    m = ls.f_max**-2
    mt = ls.tau_max**-2
    cx, cy = float(frame.c[0]), float(frame.c[1])
    n = np.asarray(frame.n_hat, dtype=float)
    t = np.asarray(frame.t_hat, dtype=float)
    mu = float(frame.mu_c)
    vn = float(n[0] * v_p[0] + n[1] * v_p[1])
    vt = float(t[0] * v_p[0] + t[1] * v_p[1])
    qx, qy = -cy, cx

    def scan(lo, hi, count):
        psi = np.linspace(lo, hi, count)
        ex = n[0] * np.cos(psi) + t[0] * np.sin(psi)
        ey = n[1] * np.cos(psi) + t[1] * np.sin(psi)
        # K e for each direction, K = m I + mt q q^T with q = rot90(c)
        qe = qx * ex + qy * ey
        kex = m * ex + mt * qx * qe
        key = m * ey + mt * qy * qe
        dn = n[0] * kex + n[1] * key
        dt_ = t[0] * kex + t[1] * key
        with np.errstate(divide="ignore", invalid="ignore"):
            beta = np.where(dn != 0.0, vn / dn, np.where(vn == 0.0, 0.0, np.inf))
        alpha = vt - beta * dt_
        feasible = (beta >= 0.0) & np.isfinite(beta) & np.isfinite(alpha)
        if not np.any(feasible):
            return None
        a2 = np.where(feasible, alpha * alpha, np.inf)
        i = int(np.argmin(a2))
        return psi, i, float(alpha[i]), float(beta[i]), float(ex[i]), float(ey[i])

    psi_max = math.atan(mu)
    best = scan(-psi_max, psi_max, n_dirs)
    if best is None:
        return False, 0.0, np.zeros(3)
    for _ in range(refine if psi_max > 0.0 else 0):
        psi, i, _, _, _, _ = best
        lo = psi[max(i - 1, 0)]
        hi = psi[min(i + 1, len(psi) - 1)]
        if hi <= lo:
            break
        nxt = scan(lo, hi, refine_dirs)
        if nxt is None:
            break
        best = nxt

    _, _, alpha, beta, ex, ey = best
    bx = beta * ex
    by = beta * ey
    twist = np.array([m * bx, m * by, mt * (qx * bx + qy * by)])
    return True, alpha, twist


@dataclass
class Instance:
    ls: LimitSurface
    frame: ContactFrame
    v_p: np.ndarray

    def to_dict(self):
        return {
            "f_max": self.ls.f_max,
            "tau_max": self.ls.tau_max,
            "mu_c": self.frame.mu_c,
            "c": self.frame.c.tolist(),
            "n_hat": self.frame.n_hat.tolist(),
            "v_p": self.v_p.tolist(),
        }


def random_instance(rng, pushing=True):
    """Random convex contact configuration.

    The inward normal tilts at most ~69 degrees from -c so that the contact
    admits a supporting line through the CoM (convex body). With pushing=True
    the commanded velocity has a positive inward component.
    """
    f_max = rng.uniform(0.5, 2.0)
    tau_max = rng.uniform(0.01, 1.0)
    mu = rng.uniform(0.0, 2.0)
    r = rng.uniform(0.1, 1.2)
    ang = rng.uniform(-math.pi, math.pi)
    c = np.array([r * math.cos(ang), r * math.sin(ang)])
    tilt = rng.uniform(-1.2, 1.2)
    ct, st = math.cos(ang + math.pi + tilt), math.sin(ang + math.pi + tilt)
    n = np.array([ct, st])
    t = np.array([-st, ct])
    gamma = rng.uniform(-math.pi / 2 + 0.05, math.pi / 2 - 0.05)
    if not pushing:
        gamma += math.pi
    speed = rng.uniform(0.01, 1.0)
    v_p = speed * (math.cos(gamma) * n + math.sin(gamma) * t)
    frame = ContactFrame(
        c=c, n_hat=n, t_hat=t, mu_c=mu, edge_id=None, s_bounds=(-math.inf, math.inf)
    )
    return Instance(ls=LimitSurface(f_max, tau_max), frame=frame, v_p=v_p)


def compare_instance(inst, n_dirs=100001, tol=1e-5, solve_fn=solve_motion):
    """Solver-vs-oracle deviation for one instance.

    Returns (ok, dev) where dev is the worst relative deviation over alpha
    and the three twist components (relative to max(1, |oracle value|)).
    """
    res = solve_fn(inst.ls, inst.frame, inst.v_p)
    feasible, alpha_o, twist_o = motion_oracle(inst.ls, inst.frame, inst.v_p, n_dirs)
    if not feasible:
        solver_sep = res.mode.value == "separating"
        return solver_sep, 0.0 if solver_sep else math.inf
    dev = abs(res.alpha - alpha_o) / max(1.0, abs(alpha_o))
    for i in range(3):
        dev = max(dev, abs(float(res.twist[i]) - float(twist_o[i])) / max(1.0, abs(float(twist_o[i]))))
    return dev <= tol, dev


def run_check(count, seed, n_dirs=100001, tol=1e-5, solve_fn=solve_motion):
    """Randomized solver-vs-oracle sweep; returns (max_dev, worst_instance, failures)."""
    rng = np.random.default_rng(seed)
    max_dev = 0.0
    worst = None
    failures = []
    for _ in range(count):
        inst = random_instance(rng)
        ok, dev = compare_instance(inst, n_dirs=n_dirs, tol=tol, solve_fn=solve_fn)
        if dev > max_dev:
            max_dev = dev
            worst = inst
        if not ok:
            failures.append((inst, dev))
    return max_dev, worst, failures
