import math
from dataclasses import replace

import numpy as np
import pytest

from planarpush.dynamics import (
    LimitSurface,
    Mode,
    SeparatingStep,
    ZeroForceDirection,
    contact_map,
    recover_force,
    solve_motion,
    step,
    wrap_angle,
)
from planarpush.geometry import contact_frame_at, square
from planarpush.oracle import motion_oracle, random_instance
from planarpush.sim import SimState

LS = LimitSurface(f_max=1.0, tau_max=0.3826)


def frame(s, mu):
    return contact_frame_at(square(1.0), s, mu_c=mu)


class TestContactMap:
    def test_contact_at_com(self):
        W = contact_map((0.0, 0.0))
        assert np.array_equal(W.T, [[1, 0, 0], [0, 1, 0]])

    def test_offset_contact(self):
        W = contact_map((-0.5, 0.2))
        assert np.array_equal(W.T, [[1, 0, -0.2], [0, 1, -0.5]])

    def test_unit_contact(self):
        W = contact_map((1.0, 1.0))
        assert np.array_equal(W.T, [[1, 0, -1], [0, 1, 1]])


class TestSolveMotion:
    def test_centered_sticking_push(self):
        r = solve_motion(LS, frame(0.0, 0.5), np.array([0.1, 0.0]))
        assert r.mode is Mode.STICKING
        assert r.alpha == 0.0
        assert np.allclose(r.twist, [0.1, 0.0, 0.0], atol=1e-15)
        assert np.allclose(r.force, [1.0, 0.0], atol=1e-12)
        assert np.allclose(r.v_o, [0.1, 0.0], atol=1e-15)

    def test_pulling_away_separates(self):
        r = solve_motion(LS, frame(0.0, 0.5), np.array([-0.1, 0.0]))
        assert r.mode is Mode.SEPARATING
        assert np.allclose(r.twist, 0.0)

    def test_frictionless_offset_contact(self):
        # zero-friction cone collapses to the normal ray; values pinned by the
        # direction-grid oracle
        cf = frame(0.4, 0.0)
        v_p = np.array([0.1, 0.0])
        r = solve_motion(LS, cf, v_p)
        tangential = float(r.eta @ cf.t_hat)
        assert abs(tangential) <= 1e-9 * np.linalg.norm(r.eta)
        assert r.alpha == pytest.approx(-0.06527782437889129, rel=1e-9)
        assert r.twist == pytest.approx(
            [0.04777774049688696, 0.0, -0.13055564875778258], rel=1e-9
        )
        feasible, alpha_o, twist_o = motion_oracle(LS, cf, v_p)
        assert feasible
        assert r.alpha == pytest.approx(alpha_o, abs=1e-6)
        assert np.allclose(r.twist, twist_o, atol=1e-6)

    def test_separation_iff_pulling(self):
        rng = np.random.default_rng(123)
        for _ in range(500):
            inst = random_instance(rng, pushing=False)
            assert solve_motion(inst.ls, inst.frame, inst.v_p).mode is Mode.SEPARATING
        for _ in range(500):
            inst = random_instance(rng, pushing=True)
            assert solve_motion(inst.ls, inst.frame, inst.v_p).mode is not Mode.SEPARATING

    def test_friction_cone_membership(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            inst = random_instance(rng)
            r = solve_motion(inst.ls, inst.frame, inst.v_p)
            n, t = inst.frame.n_hat, inst.frame.t_hat
            normal = float(n @ r.eta)
            assert normal >= 0.0
            assert abs(float(t @ r.eta)) <= inst.frame.mu_c * normal + 1e-9

    def test_limit_surface_residency_and_dissipation(self):
        rng = np.random.default_rng(8)
        for _ in range(300):
            inst = random_instance(rng)
            r = solve_motion(inst.ls, inst.frame, inst.v_p)
            W = contact_map(inst.frame.c)
            p = W @ r.force
            assert float(p @ inst.ls.M @ p) == pytest.approx(1.0, abs=1e-9)
            assert float(p @ r.twist) >= 0.0

    def test_sticking_matches_pusher_velocity(self):
        rng = np.random.default_rng(9)
        seen = 0
        for _ in range(500):
            inst = random_instance(rng)
            r = solve_motion(inst.ls, inst.frame, inst.v_p)
            if r.mode is Mode.STICKING:
                seen += 1
                assert r.alpha == 0.0
                assert np.allclose(r.v_o, inst.v_p, atol=1e-9)
        assert seen > 50

    def test_zero_friction_force_is_normal(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            inst = random_instance(rng)
            fr = replace_mu(inst.frame, 0.0)
            r = solve_motion(inst.ls, fr, inst.v_p)
            if r.mode is not Mode.SEPARATING:
                unit = r.eta / np.linalg.norm(r.eta)
                assert abs(float(fr.t_hat @ unit)) < 1e-9

    def test_mirror_symmetry(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            inst = random_instance(rng)
            r = solve_motion(inst.ls, inst.frame, inst.v_p)
            mirrored = mirror_frame(inst.frame)
            v_m = np.array([inst.v_p[0], -inst.v_p[1]])
            rm = solve_motion(inst.ls, mirrored, v_m)
            assert rm.mode in mirror_mode(r.mode)
            assert rm.alpha == pytest.approx(-r.alpha, abs=1e-9)
            assert rm.twist[0] == pytest.approx(r.twist[0], abs=1e-9)
            assert rm.twist[1] == pytest.approx(-r.twist[1], abs=1e-9)
            assert rm.twist[2] == pytest.approx(-r.twist[2], abs=1e-9)

    def test_sticking_dominates_when_feasible(self):
        # wide cone + centered contact: sticking candidate is feasible
        r = solve_motion(LS, frame(0.0, 2.0), np.array([0.1, 0.02]))
        assert r.mode is Mode.STICKING


def replace_mu(fr, mu):
    from planarpush.geometry import ContactFrame

    return ContactFrame(
        c=fr.c, n_hat=fr.n_hat, t_hat=fr.t_hat, mu_c=mu, edge_id=fr.edge_id, s_bounds=fr.s_bounds
    )


def mirror_frame(fr):
    from planarpush.geometry import ContactFrame

    c = np.array([fr.c[0], -fr.c[1]])
    n = np.array([fr.n_hat[0], -fr.n_hat[1]])
    return ContactFrame(
        c=c,
        n_hat=n,
        t_hat=np.array([-n[1], n[0]]),
        mu_c=fr.mu_c,
        edge_id=fr.edge_id,
        s_bounds=fr.s_bounds,
    )


def mirror_mode(mode):
    if mode is Mode.SLIDING_LEFT:
        return (Mode.SLIDING_RIGHT,)
    if mode is Mode.SLIDING_RIGHT:
        return (Mode.SLIDING_LEFT,)
    return (mode,)


class TestRecoverForce:
    def test_centered_contact(self):
        W = contact_map((-0.5, 0.0))
        f = recover_force(LS, W, np.array([0.1, 0.0]))
        assert np.allclose(f, [1.0, 0.0], atol=1e-12)
        p = W @ f
        assert float(p @ LS.M @ p) == pytest.approx(1.0, abs=1e-12)

    def test_zero_direction_rejected(self):
        with pytest.raises(ZeroForceDirection):
            recover_force(LS, contact_map((-0.5, 0.0)), np.array([0.0, 0.0]))

    def test_scale_invariance(self):
        W = contact_map((-0.3, 0.2))
        eta = np.array([0.4, -0.1])
        f1 = recover_force(LS, W, eta)
        f7 = recover_force(LS, W, 7.0 * eta)
        assert np.allclose(f1, f7, rtol=1e-14)


class TestStep:
    def _result(self, twist, alpha):
        from planarpush.dynamics import MotionResult

        return MotionResult(
            twist=np.asarray(twist, float),
            alpha=alpha,
            eta=np.array([1.0, 0.0]),
            force=np.array([1.0, 0.0]),
            v_o=np.array([0.0, 0.0]),
            mode=Mode.STICKING,
        )

    def test_translation(self):
        out = step(SimState(0, 0, 0, 0), self._result([0.1, 0, 0], 0.0), 0.01)
        assert (out.x, out.y, out.phi, out.s) == (0.001, 0.0, 0.0, 0.0)

    def test_rotated_body_frame(self):
        out = step(SimState(0, 0, math.pi / 2, 0), self._result([0.1, 0, 0], 0.0), 0.01)
        assert out.x == pytest.approx(0.0, abs=1e-18)
        assert out.y == pytest.approx(0.001)
        assert out.phi == math.pi / 2

    def test_slip_only(self):
        out = step(SimState(1, 2, 0, 0.1), self._result([0, 0, 0], 0.05), 0.01)
        assert (out.x, out.y, out.phi) == (1.0, 2.0, 0.0)
        assert out.s == pytest.approx(0.1005)

    def test_rejects_separating(self):
        from planarpush.dynamics import MotionResult

        res = MotionResult(
            twist=np.zeros(3),
            alpha=0.0,
            eta=np.zeros(2),
            force=np.zeros(2),
            v_o=np.zeros(2),
            mode=Mode.SEPARATING,
        )
        with pytest.raises(SeparatingStep):
            step(SimState(0, 0, 0, 0), res, 0.01)

    def test_rejects_nonpositive_dt(self):
        with pytest.raises(ValueError):
            step(SimState(0, 0, 0, 0), self._result([0, 0, 0], 0.0), 0.0)

    def test_phi_wraps(self):
        out = step(SimState(0, 0, math.pi - 0.001, 0), self._result([0, 0, 1.0], 0.0), 0.01)
        assert -math.pi < out.phi <= math.pi
        assert out.phi == pytest.approx(-math.pi + 0.009, abs=1e-12)


class TestWrapAngle:
    @pytest.mark.parametrize(
        "phi,expected",
        [(0.0, 0.0), (math.pi, math.pi), (-math.pi, math.pi), (3 * math.pi, math.pi), (1.5, 1.5)],
    )
    def test_values(self, phi, expected):
        assert wrap_angle(phi) == pytest.approx(expected)

    def test_in_range_is_identity(self):
        for phi in np.linspace(-math.pi + 1e-9, math.pi, 100):
            assert wrap_angle(phi) == phi


class TestLimitSurface:
    def test_matrix_layout(self):
        ls = LimitSurface(2.0, 0.5)
        assert np.allclose(ls.M, np.diag([0.25, 0.25, 4.0]))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            LimitSurface(0.0, 1.0)
        with pytest.raises(ValueError):
            LimitSurface(1.0, -0.1)
