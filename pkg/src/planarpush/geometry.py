"""Slider shapes, boundary contact frames, and support-friction distances."""

import math
from dataclasses import dataclass

import numpy as np

# 32-point Gauss-Legendre rule mapped to [0, 1]; used for the support integral.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(32)
_GL_U = 0.5 * (_GL_NODES + 1.0)
_GL_W = 0.5 * _GL_WEIGHTS


class DegenerateShape(ValueError):
    """Shape has no usable support area."""


class OutOfEdge(ValueError):
    """Contact parameter lies outside the edge's admissible interval."""


class Polygon:
    """Convex slider outline with the area centroid at the body-frame origin.

    Vertices are stored counter-clockwise and re-centered on the centroid at
    construction, so the center of mass (= center of friction under uniform
    support friction) is always the origin.
    """

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise ValueError("polygon needs at least 3 two-dimensional vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("polygon vertices must be finite")
        nxt = np.roll(v, -1, axis=0)
        shoelace = v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]
        area2 = float(np.sum(shoelace))
        if area2 < 0.0:
            v = v[::-1]
            nxt = np.roll(v, -1, axis=0)
            shoelace = v[:, 0] * nxt[:, 1] - nxt[:, 0] * v[:, 1]
            area2 = -area2
        scale = max(1.0, float(np.max(np.abs(v)))) ** 2
        if area2 <= 1e-12 * scale:
            raise DegenerateShape("polygon area is zero")
        edges = nxt - v
        cross = edges[:, 0] * np.roll(edges[:, 1], -1) - edges[:, 1] * np.roll(edges[:, 0], -1)
        if np.any(cross <= 0.0):
            raise ValueError("polygon must be strictly convex with counter-clockwise winding")

        cx = float(np.sum((v[:, 0] + nxt[:, 0]) * shoelace) / (3.0 * area2))
        cy = float(np.sum((v[:, 1] + nxt[:, 1]) * shoelace) / (3.0 * area2))
        v = v - [cx, cy]
        v.flags.writeable = False
        self.vertices = v
        self.area = 0.5 * area2

        # Per-edge contact charts: c(s) = midpoint + s * t_hat, t_hat = rot90(n_hat),
        # so ds integrates the tangential slip directly.
        frames = []
        n = v.shape[0]
        for i in range(n):
            v0 = v[i]
            v1 = v[(i + 1) % n]
            d = v1 - v0
            length = float(math.hypot(d[0], d[1]))
            dx, dy = d[0] / length, d[1] / length
            nx, ny = -dy, dx  # inward normal (CCW winding keeps interior on the left)
            mid = 0.5 * (v0 + v1)
            frames.append((float(mid[0]), float(mid[1]), nx, ny, -dx, -dy, 0.5 * length))
        self._edge_frames = tuple(frames)

    @property
    def n_edges(self):
        return len(self._edge_frames)

    def edge_frame(self, edge_id):
        """Scalar chart (mid_x, mid_y, n_x, n_y, t_x, t_y, half_length) for an edge."""
        return self._edge_frames[edge_id]

    def default_edge_id(self):
        """Edge whose outward normal is closest to the -x body axis."""
        # outward = -n_hat, so maximize n_x
        return max(range(self.n_edges), key=lambda i: (self._edge_frames[i][2], -i))

    def __repr__(self):
        return f"Polygon({self.vertices.tolist()})"


class Circle:
    """Circular slider of radius rho, centered on the body-frame origin."""

    def __init__(self, radius):
        radius = float(radius)
        if not (radius > 0.0) or not math.isfinite(radius):
            raise DegenerateShape("circle radius must be > 0")
        self.radius = radius

    def __repr__(self):
        return f"Circle({self.radius})"


SliderShape = Polygon | Circle


def square(side):
    """Axis-aligned square slider of the given side length."""
    h = 0.5 * float(side)
    if not (h > 0.0):
        raise DegenerateShape("square side must be > 0")
    return Polygon([(h, -h), (h, h), (-h, h), (-h, -h)])


@dataclass(frozen=True, eq=False)
class ContactFrame:
    """Contact point and friction cone geometry in the slider body frame.

    n_hat points into the slider (the direction of an admissible pushing
    force); t_hat = rot90(n_hat) is the slip direction, and the contact
    parameter s increases along t_hat.
    """

    c: np.ndarray
    n_hat: np.ndarray
    t_hat: np.ndarray
    mu_c: float
    edge_id: int | None
    s_bounds: tuple[float, float]


def contact_frame_at(shape, s, edge_id=None, mu_c=0.0):
    """Contact frame at arc-length parameter s along the slider boundary.

    Polygons measure s from the edge midpoint; the default edge is the one
    facing the -x body axis. Circles measure s from the body point (-rho, 0),
    any real value (periodic).
    """
    s = float(s)
    if isinstance(shape, Circle):
        rho = shape.radius
        u = s / rho
        cu, su = math.cos(u), math.sin(u)
        return ContactFrame(
            c=np.array([-rho * cu, rho * su]),
            n_hat=np.array([cu, -su]),
            t_hat=np.array([su, cu]),
            mu_c=float(mu_c),
            edge_id=None,
            s_bounds=(-math.inf, math.inf),
        )
    if edge_id is None:
        edge_id = shape.default_edge_id()
    mx, my, nx, ny, tx, ty, half = shape.edge_frame(edge_id)
    if not (-half <= s <= half):
        raise OutOfEdge(f"s={s} outside edge {edge_id} bounds [{-half}, {half}]")
    return ContactFrame(
        c=np.array([mx + s * tx, my + s * ty]),
        n_hat=np.array([nx, ny]),
        t_hat=np.array([tx, ty]),
        mu_c=float(mu_c),
        edge_id=edge_id,
        s_bounds=(-half, half),
    )


def mean_support_distance(shape):
    """Area-averaged distance from the center of mass over the support area.

    Used to derive the maximum torsional load for a uniform pressure
    distribution. Polygons are fan-triangulated from the centroid and each
    triangle is integrated with the radial direction handled exactly and a
    fixed 32-point Gauss-Legendre rule along the chord.
    """
    if isinstance(shape, Circle):
        return 2.0 * shape.radius / 3.0
    v = shape.vertices
    n = v.shape[0]
    total = 0.0
    area = 0.0
    for i in range(n):
        v0 = v[i]
        v1 = v[(i + 1) % n]
        cross = v0[0] * v1[1] - v1[0] * v0[1]  # = 2 * triangle area
        # int_T |a| dA over triangle (0, v0, v1) = (cross / 3) * int_0^1 |v0 + u (v1 - v0)| du
        wx = v0[0] + _GL_U * (v1[0] - v0[0])
        wy = v0[1] + _GL_U * (v1[1] - v0[1])
        chord = float(np.dot(_GL_W, np.hypot(wx, wy)))
        total += (cross / 3.0) * chord
        area += 0.5 * cross
    if area <= 0.0:
        raise DegenerateShape("polygon area is zero")
    return total / area


def max_support_distance(shape):
    """Largest distance from the center of mass to the support boundary."""
    if isinstance(shape, Circle):
        return shape.radius
    return float(np.max(np.hypot(shape.vertices[:, 0], shape.vertices[:, 1])))
