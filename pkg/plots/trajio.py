"""Readers for the simulator's trajectory CSV schema and slider config files.

These scripts consume only the documented text interfaces: trajectory CSVs
with header t,x,y,phi,s,fx,fy,theta_f,theta_p,alpha,mode and the [slider]
section of the flat config format. Inputs are never modified.
"""

import configparser
import csv
import math
import os

REQUIRED_COLUMNS = ("t", "x", "y", "phi", "s", "fx", "fy", "theta_f", "theta_p", "alpha", "mode")


class SchemaError(ValueError):
    pass


def read_trajectory(path):
    """Parse one trajectory CSV into a dict of float columns (mode as text)."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in REQUIRED_COLUMNS:
            if col not in header:
                raise SchemaError(f"{path}: missing column {col!r}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    out = {col: [float(r[col]) for r in rows] for col in REQUIRED_COLUMNS if col != "mode"}
    out["mode"] = [r["mode"] for r in rows]
    return out


def find_trajectories(inputs):
    """Expand --input arguments (files or directories) into a sorted CSV list."""
    paths = []
    for item in inputs:
        if os.path.isdir(item):
            names = sorted(os.listdir(item))
            paths.extend(os.path.join(item, n) for n in names if n.endswith(".csv"))
        else:
            paths.append(item)
    return paths


class Slider:
    """Slider outline plus the contact chart c(s) used by the simulator.

    The contact parameter runs along rot90(inward normal): polygons measure
    s from the midpoint of the edge facing -x in the body frame, circles
    from the body point (-radius, 0).
    """

    def __init__(self, kind, radius=None, vertices=None):
        self.kind = kind
        self.radius = radius
        self.vertices = vertices

    def outline(self, x, y, phi):
        """World-frame outline polyline (closed) for drawing."""
        c, s = math.cos(phi), math.sin(phi)
        if self.kind == "circle":
            pts = []
            for k in range(121):
                a = 2.0 * math.pi * k / 120
                px, py = self.radius * math.cos(a), self.radius * math.sin(a)
                pts.append((x + c * px - s * py, y + s * px + c * py))
            return pts
        pts = [(x + c * px - s * py, y + s * px + c * py) for px, py in self.vertices]
        pts.append(pts[0])
        return pts

    def contact_point(self, s_param):
        """Body-frame contact point at contact parameter s."""
        if self.kind == "circle":
            u = s_param / self.radius
            return (-self.radius * math.cos(u), self.radius * math.sin(u))
        # contact edge: outward normal closest to -x, i.e. inward normal
        # closest to +x; s runs from the edge midpoint along rot90(inward)
        best = None
        n = len(self.vertices)
        for i in range(n):
            x0, y0 = self.vertices[i]
            x1, y1 = self.vertices[(i + 1) % n]
            length = math.hypot(x1 - x0, y1 - y0)
            dx, dy = (x1 - x0) / length, (y1 - y0) / length
            nx, ny = -dy, dx  # inward
            if best is None or nx > best[0]:
                best = (nx, ny, 0.5 * (x0 + x1), 0.5 * (y0 + y1), -dx, -dy)
        nx, ny, mx, my, tx, ty = best
        return (mx + s_param * tx, my + s_param * ty)


def read_slider_config(path):
    """Parse the [slider] section of a simulator config file."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    with open(path) as fh:
        cp.read_file(fh)
    kind = cp.get("slider", "type", fallback="square").strip().lower()
    if kind == "square":
        h = 0.5 * cp.getfloat("slider", "side", fallback=1.0)
        return Slider("polygon", vertices=[(h, -h), (h, h), (-h, h), (-h, -h)])
    if kind == "circle":
        return Slider("circle", radius=cp.getfloat("slider", "radius", fallback=0.5))
    if kind == "polygon":
        raw = cp.get("slider", "vertices")
        verts = []
        for chunk in raw.split(";"):
            chunk = chunk.strip()
            if chunk:
                x, y = (float(v) for v in chunk.replace(",", " ").split())
                verts.append((x, y))
        # re-center on the area centroid like the simulator does
        area2 = 0.0
        cx = cy = 0.0
        for i in range(len(verts)):
            x0, y0 = verts[i]
            x1, y1 = verts[(i + 1) % len(verts)]
            w = x0 * y1 - x1 * y0
            area2 += w
            cx += (x0 + x1) * w
            cy += (y0 + y1) * w
        cx /= 3.0 * area2
        cy /= 3.0 * area2
        return Slider("polygon", vertices=[(x - cx, y - cy) for x, y in verts])
    raise SchemaError(f"{path}: unsupported slider type {kind!r}")
