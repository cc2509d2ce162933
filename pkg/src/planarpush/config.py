"""Text config files for the CLI: flat key-value sections, SI units, radians."""

import configparser

from .controller import Gains, PathFrame
from .geometry import Circle, Polygon, max_support_distance, mean_support_distance, square
from .sim import ConfigError, Grid, SimConfig

_SECTIONS = ("slider", "limit_surface", "contact", "gains", "path", "sim")


def _parser():
    return configparser.ConfigParser(inline_comment_prefixes=("#", ";"))


def _get_float(cp, section, key, default=None):
    raw = cp.get(section, key, fallback=None)
    if raw is None:
        if default is None:
            raise ConfigError(f"missing required key {section}.{key}")
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{section}.{key} must be a number, got {raw!r}") from None


def _get_pair(cp, section, key, default):
    raw = cp.get(section, key, fallback=None)
    if raw is None:
        return default
    parts = [p for p in raw.replace(",", " ").split() if p]
    if len(parts) != 2:
        raise ConfigError(f"{section}.{key} must be two numbers, got {raw!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError(f"{section}.{key} must be two numbers, got {raw!r}") from None


def _build_shape(cp):
    kind = cp.get("slider", "type", fallback="square").strip().lower()
    try:
        if kind == "square":
            return square(_get_float(cp, "slider", "side", 1.0))
        if kind == "circle":
            return Circle(_get_float(cp, "slider", "radius", 0.5))
        if kind == "polygon":
            raw = cp.get("slider", "vertices", fallback=None)
            if raw is None:
                raise ConfigError("missing required key slider.vertices")
            pts = []
            for chunk in raw.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                xy = [p for p in chunk.replace(",", " ").split() if p]
                if len(xy) != 2:
                    raise ConfigError(f"slider.vertices entry {chunk!r} must be x,y")
                pts.append((float(xy[0]), float(xy[1])))
            return Polygon(pts)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"slider: {exc}") from None
    raise ConfigError(f"slider.type must be square, circle, or polygon, got {kind!r}")


def resolve_tau(token, shape, f_max):
    """tau_max spec: a value in N*m, 'uniform', 'max', or '<scale>*uniform'/'<scale>*max'."""
    token = str(token).strip().lower()
    scale = 1.0
    if "*" in token:
        left, _, token = token.partition("*")
        try:
            scale = float(left)
        except ValueError:
            raise ConfigError(f"tau_max scale {left!r} must be a number") from None
        token = token.strip()
    if token == "uniform":
        return scale * f_max * mean_support_distance(shape)
    if token == "max":
        return scale * f_max * max_support_distance(shape)
    try:
        return scale * float(token)
    except ValueError:
        raise ConfigError(f"tau_max must be a number, 'uniform', or 'max', got {token!r}") from None


def parse_config(path):
    """Read a simulation config file into a SimConfig (validated)."""
    cp = _parser()
    with open(path) as fh:
        cp.read_file(fh)
    for section in cp.sections():
        if section not in _SECTIONS:
            raise ConfigError(f"unknown config section [{section}]")
    shape = _build_shape(cp)
    f_max = _get_float(cp, "limit_surface", "f_max", 1.0)
    if not (f_max > 0.0):
        raise ConfigError("f_max must be > 0")
    tau_max = resolve_tau(cp.get("limit_surface", "tau_max", fallback="uniform"), shape, f_max)

    edge_raw = cp.get("contact", "edge", fallback="auto").strip().lower()
    if edge_raw == "auto":
        edge_id = None
    else:
        try:
            edge_id = int(edge_raw)
        except ValueError:
            raise ConfigError(f"contact.edge must be 'auto' or an integer, got {edge_raw!r}") from None

    try:
        gains = Gains(
            k_f=_get_float(cp, "gains", "k_f", 0.1),
            k_y=_get_float(cp, "gains", "k_y", 0.01),
            speed=_get_float(cp, "gains", "speed", 0.1),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    try:
        path_frame = PathFrame.make(
            origin=_get_pair(cp, "path", "origin", (0.0, 0.0)),
            direction=_get_pair(cp, "path", "direction", (1.0, 0.0)),
        )
    except ValueError as exc:
        raise ConfigError(f"path: {exc}") from None

    config = SimConfig(
        shape=shape,
        f_max=f_max,
        tau_max=tau_max,
        mu_c=_get_float(cp, "contact", "mu_c", 0.5),
        gains=gains,
        path=path_frame,
        y0=_get_float(cp, "sim", "y0", 0.0),
        s0=_get_float(cp, "sim", "s0", 0.0),
        phi0=_get_float(cp, "sim", "phi0", 0.0),
        x0=_get_float(cp, "sim", "x0", 0.0),
        dt=_get_float(cp, "sim", "dt", 0.01),
        duration=_get_float(cp, "sim", "duration", 600.0),
        force_noise=_get_float(cp, "sim", "force_noise", 0.0),
        noise_seed=int(_get_float(cp, "sim", "seed", 0.0)),
        edge_id=edge_id,
    )
    config.validate()
    return config


def parse_grid(path, shape, f_max):
    """Read a sweep grid file ([grid] section with one comma list per axis)."""
    cp = _parser()
    with open(path) as fh:
        cp.read_file(fh)
    if not cp.has_section("grid"):
        raise ConfigError("grid file needs a [grid] section")

    def floats(key):
        raw = cp.get("grid", key, fallback=None)
        if raw is None:
            raise ConfigError(f"missing required key grid.{key}")
        try:
            return tuple(float(p) for p in raw.split(",") if p.strip())
        except ValueError:
            raise ConfigError(f"grid.{key} must be a comma list of numbers") from None

    taus_raw = cp.get("grid", "tau_max", fallback=None)
    if taus_raw is None:
        raise ConfigError("missing required key grid.tau_max")
    taus = tuple(resolve_tau(tok, shape, f_max) for tok in taus_raw.split(",") if tok.strip())
    return Grid(
        y0s=floats("y0"),
        s0s=floats("s0"),
        phi0s=floats("phi0"),
        mu_cs=floats("mu_c"),
        tau_maxes=taus,
    )


def shape_snapshot(shape):
    if isinstance(shape, Circle):
        return {"type": "circle", "radius": shape.radius}
    return {"type": "polygon", "vertices": shape.vertices.tolist()}


def config_snapshot(config):
    """JSON-friendly view of a resolved configuration."""
    return {
        "slider": shape_snapshot(config.shape),
        "limit_surface": {"f_max": config.f_max, "tau_max": config.tau_max},
        "contact": {"mu_c": config.mu_c, "edge": config.edge_id},
        "gains": {
            "k_f": config.gains.k_f,
            "k_y": config.gains.k_y,
            "speed": config.gains.speed,
        },
        "path": {
            "origin": config.path.origin.tolist(),
            "direction": config.path.direction.tolist(),
        },
        "sim": {
            "y0": config.y0,
            "s0": config.s0,
            "phi0": config.phi0,
            "x0": config.x0,
            "dt": config.dt,
            "duration": config.duration,
            "force_noise": config.force_noise,
            "seed": config.noise_seed,
        },
    }
