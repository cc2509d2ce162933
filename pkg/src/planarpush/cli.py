"""Command-line front end: single runs, parameter sweeps, and solver checks."""

import argparse
import json
import os
import sys
import time

from . import __version__
from .config import config_snapshot, parse_config, parse_grid
from .geometry import Circle, square
from .oracle import run_check
from .sim import ConfigError, SimConfig, run, sweep, table1_grid

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_CONTACT_LOST = 2
EXIT_SWEEP_FAILED = 3
EXIT_CHECK_FAILED = 4

TRAJECTORY_HEADER = "t,x,y,phi,s,fx,fy,theta_f,theta_p,alpha,mode"
SUMMARY_COLUMNS = (
    "y0",
    "s0",
    "phi0",
    "mu_c",
    "tau_max",
    "final_yc",
    "max_abs_y",
    "status",
    "slip_fraction",
    "stick_fraction",
    "tail_rise",
    "max_ls_residual",
    "steps",
    "corner_time",
    "status_t",
    "final_x",
    "final_y",
    "final_phi",
    "final_s",
)


def _fmt(value):
    """Locale-independent float text at 9 significant digits."""
    return format(float(value), ".9g")


def write_trajectory_csv(path, records):
    with open(path, "w", newline="\n") as fh:
        fh.write(TRAJECTORY_HEADER + "\n")
        for r in records:
            fh.write(
                ",".join(
                    (
                        _fmt(r.t),
                        _fmt(r.x),
                        _fmt(r.y),
                        _fmt(r.phi),
                        _fmt(r.s),
                        _fmt(r.fx),
                        _fmt(r.fy),
                        _fmt(r.theta_f),
                        _fmt(r.theta_p),
                        _fmt(r.alpha),
                        r.mode,
                    )
                )
                + "\n"
            )


def _status_dict(status):
    return {"kind": status.kind, "t": status.t, "continued": status.continued}


def _summary_dict(traj):
    s = traj.summary
    return {
        "status": _status_dict(traj.status),
        "final": {"x": s.final_x, "y": s.final_y, "phi": s.final_phi, "s": s.final_s, "yc": s.final_yc},
        "max_abs_y": s.max_abs_y,
        "slip_fraction": s.slip_fraction,
        "stick_fraction": s.stick_fraction,
        "steps": s.steps,
        "corner_times": list(s.corner_times),
        "max_ls_residual": s.max_ls_residual,
        "tail_rise": s.tail_rise,
        "separation_margin": s.separation_margin,
    }


def _summary_row(res):
    s = res.summary
    return ",".join(
        (
            _fmt(res.y0),
            _fmt(res.s0),
            _fmt(res.phi0),
            _fmt(res.mu_c),
            _fmt(res.tau_max),
            _fmt(s.final_yc),
            _fmt(s.max_abs_y),
            res.status.kind,
            _fmt(s.slip_fraction),
            _fmt(s.stick_fraction),
            _fmt(s.tail_rise),
            _fmt(s.max_ls_residual),
            str(s.steps),
            _fmt(s.corner_times[0]) if s.corner_times else "",
            _fmt(res.status.t) if res.status.t is not None else "",
            _fmt(s.final_x),
            _fmt(s.final_y),
            _fmt(s.final_phi),
            _fmt(s.final_s),
        )
    )


def cmd_simulate(args):
    config = parse_config(args.config)
    start = time.monotonic()
    traj = run(config, record=True)
    write_trajectory_csv(args.out, traj.records)
    summary = _summary_dict(traj)
    summary["config"] = config_snapshot(config)
    summary["version"] = __version__
    summary["wall_time_s"] = time.monotonic() - start
    summary["trajectory_csv"] = os.path.abspath(args.out)
    summary_path = args.out + ".summary.json"
    with open(summary_path, "w", newline="\n") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    print(f"wrote {args.out} ({len(traj.records)} records) and {summary_path}")
    print(f"status: {traj.status.kind}" + (f" at t={traj.status.t:g}" if traj.status.t is not None else ""))
    if traj.status.kind == "contact_lost":
        return EXIT_CONTACT_LOST
    return EXIT_OK


def _base_sweep_config(args):
    if args.slider == "square":
        shape = square(1.0)
    else:
        shape = Circle(0.5)
    return SimConfig(shape=shape, dt=args.dt, duration=args.duration)


def cmd_sweep(args):
    base = _base_sweep_config(args)
    grid = (
        parse_grid(args.grid, base.shape, base.f_max)
        if args.grid
        else table1_grid(base.shape, base.f_max)
    )
    os.makedirs(args.out, exist_ok=True)
    traj_dir = os.path.join(args.out, "trajectories")
    if args.trajectories:
        os.makedirs(traj_dir, exist_ok=True)

    start = time.monotonic()
    rows = []
    statuses = []
    traj_files = []
    for res in sweep(base, grid=grid, jobs=args.jobs, trajectories=args.trajectories):
        rows.append(_summary_row(res))
        statuses.append(res.status.kind)
        if args.trajectories:
            path = os.path.join(traj_dir, f"combo_{res.index:03d}.csv")
            write_trajectory_csv(path, res.records)
            traj_files.append(path)

    summary_path = os.path.join(args.out, "summary.csv")
    with open(summary_path, "w", newline="\n") as fh:
        fh.write(",".join(SUMMARY_COLUMNS) + "\n")
        for row in rows:
            fh.write(row + "\n")

    counts = {kind: statuses.count(kind) for kind in sorted(set(statuses))}
    manifest = {
        "tool": "planarpush",
        "version": __version__,
        "command": f"sweep {args.slider}",
        "config": config_snapshot(base),
        "grid": {
            "y0": list(grid.y0s),
            "s0": list(grid.s0s),
            "phi0": list(grid.phi0s),
            "mu_c": list(grid.mu_cs),
            "tau_max": list(grid.tau_maxes),
        },
        "jobs": args.jobs,
        "runs": len(rows),
        "statuses": counts,
        "wall_time_s": time.monotonic() - start,
        "outputs": {"summary_csv": os.path.abspath(summary_path), "trajectories": traj_files},
    }
    manifest_path = os.path.join(args.out, "manifest.json")
    with open(manifest_path, "w", newline="\n") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")

    print(f"wrote {summary_path} ({len(rows)} rows); statuses: {counts}")
    if "contact_lost" in counts:
        return EXIT_SWEEP_FAILED
    return EXIT_OK


def cmd_check(args, solve_fn=None):
    if args.count < 1:
        print("count must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    kwargs = {} if solve_fn is None else {"solve_fn": solve_fn}
    max_dev, worst, failures = run_check(
        args.count, args.seed, n_dirs=args.grid_points, tol=args.tol, **kwargs
    )
    print(f"checked {args.count} randomized instances (seed {args.seed}, grid {args.grid_points})")
    print(f"max relative deviation vs oracle: {max_dev:.3e} (tolerance {args.tol:g})")
    if failures:
        inst, dev = failures[0]
        print(f"FAIL: {len(failures)} instances exceeded tolerance; worst offender:", file=sys.stderr)
        print(json.dumps({"deviation": dev, "instance": inst.to_dict()}, indent=2), file=sys.stderr)
        return EXIT_CHECK_FAILED
    print("PASS")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="planarpush",
        description="Quasistatic planar pushing simulator with a force-feedback line-tracking controller.",
    )
    parser.add_argument("--version", action="version", version=f"planarpush {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one closed-loop push from a config file")
    p_sim.add_argument("--config", required=True, help="config file path")
    p_sim.add_argument("--out", required=True, help="trajectory CSV output path")
    p_sim.set_defaults(func=cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="run the robustness grid for a built-in slider")
    p_sweep.add_argument("slider", choices=("square", "circle"))
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.add_argument("--grid", help="custom grid config file")
    p_sweep.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p_sweep.add_argument("--trajectories", action="store_true", help="write per-combo trajectory CSVs")
    p_sweep.add_argument("--duration", type=float, default=600.0)
    p_sweep.add_argument("--dt", type=float, default=0.01)
    p_sweep.set_defaults(func=cmd_sweep)

    p_check = sub.add_parser("check", help="randomized solver-vs-oracle comparison")
    p_check.add_argument("--seed", type=int, default=1)
    p_check.add_argument("--count", type=int, default=1000)
    p_check.add_argument("--grid-points", type=int, default=100001)
    p_check.add_argument("--tol", type=float, default=1e-5)
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
