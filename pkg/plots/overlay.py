#!/usr/bin/env python3
"""Overlay the CoM paths of many trajectory CSVs in the x-y plane.

Usage: planarpush-plot-overlay --input SWEEP_DIR/trajectories --out overlay.png
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from trajio import SchemaError, find_trajectories, read_trajectory


def plot_overlay(inputs, out, title=None):
    """Draw every trajectory's (x, y) path onto one axes; returns curve count."""
    paths = find_trajectories(inputs)
    if not paths:
        raise SchemaError("no trajectories found")
    fig, ax = plt.subplots(figsize=(9, 4))
    count = 0
    for path in paths:
        traj = read_trajectory(path)
        ax.plot(traj["x"], traj["y"], linewidth=0.6, alpha=0.6)
        count += 1
    ax.axhline(0.0, color="black", linewidth=1.0, linestyle="--", label="desired path y=0")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return count


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", nargs="+", required=True, help="trajectory CSVs or directories")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        count = plot_overlay(args.input, args.out, args.title)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"plotted {count} trajectories -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
