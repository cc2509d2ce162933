#!/usr/bin/env python3
"""Draw slider poses sampled from one trajectory: outline, contact point, push arrow.

Usage:
  planarpush-plot-snapshots --input traj.csv --shape-config run.cfg \
      --times 0 15 30 45 60 --out snapshots.png

The pushing-direction arrows assume the run tracked the default path along
the world x-axis (theta_p is measured in the path frame).
"""

import argparse
import math
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from trajio import SchemaError, read_slider_config, read_trajectory


def plot_snapshots(traj_path, shape_config, times, out, arrow_scale=0.4):
    """Render the slider at each requested time; returns the frame count."""
    traj = read_trajectory(traj_path)
    slider = read_slider_config(shape_config)
    t = traj["t"]
    t_end = t[-1]
    fig, ax = plt.subplots(figsize=(9, 4))
    for when in times:
        if when < t[0] or when > t_end:
            raise SchemaError(f"snapshot time {when:g} outside trajectory range [{t[0]:g}, {t_end:g}]")
        i = min(range(len(t)), key=lambda k: abs(t[k] - when))
        x, y, phi, s = traj["x"][i], traj["y"][i], traj["phi"][i], traj["s"][i]
        theta_p = traj["theta_p"][i]

        pts = slider.outline(x, y, phi)
        ax.plot([p[0] for p in pts], [p[1] for p in pts], color="tab:blue", linewidth=1.2)
        if slider.kind == "circle":
            # body x-axis marker from center to edge
            ex = x + slider.radius * math.cos(phi)
            ey = y + slider.radius * math.sin(phi)
            ax.plot([x, ex], [y, ey], color="red", linewidth=1.2)

        cbx, cby = slider.contact_point(s)
        c, sn = math.cos(phi), math.sin(phi)
        cwx = x + c * cbx - sn * cby
        cwy = y + sn * cbx + c * cby
        ax.plot([cwx], [cwy], marker="o", markersize=4, color="black")
        ax.annotate(
            "",
            xy=(cwx + arrow_scale * math.cos(theta_p), cwy + arrow_scale * math.sin(theta_p)),
            xytext=(cwx, cwy),
            arrowprops=dict(arrowstyle="->", color="black", linewidth=1.2),
        )
        ax.annotate(f"t={when:g}s", (x, y), fontsize=7, ha="center", va="center")

    ax.axhline(0.0, color="gray", linewidth=0.8, linestyle="--")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return len(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--input", required=True, help="trajectory CSV")
    parser.add_argument("--shape-config", required=True, help="config file with the [slider] section")
    parser.add_argument("--times", nargs="+", type=float, required=True, help="snapshot times in seconds")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        count = plot_snapshots(args.input, args.shape_config, args.times, args.out)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"rendered {count} snapshots -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
