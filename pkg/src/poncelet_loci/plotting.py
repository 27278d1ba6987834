"""Static figures of a locus report: table, caustic, sample orbits and the locus."""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .billiards import poncelet_triangle  # noqa: E402
from .locus import LocusReport  # noqa: E402

# fixed salt and no timestamp, so identical reports give identical SVG bytes
RC = {
    "svg.hashsalt": "poncelet-loci",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.linewidth": 0.6,
    "lines.linewidth": 0.9,
}

TABLE_COLOR = "black"
CAUSTIC_COLOR = "tab:blue"
ORBIT_COLOR = "0.55"
LOCUS_COLOR = "tab:red"


def _ellipse_xy(a, b, n=400):
    s = np.linspace(0.0, 2.0 * math.pi, n)
    return a * np.cos(s), b * np.sin(s)


def plot_locus(report: LocusReport, ax=None, n_orbits: int = 12):
    """Draw E, the caustic, ``n_orbits`` sample triangles and the center locus."""
    if ax is None:
        _, ax = plt.subplots()
    E = report.ellipse
    G = report.caustic.caustic
    ax.plot(*_ellipse_xy(E.a, E.b), color=TABLE_COLOR, label="table")
    ax.plot(*_ellipse_xy(G.a, G.b), color=CAUSTIC_COLOR, ls="--", label="caustic")
    for k in range(n_orbits):
        o = poncelet_triangle(E, G, 2.0 * math.pi * k / n_orbits)
        xs = [v.x for v in o.vertices] + [o.v1.x]
        ys = [v.y for v in o.vertices] + [o.v1.y]
        ax.plot(xs, ys, color=ORBIT_COLOR, lw=0.5, label="orbits" if k == 0 else None)
    pts = np.array([p for _, p in report.samples] + [report.samples[0][1]])
    if report.collapsed:
        ax.plot(pts[:1, 0], pts[:1, 1], "o", ms=3, color=LOCUS_COLOR, label=f"{report.kind} (point)")
    else:
        ax.plot(pts[:, 0], pts[:, 1], color=LOCUS_COLOR, lw=1.2, label=f"{report.kind} locus")
    if report.foci_line_points:
        fx = [p.x for p in report.foci_line_points]
        fy = [p.y for p in report.foci_line_points]
        ax.plot(fx, fy, "x", color=LOCUS_COLOR, ms=5)
    ax.set_aspect("equal")
    ax.set_title(f"E({E.a:g}, {E.b:g}): {report.kind}")
    ax.legend(loc="upper right", fontsize=7, frameon=False)
    return ax


def save_locus_figure(report: LocusReport, path: str, n_orbits: int = 12) -> str:
    """Render the report to ``path``; the format follows the extension (svg, png, pdf)."""
    fmt = os.path.splitext(path)[1].lstrip(".").lower() or "svg"
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(6, 6))
        plot_locus(report, ax, n_orbits)
        fig.tight_layout()
        meta = {"Date": None} if fmt in ("svg", "pdf") else {}
        fig.savefig(path, format=fmt, metadata=meta)
        plt.close(fig)
    return path
