"""Trajectory artifacts: CSV tables and SVG phase plots.

Both writers are deterministic: the same record yields the same bytes,
which makes the outputs diffable and testable.
"""
from __future__ import annotations

import numpy as np

from .errors import AnalysisError
from .simulate import TrajectoryRecord

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#e377c2",
    "#17becf",
)

SVG_WIDTH = 800
SVG_HEIGHT = 600


def trajectory_csv(traj: TrajectoryRecord) -> str:
    """CSV with header ``t,agent,x1,...,xd``; one row per (sample, agent).

    Numbers are written with shortest round-trip precision, so parsing
    the file back recovers the exact float64 values.
    """
    header = "t,agent," + ",".join(f"x{k + 1}" for k in range(traj.d))
    lines = [header]
    for s in range(len(traj.times)):
        t_text = repr(float(traj.times[s]))
        for i in range(1, traj.n + 1):
            block = traj.states[s, (i - 1) * traj.d : i * traj.d]
            coords = ",".join(repr(float(v)) for v in block)
            lines.append(f"{t_text},{i},{coords}")
    return "\n".join(lines) + "\n"


def _scaled_points(xs: np.ndarray, ys: np.ndarray, bounds) -> list[tuple[float, float]]:
    x_lo, x_hi, y_lo, y_hi = bounds
    px = (xs - x_lo) / (x_hi - x_lo) * SVG_WIDTH
    py = SVG_HEIGHT - (ys - y_lo) / (y_hi - y_lo) * SVG_HEIGHT
    return list(zip(px, py))


def trajectory_svg(traj: TrajectoryRecord, max_points_per_path: int = 800) -> str:
    """Phase-plane SVG for two-dimensional agents.

    One polyline per agent in the (x1, x2) plane with the starting
    position drawn as a filled dot, on a fixed 800 x 600 viewport.
    Long runs are decimated to at most ``max_points_per_path`` vertices
    per polyline (the last sample is always kept).
    """
    if traj.d != 2:
        raise AnalysisError(
            f"phase plot requires per-agent dimension 2, got d = {traj.d}"
        )
    xs_all = traj.states[:, 0::2]
    ys_all = traj.states[:, 1::2]
    x_lo, x_hi = float(xs_all.min()), float(xs_all.max())
    y_lo, y_hi = float(ys_all.min()), float(ys_all.max())
    pad_x = 0.05 * (x_hi - x_lo) or 1.0
    pad_y = 0.05 * (y_hi - y_lo) or 1.0
    bounds = (x_lo - pad_x, x_hi + pad_x, y_lo - pad_y, y_hi + pad_y)

    stride = max(1, int(np.ceil(len(traj.times) / max_points_per_path)))
    keep = list(range(0, len(traj.times), stride))
    if keep[-1] != len(traj.times) - 1:
        keep.append(len(traj.times) - 1)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
    ]
    for i in range(1, traj.n + 1):
        color = PALETTE[(i - 1) % len(PALETTE)]
        block = traj.agent_states(i)
        pts = _scaled_points(block[keep, 0], block[keep, 1], bounds)
        point_text = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        parts.append(
            f'<polyline points="{point_text}" fill="none" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        x0, y0 = pts[0]
        parts.append(
            f'<circle cx="{x0:.2f}" cy="{y0:.2f}" r="4" fill="{color}"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
