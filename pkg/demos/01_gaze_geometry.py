"""Gaze geometry walkthrough: angles -> unit vectors -> plot plane.

Run:  python3 demos/01_gaze_geometry.py
Writes demos/out/gaze_plot.png if matplotlib is available.
"""

import math
from pathlib import Path

import numpy as np

from gazereview.geometry import (
    CAMERA_AXIS,
    GazeAngles,
    angles_to_unit_vector,
    angular_distance,
    classify_frame,
    project_to_plane,
)
from gazereview.sim import ScenarioConfig, generate_session

# A single frame: looking slightly up and to the left.
angles = GazeAngles(pitch=0.3, yaw=-0.2)
vec = angles_to_unit_vector(angles)
point = project_to_plane(vec)
print(f"angles: pitch={angles.pitch}, yaw={angles.yaw}")
print(f"unit vector: ({vec.x:.4f}, {vec.y:.4f}, {vec.z:.4f})")
print(f"plot point:  ({point.u:.4f}, {point.v:.4f})")
print(f"deviation from camera axis: {angular_distance(vec, CAMERA_AXIS):.4f} rad")
print(f"flagged at theta=0.2? {classify_frame(vec, CAMERA_AXIS, 0.2)}")
print()

# A whole synthetic session on the plot plane.
cfg = ScenarioConfig(
    frame_count=900, fps=5.0, sigma_on=0.03, lookaway_rate=4.0,
    duration_range=(5, 20), lookaway_angle_range=(0.4, 0.9), sigma_ml=0.04, seed=7,
)
session, gt = generate_session(cfg)
uv = np.array([
    [math.cos(p.angles.pitch) * math.sin(p.angles.yaw), math.sin(p.angles.pitch)]
    for p in session.predictions
])
away = gt.labels.labels.astype(bool)
print(f"session {session.id}: {cfg.frame_count} frames, "
      f"{len(gt.events)} look-away events covering {int(away.sum())} frames")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(__file__).parent / "out"
    out.mkdir(exist_ok=True)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.scatter(uv[~away, 0], uv[~away, 1], s=4, alpha=0.4, label="on screen")
    ax.scatter(uv[away, 0], uv[away, 1], s=6, color="tab:red", label="look-away")
    ax.add_patch(plt.Circle((0, 0), 1.0, fill=False, linestyle=":"))
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_aspect("equal")
    ax.legend()
    ax.set_title("gaze plot (orthographic projection)")
    fig.savefig(out / "gaze_plot.png", dpi=120)
    print(f"wrote {out / 'gaze_plot.png'}")
except ImportError:
    print("matplotlib not installed; skipping the figure")
