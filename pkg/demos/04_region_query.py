"""Region queries over the gaze plot: grid index vs. brute-force scan.

Run:  python3 demos/04_region_query.py
"""

import time

import numpy as np

from gazereview.regions import (
    GridIndex,
    PlotPoints,
    Polygon,
    Rectangle,
    brute_force_query,
    build_result,
)

rng = np.random.default_rng(1)
n = 20_000
r = np.sqrt(rng.random(n))
phi = rng.uniform(0, 2 * np.pi, n)
pts = PlotPoints(frames=np.arange(n), u=r * np.cos(phi), v=r * np.sin(phi))
index = GridIndex(pts)

rect = Rectangle(0.2, 0.6, -0.1, 0.4)
tri = Polygon(((-0.5, -0.5), (0.0, 0.6), (0.5, -0.4)))

for name, region in (("rectangle", rect), ("triangle", tri)):
    t0 = time.perf_counter()
    fast = index.query(region)
    t1 = time.perf_counter()
    slow = brute_force_query(pts, region)
    t2 = time.perf_counter()
    assert fast == slow
    print(f"{name}: {len(fast)} of {n} frames "
          f"(grid {1e3 * (t1 - t0):.2f} ms, scan {1e3 * (t2 - t1):.2f} ms)")

# frames coalesce into timeline highlight ranges
result = build_result(index.query(rect)[:50], frame_count=n, fps=5.0)
print("first highlight ranges:",
      [(iv.start, iv.end) for iv in result.highlight_ranges[:5]])
print("as milliseconds:      ", result.time_ranges_ms[:5])
