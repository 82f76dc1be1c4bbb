"""Region queries over the gaze plot.

Points live in [-1, 1]^2 (orthographic images of unit vectors).  A uniform
grid index answers rectangle and polygon queries; below a size threshold a
plain linear scan is used.  Containment is boundary-inclusive with a fixed
epsilon of 1e-12 so behavior at edges is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import PositiveInterval, intervals_from_array

BOUNDARY_EPS = 1e-12
DEFAULT_GRID_SIZE = 64
BRUTE_FORCE_THRESHOLD = 1000


@dataclass(frozen=True)
class Rectangle:
    u_min: float
    u_max: float
    v_min: float
    v_max: float

    def __post_init__(self):
        if self.u_min > self.u_max or self.v_min > self.v_max:
            raise DomainError("rectangle bounds must be ordered")


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise DomainError("polygon needs at least 3 vertices")
        if not _is_simple(self.vertices):
            raise DomainError("polygon must be simple (non-self-intersecting)")


RegionQuery = Rectangle | Polygon


def _segments(vertices):
    n = len(vertices)
    return [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]


def _orient(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _segs_intersect(a, b, c, d) -> bool:
    d1 = _orient(c, d, a)
    d2 = _orient(c, d, b)
    d3 = _orient(a, b, c)
    d4 = _orient(a, b, d)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)):
        return True
    return False


def _is_simple(vertices) -> bool:
    segs = _segments(vertices)
    n = len(segs)
    for i in range(n):
        for j in range(i + 1, n):
            # skip segments sharing an endpoint (neighbors in the ring)
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segs_intersect(*segs[i], *segs[j]):
                return False
    return True


def _point_on_segment(px, py, a, b, eps=BOUNDARY_EPS) -> bool:
    (ax, ay), (bx, by) = a, b
    if not (min(ax, bx) - eps <= px <= max(ax, bx) + eps):
        return False
    if not (min(ay, by) - eps <= py <= max(ay, by) + eps):
        return False
    cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
    seg_len = max(abs(bx - ax), abs(by - ay), eps)
    return abs(cross) <= eps * seg_len


def contains(region: RegionQuery, u: float, v: float) -> bool:
    """Boundary-inclusive point-in-region test."""
    if isinstance(region, Rectangle):
        return (
            region.u_min - BOUNDARY_EPS <= u <= region.u_max + BOUNDARY_EPS
            and region.v_min - BOUNDARY_EPS <= v <= region.v_max + BOUNDARY_EPS
        )
    for a, b in _segments(region.vertices):
        if _point_on_segment(u, v, a, b):
            return True
    # ray cast toward +u
    inside = False
    for (ax, ay), (bx, by) in _segments(region.vertices):
        if (ay > v) != (by > v):
            x_cross = ax + (v - ay) * (bx - ax) / (by - ay)
            if x_cross > u:
                inside = not inside
    return inside


def _region_bbox(region: RegionQuery) -> tuple[float, float, float, float]:
    if isinstance(region, Rectangle):
        return region.u_min, region.u_max, region.v_min, region.v_max
    us = [p[0] for p in region.vertices]
    vs = [p[1] for p in region.vertices]
    return min(us), max(us), min(vs), max(vs)


@dataclass(frozen=True)
class PlotPoints:
    """Per-frame projected plot coordinates, face-filtered upstream."""

    frames: np.ndarray  # int frame indices, ascending
    u: np.ndarray
    v: np.ndarray


def brute_force_query(points: PlotPoints, region: RegionQuery) -> list[int]:
    """Linear scan; the oracle the grid index is verified against."""
    return [
        int(points.frames[i])
        for i in range(points.frames.size)
        if contains(region, float(points.u[i]), float(points.v[i]))
    ]


class GridIndex:
    """Uniform bucket grid over [-1, 1]^2 with a brute-force small-input path."""

    def __init__(self, points: PlotPoints, grid_size: int = DEFAULT_GRID_SIZE,
                 brute_force_threshold: int = BRUTE_FORCE_THRESHOLD):
        self.points = points
        self.grid_size = grid_size
        self.use_grid = points.frames.size >= brute_force_threshold
        if self.use_grid:
            # clip: projected points cannot leave the unit disk, but guard anyway
            ci = np.clip(((points.u + 1.0) / 2.0 * grid_size).astype(int), 0, grid_size - 1)
            cj = np.clip(((points.v + 1.0) / 2.0 * grid_size).astype(int), 0, grid_size - 1)
            self._cells: dict[tuple[int, int], list[int]] = {}
            for idx in range(points.frames.size):
                self._cells.setdefault((int(ci[idx]), int(cj[idx])), []).append(idx)

    def _cell_range(self, lo: float, hi: float) -> range:
        g = self.grid_size
        a = int(np.clip(np.floor((lo + 1.0) / 2.0 * g), 0, g - 1))
        b = int(np.clip(np.floor((hi + 1.0) / 2.0 * g), 0, g - 1))
        return range(a, b + 1)

    def query(self, region: RegionQuery) -> list[int]:
        if not self.use_grid:
            return brute_force_query(self.points, region)
        u_min, u_max, v_min, v_max = _region_bbox(region)
        pts = self.points
        out: list[int] = []
        # widen by eps so boundary-inclusive hits on cell edges are not missed
        for ci in self._cell_range(u_min - BOUNDARY_EPS, u_max + BOUNDARY_EPS):
            for cj in self._cell_range(v_min - BOUNDARY_EPS, v_max + BOUNDARY_EPS):
                for idx in self._cells.get((ci, cj), ()):
                    if contains(region, float(pts.u[idx]), float(pts.v[idx])):
                        out.append(int(pts.frames[idx]))
        out.sort()
        return out


@dataclass(frozen=True)
class RegionQueryResult:
    frames: list[int]
    highlight_ranges: list[PositiveInterval]
    time_ranges_ms: list[tuple[int, int]]


def build_result(frames: list[int], frame_count: int, fps: float) -> RegionQueryResult:
    """Coalesce matching frames into highlight intervals and convert to
    half-open millisecond ranges for the timeline."""
    membership = np.zeros(frame_count, dtype=np.uint8)
    for f in frames:
        membership[f] = 1
    ranges = intervals_from_array(membership)
    times = [
        (round(iv.start * 1000.0 / fps), round((iv.end + 1) * 1000.0 / fps)) for iv in ranges
    ]
    return RegionQueryResult(frames=sorted(frames), highlight_ranges=ranges, time_ranges_ms=times)
