import numpy as np
import pytest

from gazereview.errors import DomainError
from gazereview.regions import (
    GridIndex,
    PlotPoints,
    Polygon,
    Rectangle,
    brute_force_query,
    build_result,
    contains,
)


def random_points(n, seed=0):
    rng = np.random.default_rng(seed)
    # points inside the unit disk, like projected gaze vectors
    r = np.sqrt(rng.random(n))
    phi = rng.uniform(0, 2 * np.pi, n)
    return PlotPoints(frames=np.arange(n), u=r * np.cos(phi), v=r * np.sin(phi))


def random_simple_polygon(rng, n_vertices=6):
    # star-shaped polygon around a random center: always simple
    cx, cy = rng.uniform(-0.4, 0.4, 2)
    angles = np.sort(rng.uniform(0, 2 * np.pi, n_vertices))
    radii = rng.uniform(0.1, 0.6, n_vertices)
    verts = tuple(
        (float(cx + r * np.cos(a)), float(cy + r * np.sin(a)))
        for a, r in zip(angles, radii)
    )
    return Polygon(verts)


def test_rectangle_validation():
    with pytest.raises(DomainError):
        Rectangle(0.5, -0.5, 0.0, 1.0)


def test_polygon_validation():
    with pytest.raises(DomainError):
        Polygon(((0, 0), (1, 1)))
    with pytest.raises(DomainError):  # bowtie self-intersects
        Polygon(((0, 0), (1, 1), (1, 0), (0, 1)))


def test_full_plane_rectangle_matches_everything():
    pts = random_points(500)
    got = brute_force_query(pts, Rectangle(-1, 1, -1, 1))
    assert got == list(range(500))


def test_degenerate_rectangle_off_points_is_empty():
    pts = PlotPoints(frames=np.array([0, 1]), u=np.array([0.1, 0.2]), v=np.array([0.0, 0.0]))
    assert brute_force_query(pts, Rectangle(0.5, 0.5, -1, 1)) == []


def test_boundary_inclusive():
    pts = PlotPoints(frames=np.array([0]), u=np.array([0.5]), v=np.array([0.25]))
    assert brute_force_query(pts, Rectangle(0.5, 0.9, 0.0, 0.5)) == [0]
    tri = Polygon(((0.0, 0.0), (1.0, 0.0), (0.0, 1.0)))
    assert contains(tri, 0.5, 0.0)  # on an edge
    assert contains(tri, 0.0, 0.0)  # on a vertex
    assert not contains(tri, 0.51, 0.51)


def test_grid_matches_brute_force_rectangles():
    pts = random_points(10_000, seed=1)
    index = GridIndex(pts)
    assert index.use_grid
    rng = np.random.default_rng(2)
    for _ in range(100):
        u1, u2 = np.sort(rng.uniform(-1, 1, 2))
        v1, v2 = np.sort(rng.uniform(-1, 1, 2))
        region = Rectangle(float(u1), float(u2), float(v1), float(v2))
        assert index.query(region) == brute_force_query(pts, region)


def test_grid_matches_brute_force_polygons():
    pts = random_points(10_000, seed=3)
    index = GridIndex(pts)
    rng = np.random.default_rng(4)
    for _ in range(20):
        region = random_simple_polygon(rng, n_vertices=int(rng.integers(3, 9)))
        assert index.query(region) == brute_force_query(pts, region)


def test_small_input_uses_brute_force():
    pts = random_points(100)
    index = GridIndex(pts)
    assert not index.use_grid
    region = Rectangle(-0.5, 0.5, -0.5, 0.5)
    assert index.query(region) == brute_force_query(pts, region)


def test_rectangle_query_monotone():
    pts = random_points(2000, seed=5)
    index = GridIndex(pts)
    rng = np.random.default_rng(6)
    for _ in range(30):
        u1, u2 = np.sort(rng.uniform(-1, 1, 2))
        v1, v2 = np.sort(rng.uniform(-1, 1, 2))
        small = set(index.query(Rectangle(float(u1), float(u2), float(v1), float(v2))))
        grow = 0.2
        big = set(index.query(Rectangle(float(u1 - grow), float(u2 + grow),
                                        float(v1 - grow), float(v2 + grow))))
        assert small <= big


def test_build_result_ranges_and_times():
    result = build_result([1, 2, 4], frame_count=6, fps=5.0)
    assert result.frames == [1, 2, 4]
    assert [(iv.start, iv.end) for iv in result.highlight_ranges] == [(1, 2), (4, 4)]
    # half-open ms ranges on the fps grid
    assert result.time_ranges_ms == [(200, 600), (800, 1000)]
