import math

import numpy as np
import pytest

from gazereview.errors import DomainError
from gazereview.geometry import (
    GazeAngles,
    GazeVector,
    angles_to_unit_vector,
    angles_to_vectors,
    angular_distance,
    classify_frame,
    project_to_plane,
    vector_to_angles,
)

# frozen from an independent evaluation of the trig formula:
# x = cos(0.3)*sin(-0.2), y = sin(0.3), z = cos(0.3)*cos(-0.2)
ORACLE_PITCH_03_YAW_N02 = (-0.18979606097868743, 0.29552020666133955, 0.9362933635841992)


def test_straight_at_camera():
    v = angles_to_unit_vector(GazeAngles(0.0, 0.0))
    assert (v.x, v.y, v.z) == (0.0, 0.0, 1.0)


def test_straight_up():
    v = angles_to_unit_vector(GazeAngles(math.pi / 2, 0.0))
    assert v.y == pytest.approx(1.0, abs=1e-15)
    assert abs(v.x) < 1e-15 and abs(v.z) < 1e-15


def test_oracle_value():
    v = angles_to_unit_vector(GazeAngles(0.3, -0.2))
    assert v.x == pytest.approx(ORACLE_PITCH_03_YAW_N02[0], abs=1e-12)
    assert v.y == pytest.approx(ORACLE_PITCH_03_YAW_N02[1], abs=1e-12)
    assert v.z == pytest.approx(ORACLE_PITCH_03_YAW_N02[2], abs=1e-12)


def test_out_of_range_angles_rejected():
    with pytest.raises(DomainError):
        GazeAngles(math.pi / 2 + 0.01, 0.0)
    with pytest.raises(DomainError):
        GazeAngles(0.0, math.pi + 0.01)


def test_vector_must_be_unit():
    with pytest.raises(DomainError):
        GazeVector(1.0, 1.0, 1.0)


def test_projection_center_and_boundary():
    assert project_to_plane(GazeVector(0.0, 0.0, 1.0)) == project_to_plane(
        angles_to_unit_vector(GazeAngles(0.0, 0.0))
    )
    p = project_to_plane(GazeVector(0.0, 1.0, 0.0))
    assert (p.u, p.v) == (0.0, 1.0)


def test_projection_matches_components():
    v = angles_to_unit_vector(GazeAngles(0.3, -0.2))
    p = project_to_plane(v)
    assert (p.u, p.v) == (v.x, v.y)


def test_angular_distance_identity_and_orthogonality():
    v = angles_to_unit_vector(GazeAngles(0.1, 0.2))
    assert angular_distance(v, v) == 0.0
    assert angular_distance(GazeVector(0, 0, 1), GazeVector(0, 1, 0)) == pytest.approx(
        math.pi / 2, abs=1e-15
    )


def test_angular_distance_random_oracle():
    rng = np.random.default_rng(7)
    for _ in range(50):
        a = rng.normal(size=3)
        b = rng.normal(size=3)
        a /= np.linalg.norm(a)
        b /= np.linalg.norm(b)
        va = GazeVector(*a)
        vb = GazeVector(*b)
        expected = math.acos(max(-1.0, min(1.0, float(np.dot(a, b)))))
        assert angular_distance(va, vb) == pytest.approx(expected, abs=1e-12)
        assert angular_distance(va, vb) == angular_distance(vb, va)


def test_classify_frame_examples():
    ref = GazeVector(0.0, 0.0, 1.0)
    assert classify_frame(ref, ref, 0.5) == 0
    assert classify_frame(GazeVector(0.0, 1.0, 0.0), ref, 0.5) == 1
    # boundary is strict: distance == theta -> 0
    side = angles_to_unit_vector(GazeAngles(0.5, 0.0))
    theta = angular_distance(side, ref)
    assert classify_frame(side, ref, theta) == 0


def test_classify_monotone_in_theta():
    rng = np.random.default_rng(3)
    ref = GazeVector(0.0, 0.0, 1.0)
    for _ in range(200):
        v = angles_to_unit_vector(
            GazeAngles(rng.uniform(-math.pi / 2, math.pi / 2), rng.uniform(-math.pi, math.pi))
        )
        t1, t2 = sorted(rng.uniform(1e-6, math.pi - 1e-6, size=2))
        assert classify_frame(v, ref, t2) <= classify_frame(v, ref, t1)


def test_unit_norm_and_disk_properties():
    rng = np.random.default_rng(11)
    pitch = rng.uniform(-math.pi / 2, math.pi / 2, 1000)
    yaw = rng.uniform(-math.pi, math.pi, 1000)
    vecs = angles_to_vectors(pitch, yaw)
    norms = np.linalg.norm(vecs, axis=1)
    assert np.abs(norms - 1.0).max() < 1e-9
    assert (vecs[:, 0] ** 2 + vecs[:, 1] ** 2 <= 1.0 + 1e-12).all()


def test_vector_to_angles_round_trip():
    rng = np.random.default_rng(13)
    for _ in range(100):
        g = GazeAngles(rng.uniform(-math.pi / 2 + 1e-6, math.pi / 2 - 1e-6),
                       rng.uniform(-math.pi + 1e-6, math.pi - 1e-6))
        back = vector_to_angles(angles_to_unit_vector(g))
        assert back.pitch == pytest.approx(g.pitch, abs=1e-9)
        assert back.yaw == pytest.approx(g.yaw, abs=1e-9)
