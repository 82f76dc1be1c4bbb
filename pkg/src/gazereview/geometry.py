"""Gaze direction geometry.

Angles follow the camera-frame convention common to gaze estimation models:
pitch positive = up, yaw positive = toward the subject's right, and
(pitch, yaw) = (0, 0) means looking straight at the camera.  The z axis
points from the subject toward the camera.

The gaze plot is the orthographic image of the unit gaze vector: drop the
camera-axis component and keep (x, y).  This is bijective on the forward
hemisphere and the radial distance from the plot center grows with angular
deviation near the center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

UNIT_NORM_TOL = 1e-9


@dataclass(frozen=True)
class GazeAngles:
    """Predicted gaze angles in radians."""

    pitch: float
    yaw: float

    def __post_init__(self):
        if not (abs(self.pitch) <= math.pi / 2):
            raise DomainError(f"pitch out of range [-pi/2, pi/2]: {self.pitch}")
        if not (abs(self.yaw) <= math.pi):
            raise DomainError(f"yaw out of range [-pi, pi]: {self.yaw}")


@dataclass(frozen=True)
class GazeVector:
    """3D unit direction vector in the camera frame."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise DomainError(f"not a unit vector (norm={norm!r})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class PlanePoint:
    """Plot coordinates in [-1, 1], the orthographic image of a unit vector."""

    u: float
    v: float

    def __post_init__(self):
        if self.u * self.u + self.v * self.v > 1.0 + UNIT_NORM_TOL:
            raise DomainError(f"point outside the unit disk: ({self.u}, {self.v})")


# Default reference direction: the camera axis.
CAMERA_AXIS = GazeVector(0.0, 0.0, 1.0)


def angles_to_unit_vector(angles: GazeAngles) -> GazeVector:
    """Convert pitch/yaw angles to a unit direction vector."""
    cp = math.cos(angles.pitch)
    return GazeVector(
        x=cp * math.sin(angles.yaw),
        y=math.sin(angles.pitch),
        z=cp * math.cos(angles.yaw),
    )


def vector_to_angles(v: GazeVector) -> GazeAngles:
    """Inverse of angles_to_unit_vector on the valid range."""
    return GazeAngles(pitch=math.asin(max(-1.0, min(1.0, v.y))), yaw=math.atan2(v.x, v.z))


def project_to_plane(v: GazeVector) -> PlanePoint:
    """Orthographic projection: drop the camera-axis component."""
    return PlanePoint(u=v.x, v=v.y)


def angular_distance(a: GazeVector, b: GazeVector) -> float:
    """Angle in radians between two unit vectors, in [0, pi]."""
    dot = a.x * b.x + a.y * b.y + a.z * b.z
    return math.acos(max(-1.0, min(1.0, dot)))


def classify_frame(pred: GazeVector, screen_ref: GazeVector, theta: float) -> int:
    """1 iff the predicted direction deviates from screen_ref by strictly more than theta.

    The boundary (distance exactly theta) maps to 0, so theta=pi is an
    all-negative labeler.
    """
    if not (0.0 < theta < math.pi):
        raise DomainError(f"theta must be in (0, pi): {theta}")
    return 1 if angular_distance(pred, screen_ref) > theta else 0


# -- vectorized counterparts used by the labeler, simulator and plot endpoint --


def angles_to_vectors(pitch: np.ndarray, yaw: np.ndarray) -> np.ndarray:
    """Vectorized angles_to_unit_vector; returns an (N, 3) array."""
    cp = np.cos(pitch)
    return np.stack([cp * np.sin(yaw), np.sin(pitch), cp * np.cos(yaw)], axis=-1)


def vectors_to_angles(vecs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized vector_to_angles; returns (pitch, yaw) arrays."""
    pitch = np.arcsin(np.clip(vecs[:, 1], -1.0, 1.0))
    yaw = np.arctan2(vecs[:, 0], vecs[:, 2])
    return pitch, yaw


def angular_distances(vecs: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """Angle of each row of an (N, 3) unit-vector array to a single unit vector."""
    return np.arccos(np.clip(vecs @ np.asarray(ref), -1.0, 1.0))
