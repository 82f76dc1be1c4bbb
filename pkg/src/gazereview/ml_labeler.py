"""The ML-only labeling system: per-frame angular thresholding of predicted
gaze directions, with explicit handling of frames where no face was detected
and optional erasure of short positive runs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .geometry import CAMERA_AXIS, GazeVector, angles_to_vectors, angular_distances
from .model import LabelSequence, Session, SystemKind, intervals_from_array


class MissingFacePolicy(Enum):
    """What label an untrusted (face-not-detected) frame receives."""

    TREAT_NEGATIVE = "treat_negative"
    TREAT_POSITIVE = "treat_positive"
    CARRY_FORWARD = "carry_forward"


@dataclass(frozen=True)
class MlLabelerConfig:
    # Default reference is the camera axis: absent per-deployment calibration
    # it is the only defensible "looking at the screen" direction.
    screen_ref: GazeVector = CAMERA_AXIS
    theta: float = 0.5
    min_run: int = 1
    missing_face_policy: MissingFacePolicy = MissingFacePolicy.TREAT_NEGATIVE

    def __post_init__(self):
        if not (0.0 < self.theta < math.pi):
            raise DomainError(f"theta must be in (0, pi): {self.theta}")
        if self.min_run < 0:
            raise DomainError(f"min_run must be non-negative: {self.min_run}")


def label_session_ml(session: Session, cfg: MlLabelerConfig) -> LabelSequence:
    """Threshold every frame's predicted direction against cfg.screen_ref.

    Untrusted frames follow cfg.missing_face_policy; afterwards every
    positive run shorter than cfg.min_run is erased (min_run 0 or 1 is a
    no-op).
    """
    pitch = np.array([p.angles.pitch for p in session.predictions])
    yaw = np.array([p.angles.yaw for p in session.predictions])
    trusted = np.array([p.face_detected for p in session.predictions], dtype=bool)

    vecs = angles_to_vectors(pitch, yaw)
    ref = cfg.screen_ref.as_array()
    labels = (angular_distances(vecs, ref) > cfg.theta).astype(np.uint8)

    if not trusted.all():
        if cfg.missing_face_policy is MissingFacePolicy.TREAT_NEGATIVE:
            labels[~trusted] = 0
        elif cfg.missing_face_policy is MissingFacePolicy.TREAT_POSITIVE:
            labels[~trusted] = 1
        else:  # carry forward the last trusted label; leading runs have none -> 0
            last = 0
            for t in range(labels.size):
                if trusted[t]:
                    last = int(labels[t])
                else:
                    labels[t] = last

    if cfg.min_run > 1:
        for iv in intervals_from_array(labels):
            if iv.end - iv.start + 1 < cfg.min_run:
                labels[iv.start : iv.end + 1] = 0

    return LabelSequence(labels, SystemKind.ML_ONLY)
