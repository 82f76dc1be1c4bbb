import math

import numpy as np
import pytest

from gazereview.geometry import (
    CAMERA_AXIS,
    GazeAngles,
    angles_to_unit_vector,
    classify_frame,
)
from gazereview.ml_labeler import MissingFacePolicy, MlLabelerConfig, label_session_ml
from gazereview.model import GazePrediction, Session, SystemKind


def make_session(angle_list, faces=None, fps=10.0):
    faces = faces if faces is not None else [True] * len(angle_list)
    preds = [
        GazePrediction(
            frame=i,
            t_ms=round(i * 1000.0 / fps),
            angles=GazeAngles(p, y),
            face_detected=faces[i],
            confidence=1.0,
        )
        for i, (p, y) in enumerate(angle_list)
    ]
    return Session(id="s", frame_count=len(preds), fps=fps, predictions=preds)


def test_all_on_screen_is_all_zero():
    session = make_session([(0.0, 0.0)] * 6)
    out = label_session_ml(session, MlLabelerConfig(theta=0.3))
    assert out.system is SystemKind.ML_ONLY
    assert not out.labels.any()


def test_matches_per_frame_oracle():
    rng = np.random.default_rng(17)
    angles = [
        (rng.uniform(-math.pi / 2, math.pi / 2), rng.uniform(-math.pi, math.pi))
        for _ in range(200)
    ]
    session = make_session(angles)
    cfg = MlLabelerConfig(theta=0.7, min_run=0)
    out = label_session_ml(session, cfg)
    for i, (p, y) in enumerate(angles):
        expected = classify_frame(angles_to_unit_vector(GazeAngles(p, y)), CAMERA_AXIS, 0.7)
        assert out.labels[i] == expected


def test_short_run_erasure():
    # pattern [0,1,0,1,1,1] with min_run=2 -> [0,0,0,1,1,1]
    away = (1.0, 0.0)
    on = (0.0, 0.0)
    session = make_session([on, away, on, away, away, away])
    out = label_session_ml(session, MlLabelerConfig(theta=0.3, min_run=2))
    assert list(out.labels) == [0, 0, 0, 1, 1, 1]


def test_min_run_never_creates_positives():
    rng = np.random.default_rng(23)
    angles = [
        (rng.uniform(-math.pi / 2, math.pi / 2), rng.uniform(-math.pi, math.pi))
        for _ in range(100)
    ]
    session = make_session(angles)
    base = label_session_ml(session, MlLabelerConfig(theta=0.5, min_run=1))
    smoothed = label_session_ml(session, MlLabelerConfig(theta=0.5, min_run=4))
    assert (smoothed.labels <= base.labels).all()


def test_monotone_in_theta():
    rng = np.random.default_rng(29)
    angles = [
        (rng.uniform(-math.pi / 2, math.pi / 2), rng.uniform(-math.pi, math.pi))
        for _ in range(150)
    ]
    session = make_session(angles)
    lo = label_session_ml(session, MlLabelerConfig(theta=0.4))
    hi = label_session_ml(session, MlLabelerConfig(theta=0.9))
    assert (hi.labels <= lo.labels).all()


@pytest.mark.parametrize(
    "policy,expected",
    [
        (MissingFacePolicy.TREAT_NEGATIVE, [0, 0, 1, 0, 1]),
        (MissingFacePolicy.TREAT_POSITIVE, [1, 0, 1, 1, 1]),
        (MissingFacePolicy.CARRY_FORWARD, [0, 0, 1, 1, 1]),
    ],
)
def test_missing_face_policies(policy, expected):
    away = (1.0, 0.0)
    on = (0.0, 0.0)
    # frames: untrusted, trusted-on, trusted-away, untrusted, trusted-away
    session = make_session([away, on, away, on, away],
                           faces=[False, True, True, False, True])
    out = label_session_ml(session, MlLabelerConfig(theta=0.3, missing_face_policy=policy))
    assert list(out.labels) == expected


def test_carry_forward_leading_run_is_negative():
    away = (1.0, 0.0)
    session = make_session([away, away, away], faces=[False, False, True])
    out = label_session_ml(
        session, MlLabelerConfig(theta=0.3, missing_face_policy=MissingFacePolicy.CARRY_FORWARD)
    )
    assert list(out.labels) == [0, 0, 1]
