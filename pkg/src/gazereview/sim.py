"""Seeded synthetic sessions and simulated proctors.

Everything here is a pure function of (config, seed).  Randomness uses
numpy's PCG64 via ``default_rng``; independent streams are derived from one
seed with ``SeedSequence(seed, spawn_key=(purpose,))`` where the purpose
ids are: 0 = session generation, 1 = proctor labeling, 2 = hybrid interval
verification, 3 = reference voting.  Repeat calls are bit-identical within
one implementation; bit-level identity across languages is a non-goal.

Angular noise rotates the true direction by an angle drawn from a
half-normal with scale sigma, truncated at 6 sigma, about a uniformly
random perpendicular axis.  The truncation bounds the on-screen spread so
a threshold of at least 6 sigma separates on-screen frames from look-away
events deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .geometry import vectors_to_angles
from .model import (
    EventMarker,
    GazeAngles,
    GazePrediction,
    LabelSequence,
    PositiveInterval,
    Session,
    SystemKind,
    extract_positive_intervals,
    intervals_to_labels,
    merge_interval_sets,
)

NOISE_TRUNCATION_SIGMAS = 6.0
#: spurious proctor events are short; frames drawn uniformly from [1, this]
SPURIOUS_MAX_FRAMES = 6

_STREAM_SESSION = 0
_STREAM_PROCTOR = 1
_STREAM_VERIFY = 2
_STREAM_VOTE = 3


def _rng(seed: int, purpose: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(purpose,)))


def derive_seed(base_seed: int, *tokens) -> int:
    """Portable 64-bit child seed for an entity (session index, proctor role)
    named by tokens; sha256-based so it is stable across platforms."""
    import hashlib

    material = f"{base_seed}:" + ":".join(str(t) for t in tokens)
    return int.from_bytes(hashlib.sha256(material.encode()).digest()[:8], "big")


@dataclass(frozen=True)
class ScenarioConfig:
    """Generative parameters for one synthetic session."""

    frame_count: int
    fps: float
    sigma_on: float  # angular noise (radians) while looking at the screen
    lookaway_rate: float  # events per minute
    duration_range: tuple[int, int]  # event length in frames, inclusive
    lookaway_angle_range: tuple[float, float]  # offset from screen axis, radians
    sigma_ml: float  # ML prediction noise, radians
    seed: int

    def __post_init__(self):
        d_min, d_max = self.duration_range
        a_min, a_max = self.lookaway_angle_range
        if self.frame_count <= 0 or self.fps <= 0:
            raise DomainError("frame_count and fps must be positive")
        if d_min < 1 or d_max < d_min:
            raise DomainError(f"bad duration_range {self.duration_range}")
        if a_min <= self.sigma_on or a_max < a_min:
            raise DomainError(f"bad lookaway_angle_range {self.lookaway_angle_range}")
        if self.sigma_on < 0 or self.sigma_ml < 0 or self.lookaway_rate < 0:
            raise DomainError("noise scales and rates must be non-negative")
        if (d_min + d_max) / 2 > self.frame_count:
            raise DomainError("expected event length exceeds session length")


@dataclass(frozen=True)
class ProctorProfile:
    """Behavioral parameters of one simulated proctor."""

    p_detect: float = 1.0  # chance a true event is flagged
    p_false_alarm: float = 0.0  # expected spurious events per minute
    boundary_jitter: int = 0  # max frames of start/end error
    p_verify_correct: float = 1.0  # chance a presented interval is judged correctly
    seed: int = 0

    def __post_init__(self):
        for p in (self.p_detect, self.p_verify_correct):
            if not (0.0 <= p <= 1.0):
                raise DomainError(f"probability out of [0, 1]: {p}")
        if self.p_false_alarm < 0 or self.boundary_jitter < 0:
            raise DomainError("p_false_alarm and boundary_jitter must be non-negative")


@dataclass(frozen=True)
class GroundTruth:
    labels: LabelSequence
    events: tuple[PositiveInterval, ...]


def _perturb(vecs: np.ndarray, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Rotate each unit row vector by a truncated half-normal angle about a
    uniformly random perpendicular axis."""
    if sigma == 0.0:
        return vecs
    n = vecs.shape[0]
    theta = np.minimum(np.abs(rng.normal(0.0, sigma, n)), NOISE_TRUNCATION_SIGMAS * sigma)
    raw = rng.normal(size=(n, 3))
    # component of raw perpendicular to each vector
    perp = raw - (np.sum(raw * vecs, axis=1, keepdims=True)) * vecs
    norms = np.linalg.norm(perp, axis=1, keepdims=True)
    # degenerate draws (raw parallel to v) are vanishingly rare; fall back to
    # a fixed perpendicular rather than resampling to keep the stream aligned
    bad = norms[:, 0] < 1e-12
    if bad.any():
        fallback = np.cross(vecs[bad], np.array([1.0, 0.0, 0.0]))
        fb_norm = np.linalg.norm(fallback, axis=1, keepdims=True)
        fallback = np.where(fb_norm > 1e-12, fallback / np.maximum(fb_norm, 1e-12), [0.0, 1.0, 0.0])
        perp[bad] = fallback
        norms[bad] = 1.0
    perp /= norms
    out = vecs * np.cos(theta)[:, None] + perp * np.sin(theta)[:, None]
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def _draw_events(cfg: ScenarioConfig, rng: np.random.Generator) -> list[PositiveInterval]:
    minutes = cfg.frame_count / (cfg.fps * 60.0)
    n_events = rng.poisson(cfg.lookaway_rate * minutes)
    d_min, d_max = cfg.duration_range
    events: list[PositiveInterval] = []
    for _ in range(n_events):
        # sequential placement with overlap rejection; crowded configs may
        # place fewer events than drawn
        for _attempt in range(100):
            dur = int(rng.integers(d_min, d_max + 1))
            if dur > cfg.frame_count:
                continue
            start = int(rng.integers(0, cfg.frame_count - dur + 1))
            cand = PositiveInterval(start, start + dur - 1)
            # reject adjacency too: abutting events would collapse into one
            # label run, breaking events == extract_positive_intervals(labels)
            if not any(cand.start <= e.end + 1 and e.start <= cand.end + 1 for e in events):
                events.append(cand)
                break
    return sorted(events, key=lambda e: e.start)


def generate_session(cfg: ScenarioConfig, session_id: str | None = None) -> tuple[Session, GroundTruth]:
    """Synthesize one session: seeded look-away events, true gaze directions,
    and noisy ML predictions."""
    rng = _rng(cfg.seed, _STREAM_SESSION)
    T = cfg.frame_count
    events = _draw_events(cfg, rng)

    truth_labels = intervals_to_labels(events, T).labels.copy()

    # on-screen truth: camera axis perturbed by sigma_on
    screen = np.tile(np.array([0.0, 0.0, 1.0]), (T, 1))
    true_dirs = _perturb(screen, cfg.sigma_on, rng)

    # each event holds one offset direction for its whole duration
    a_min, a_max = cfg.lookaway_angle_range
    for ev in events:
        offset = rng.uniform(a_min, a_max)
        azimuth = rng.uniform(0.0, 2.0 * math.pi)
        d = np.array(
            [
                math.sin(offset) * math.cos(azimuth),
                math.sin(offset) * math.sin(azimuth),
                math.cos(offset),
            ]
        )
        true_dirs[ev.start : ev.end + 1] = d

    pred_dirs = _perturb(true_dirs, cfg.sigma_ml, rng)
    pitch, yaw = vectors_to_angles(pred_dirs)

    sid = session_id if session_id is not None else f"sim-{cfg.seed:016x}"
    predictions = [
        GazePrediction(
            frame=t,
            t_ms=round(t * 1000.0 / cfg.fps),
            angles=GazeAngles(float(pitch[t]), float(yaw[t])),
            face_detected=True,
            confidence=1.0,
        )
        for t in range(T)
    ]
    markers = [EventMarker(frame=ev.start, kind="lookaway", note="synthetic event") for ev in events]
    session = Session(id=sid, frame_count=T, fps=cfg.fps, predictions=predictions, events=markers)
    gt = GroundTruth(
        labels=LabelSequence(truth_labels, SystemKind.REFERENCE), events=tuple(events)
    )
    return session, gt


def _jitter_clamp(ev: PositiveInterval, jitter: int, T: int, rng: np.random.Generator) -> PositiveInterval:
    if jitter == 0:
        return ev
    start = int(np.clip(ev.start + rng.integers(-jitter, jitter + 1), 0, T - 1))
    end = int(np.clip(ev.end + rng.integers(-jitter, jitter + 1), 0, T - 1))
    if end < start:
        start, end = end, start
    return PositiveInterval(start, end)


def simulate_proctor(gt: GroundTruth, profile: ProctorProfile, T: int, fps: float = 1.0) -> LabelSequence:
    """Human-only labeling: each true event is flagged with probability
    p_detect (endpoints jittered), plus spurious short events at
    p_false_alarm per minute."""
    rng = _rng(profile.seed, _STREAM_PROCTOR)
    found: list[PositiveInterval] = []
    for ev in gt.events:
        if rng.random() < profile.p_detect:
            found.append(_jitter_clamp(ev, profile.boundary_jitter, T, rng))
    minutes = T / (fps * 60.0)
    n_spurious = rng.poisson(profile.p_false_alarm * minutes)
    for _ in range(n_spurious):
        dur = int(rng.integers(1, SPURIOUS_MAX_FRAMES + 1))
        dur = min(dur, T)
        start = int(rng.integers(0, T - dur + 1))
        found.append(PositiveInterval(start, start + dur - 1))
    labels = intervals_to_labels(merge_interval_sets(found), T).labels
    return LabelSequence(labels, SystemKind.HUMAN_ONLY)


def _interval_is_true(iv: PositiveInterval, gt: GroundTruth) -> bool:
    return any(iv.overlaps(ev) for ev in gt.events)


def simulate_hybrid_proctor(
    gt: GroundTruth, ml: LabelSequence, profile: ProctorProfile, T: int, fps: float = 1.0
) -> LabelSequence:
    """Hybrid labeling: the proctor's own detections plus every ML-positive
    interval they verify as a true look-away (judged correctly with
    probability p_verify_correct)."""
    human = simulate_proctor(gt, profile, T, fps)
    rng = _rng(profile.seed, _STREAM_VERIFY)
    accepted: list[PositiveInterval] = []
    for iv in extract_positive_intervals(ml):
        truth = _interval_is_true(iv, gt)
        judged = truth if rng.random() < profile.p_verify_correct else not truth
        if judged:
            accepted.append(iv)
    merged = merge_interval_sets(extract_positive_intervals(human), accepted)
    return LabelSequence(intervals_to_labels(merged, T).labels, SystemKind.HYBRID)


def simulate_votes(review_set, gt: GroundTruth, profiles: list[ProctorProfile]):
    """Each of the K proctors judges each review interval (correctly with
    probability p_verify_correct); an interval is truly positive iff it
    overlaps a ground-truth event."""
    from .evaluation import IntervalVote, ReviewSet  # avoid a module cycle

    assert isinstance(review_set, ReviewSet)
    if not profiles:
        raise DomainError("need at least one proctor profile")
    per_proctor = []
    for profile in profiles:
        rng = _rng(profile.seed, _STREAM_VOTE)
        judgments = []
        for iv in review_set.intervals:
            truth = _interval_is_true(iv, gt)
            judged = truth if rng.random() < profile.p_verify_correct else not truth
            judgments.append(int(judged))
        per_proctor.append(judgments)
    return [
        IntervalVote(interval=iv, votes=tuple(per_proctor[k][i] for k in range(len(profiles))))
        for i, iv in enumerate(review_set.intervals)
    ]
