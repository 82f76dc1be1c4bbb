"""Core session data model: frame predictions, binary label sequences, and
interval algebra over them.

Intervals are inclusive frame ranges, not timestamps; conversion to time
happens only at the display boundary.  The frame count T is invariant
across labeling systems so the evaluation math lines up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError
from .geometry import GazeAngles


class SystemKind(Enum):
    """Which labeling system produced a sequence."""

    HUMAN_ONLY = "human"
    ML_ONLY = "ml"
    HYBRID = "hybrid"
    REFERENCE = "reference"


@dataclass(frozen=True)
class PositiveInterval:
    """A maximal run of positive frames, inclusive on both ends."""

    start: int
    end: int

    def __post_init__(self):
        if not (0 <= self.start <= self.end):
            raise DomainError(f"bad interval ({self.start}, {self.end})")

    def overlaps(self, other: "PositiveInterval") -> bool:
        return self.start <= other.end and other.start <= self.end


@dataclass(frozen=True)
class EventMarker:
    """A notable session event pinned to a frame, shown above the timeline."""

    frame: int
    kind: str
    note: str = ""


@dataclass(frozen=True)
class GazePrediction:
    """One frame's model output.  When face_detected is false the angles are
    still present but untrusted; policy for such frames lives in the labeler."""

    frame: int
    t_ms: int
    angles: GazeAngles
    face_detected: bool
    confidence: float

    def __post_init__(self):
        if not (0.0 <= self.confidence <= 1.0):
            raise DomainError(f"confidence out of [0, 1]: {self.confidence}")


class LabelSequence:
    """Binary vector over a session's T frames, tagged with its system."""

    def __init__(self, labels, system: SystemKind):
        arr = np.asarray(labels, dtype=np.uint8)
        if arr.ndim != 1:
            raise DomainError("labels must be a 1-D sequence")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise DomainError("labels must be 0/1")
        self.labels = arr
        self.labels.setflags(write=False)
        self.system = system

    def __len__(self):
        return int(self.labels.size)

    def __eq__(self, other):
        return (
            isinstance(other, LabelSequence)
            and self.system is other.system
            and np.array_equal(self.labels, other.labels)
        )

    def __repr__(self):
        return f"LabelSequence(system={self.system.value}, T={len(self)}, positives={int(self.labels.sum())})"


@dataclass
class Session:
    """A test session: T frames of predictions plus event markers."""

    id: str
    frame_count: int
    fps: float
    predictions: list[GazePrediction]
    events: list[EventMarker] = field(default_factory=list)

    def __post_init__(self):
        if self.frame_count <= 0:
            raise DomainError("frame_count must be positive")
        if self.fps <= 0:
            raise DomainError("fps must be positive")
        if len(self.predictions) != self.frame_count:
            raise DomainError(
                f"{len(self.predictions)} predictions for frame_count={self.frame_count}"
            )
        for i, p in enumerate(self.predictions):
            if p.frame != i:
                raise DomainError(f"prediction {i} carries frame index {p.frame}")
            expected_ms = round(i * 1000.0 / self.fps)
            if abs(p.t_ms - expected_ms) > 1:
                raise DomainError(
                    f"frame {i}: t_ms={p.t_ms} disagrees with fps grid ({expected_ms})"
                )
        for ev in self.events:
            if not (0 <= ev.frame < self.frame_count):
                raise DomainError(f"event frame {ev.frame} outside session")


# -- interval algebra ---------------------------------------------------------


def extract_positive_intervals(a: LabelSequence) -> list[PositiveInterval]:
    """Maximal runs of 1s, sorted, pairwise disjoint and non-adjacent."""
    return intervals_from_array(a.labels)


def intervals_from_array(labels: np.ndarray) -> list[PositiveInterval]:
    arr = np.asarray(labels, dtype=np.uint8)
    if arr.size == 0:
        return []
    padded = np.concatenate(([0], arr, [0]))
    diff = np.diff(padded.astype(np.int8))
    starts = np.flatnonzero(diff == 1)
    ends = np.flatnonzero(diff == -1) - 1
    return [PositiveInterval(int(s), int(e)) for s, e in zip(starts, ends)]


def intervals_to_labels(
    intervals: list[PositiveInterval], frame_count: int, system: SystemKind = SystemKind.REFERENCE
) -> LabelSequence:
    """Label vector whose 1s are exactly the frames covered by the intervals.

    Overlapping inputs union idempotently.
    """
    arr = np.zeros(frame_count, dtype=np.uint8)
    for iv in intervals:
        if not (0 <= iv.start <= iv.end < frame_count):
            raise DomainError(f"interval ({iv.start}, {iv.end}) outside [0, {frame_count})")
        arr[iv.start : iv.end + 1] = 1
    return LabelSequence(arr, system)


def merge_interval_sets(*sets: list[PositiveInterval]) -> list[PositiveInterval]:
    """Coalesced union of interval lists.

    Adjacent intervals (end + 1 == next start) merge into one: two abutting
    intervals are a single contiguous viewing unit for a proctor.
    """
    pool = sorted((iv for s in sets for iv in s), key=lambda iv: (iv.start, iv.end))
    merged: list[PositiveInterval] = []
    for iv in pool:
        if merged and iv.start <= merged[-1].end + 1:
            if iv.end > merged[-1].end:
                merged[-1] = PositiveInterval(merged[-1].start, iv.end)
        else:
            merged.append(iv)
    return merged
