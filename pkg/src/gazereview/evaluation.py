"""Human-ML complementarity evaluation.

The review set for a session is the coalesced union of the positive
intervals of the human-only, ML-only and hybrid label sequences.  K
reviewers judge each review interval once; the majority opinion, expanded
back to frames, is the reference labeling.  Every frame outside the review
set is reference-negative by construction, which is why recall measured
against this reference is only an upper bound on true recall.

Per-session score = frame-level (precision, upper-bounded recall) counted
inside the review set.  Dataset-level value per system = mean over the
sessions where the metric is defined; undefined sessions are counted, not
imputed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .model import (
    LabelSequence,
    PositiveInterval,
    SystemKind,
    extract_positive_intervals,
    intervals_to_labels,
    merge_interval_sets,
)

#: the three systems under comparison (the reference is not scored)
SCORED_SYSTEMS = (SystemKind.HUMAN_ONLY, SystemKind.ML_ONLY, SystemKind.HYBRID)


@dataclass(frozen=True)
class ReviewSet:
    session_id: str
    intervals: tuple[PositiveInterval, ...]


@dataclass(frozen=True)
class IntervalVote:
    """One review interval and the K reviewers' binary judgments of it."""

    interval: PositiveInterval
    votes: tuple[int, ...]

    def __post_init__(self):
        if len(self.votes) < 1:
            raise DomainError("need at least one vote")
        if any(v not in (0, 1) for v in self.votes):
            raise DomainError("votes must be 0/1")


@dataclass(frozen=True)
class ReferenceLabeling:
    labels: LabelSequence
    covered: ReviewSet


@dataclass(frozen=True)
class SessionScore:
    tp: int
    fp: int
    fn: int

    @property
    def precision(self) -> float | None:
        return self.tp / (self.tp + self.fp) if self.tp + self.fp > 0 else None

    @property
    def recall_ub(self) -> float | None:
        return self.tp / (self.tp + self.fn) if self.tp + self.fn > 0 else None


@dataclass(frozen=True)
class SystemSummary:
    mean_precision: float | None
    mean_recall_ub: float | None
    n_defined_precision: int
    n_defined_recall: int


@dataclass(frozen=True)
class EvalReport:
    n_sessions: int
    per_system: dict[SystemKind, SystemSummary]
    holds_precision: bool
    holds_recall: bool

    def to_dict(self) -> dict:
        return {
            "n_sessions": self.n_sessions,
            "per_system": {
                kind.value: {
                    "mean_precision": s.mean_precision,
                    "mean_recall_ub": s.mean_recall_ub,
                    "n_defined_precision": s.n_defined_precision,
                    "n_defined_recall": s.n_defined_recall,
                }
                for kind, s in self.per_system.items()
            },
            "complementarity": {
                "holds_precision": self.holds_precision,
                "holds_recall": self.holds_recall,
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        per_system = {
            SystemKind(k): SystemSummary(
                mean_precision=v["mean_precision"],
                mean_recall_ub=v["mean_recall_ub"],
                n_defined_precision=v["n_defined_precision"],
                n_defined_recall=v["n_defined_recall"],
            )
            for k, v in d["per_system"].items()
        }
        return cls(
            n_sessions=d["n_sessions"],
            per_system=per_system,
            holds_precision=d["complementarity"]["holds_precision"],
            holds_recall=d["complementarity"]["holds_recall"],
        )


@dataclass
class SessionEvalInput:
    """Everything the evaluator needs for one session."""

    session_id: str
    frame_count: int
    labels: dict[SystemKind, LabelSequence]
    votes: list[IntervalVote] = field(default_factory=list)


def build_review_set(
    a_h: LabelSequence, a_m: LabelSequence, a_hm: LabelSequence, session_id: str = ""
) -> ReviewSet:
    """Coalesced union of the three systems' positive intervals."""
    if not (len(a_h) == len(a_m) == len(a_hm)):
        raise DomainError("label sequences have mismatched lengths")
    merged = merge_interval_sets(
        extract_positive_intervals(a_h),
        extract_positive_intervals(a_m),
        extract_positive_intervals(a_hm),
    )
    return ReviewSet(session_id=session_id, intervals=tuple(merged))


def majority_vote(vote: IntervalVote) -> int:
    """1 iff strictly more than half the votes are positive.

    Exact ties (even K) break negative: a tie is insufficient evidence of a
    violation, keeping the reference high-precision.
    """
    return 1 if 2 * sum(vote.votes) > len(vote.votes) else 0


def build_reference(
    review_set: ReviewSet, votes: list[IntervalVote], frame_count: int
) -> ReferenceLabeling:
    """Expand majority-positive review intervals to a frame-level reference.

    Frames outside the review set are 0: an interval negative under all
    three systems is never re-examined.
    """
    voted = {v.interval for v in votes}
    expected = set(review_set.intervals)
    if voted != expected:
        missing = expected - voted
        extra = voted - expected
        raise DomainError(f"votes do not cover the review set (missing={missing}, extra={extra})")
    positive = [v.interval for v in votes if majority_vote(v)]
    labels = intervals_to_labels(positive, frame_count, SystemKind.REFERENCE)
    return ReferenceLabeling(labels=labels, covered=review_set)


def score_session(a: LabelSequence, ref: ReferenceLabeling) -> SessionScore:
    """Frame-level confusion counts restricted to the review set."""
    if len(a) != len(ref.labels):
        raise DomainError("label sequence and reference have mismatched lengths")
    covered = intervals_to_labels(list(ref.covered.intervals), len(a)).labels.astype(bool)
    av = a.labels.astype(bool) & covered
    rv = ref.labels.labels.astype(bool)
    tp = int((av & rv).sum())
    fp = int((av & ~rv).sum())
    fn = int((~av & rv & covered).sum())
    return SessionScore(tp=tp, fp=fp, fn=fn)


def evaluate(dataset: list[SessionEvalInput]) -> EvalReport:
    """Score every session against its majority-vote reference and average
    per system; flag complementarity per metric (strict inequality)."""
    if not dataset:
        raise DomainError("empty dataset")

    precisions: dict[SystemKind, list[float]] = {k: [] for k in SCORED_SYSTEMS}
    recalls: dict[SystemKind, list[float]] = {k: [] for k in SCORED_SYSTEMS}

    for item in dataset:
        for kind in SCORED_SYSTEMS:
            if kind not in item.labels:
                raise DomainError(f"session {item.session_id} lacks {kind.value} labels")
        review = build_review_set(
            item.labels[SystemKind.HUMAN_ONLY],
            item.labels[SystemKind.ML_ONLY],
            item.labels[SystemKind.HYBRID],
            session_id=item.session_id,
        )
        ref = build_reference(review, item.votes, item.frame_count)
        for kind in SCORED_SYSTEMS:
            score = score_session(item.labels[kind], ref)
            if score.precision is not None:
                precisions[kind].append(score.precision)
            if score.recall_ub is not None:
                recalls[kind].append(score.recall_ub)

    per_system = {
        kind: SystemSummary(
            mean_precision=float(np.mean(precisions[kind])) if precisions[kind] else None,
            mean_recall_ub=float(np.mean(recalls[kind])) if recalls[kind] else None,
            n_defined_precision=len(precisions[kind]),
            n_defined_recall=len(recalls[kind]),
        )
        for kind in SCORED_SYSTEMS
    }

    def _holds(metric) -> bool:
        hybrid = metric(per_system[SystemKind.HYBRID])
        solo = [metric(per_system[SystemKind.HUMAN_ONLY]), metric(per_system[SystemKind.ML_ONLY])]
        if hybrid is None or any(v is None for v in solo):
            return False
        return hybrid > max(solo)

    return EvalReport(
        n_sessions=len(dataset),
        per_system=per_system,
        holds_precision=_holds(lambda s: s.mean_precision),
        holds_recall=_holds(lambda s: s.mean_recall_ub),
    )


def format_report(report: EvalReport) -> str:
    """Plain-text table rendering of an EvalReport."""
    lines = [f"sessions: {report.n_sessions}"]
    lines.append(f"{'system':<12} {'precision':>10} {'recall_ub':>10} {'n_prec':>7} {'n_rec':>6}")
    for kind in SCORED_SYSTEMS:
        s = report.per_system[kind]
        fmt = lambda v: f"{v:.4f}" if v is not None else "--"
        lines.append(
            f"{kind.value:<12} {fmt(s.mean_precision):>10} {fmt(s.mean_recall_ub):>10}"
            f" {s.n_defined_precision:>7} {s.n_defined_recall:>6}"
        )
    lines.append(
        "complementarity: "
        f"precision={'yes' if report.holds_precision else 'no'}, "
        f"recall={'yes' if report.holds_recall else 'no'}"
    )
    return "\n".join(lines)
