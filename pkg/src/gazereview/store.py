"""File formats and persistence.

Directory layout under the store root:

    sessions/<id>/manifest.json      session metadata + predictions checksum
    sessions/<id>/predictions.jsonl  one JSON record per frame
    sessions/<id>/labels/<system>.json  interval-form labels with a version
    sessions/<id>/votes.json         interval votes for the reference build
    sessions/<id>/ground_truth.json  synthetic sessions only
    reports/<report_id>.json         evaluation reports (id = content hash)

Prediction records are UTF-8 JSON lines with keys ``frame``, ``t_ms``,
``pitch``, ``yaw``, ``face``, ``conf``; angles are radians serialized as
shortest round-trip decimals (always >= 9 significant digits of fidelity).
All writes are atomic (write temp file, then rename).  Predictions are
never mutated after ingestion; labels, votes and reports are append/replace
with optimistic versioning on labels.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from pathlib import Path

from .errors import ConflictError, CorruptFileError, DomainError, NotFoundError, ParseError
from .evaluation import EvalReport, IntervalVote
from .geometry import GazeAngles
from .model import (
    GazePrediction,
    LabelSequence,
    PositiveInterval,
    Session,
    SystemKind,
    extract_positive_intervals,
    intervals_to_labels,
)
from .sim import GroundTruth

#: created_at for synthetic sessions; fixed so seeded runs are byte-identical
SYNTHETIC_CREATED_AT = "2000-01-01T00:00:00Z"

PREDICTION_KEYS = ("frame", "t_ms", "pitch", "yaw", "face", "conf")


@dataclass(frozen=True)
class SessionManifest:
    id: str
    frame_count: int
    fps: float
    created_at: str
    source: str  # "ingested" | "synthetic"
    video_uri: str | None = None
    predictions_sha256: str | None = None

    def __post_init__(self):
        if self.frame_count <= 0 or self.fps <= 0:
            raise DomainError("frame_count and fps must be positive")
        if self.source not in ("ingested", "synthetic"):
            raise DomainError(f"unknown source {self.source!r}")


# -- prediction line format ---------------------------------------------------


def format_prediction(p: GazePrediction) -> str:
    return json.dumps(
        {
            "frame": p.frame,
            "t_ms": p.t_ms,
            "pitch": p.angles.pitch,
            "yaw": p.angles.yaw,
            "face": p.face_detected,
            "conf": p.confidence,
        },
        separators=(",", ":"),
    )


def parse_predictions(lines) -> list[GazePrediction]:
    """Parse and validate line-delimited prediction records.

    Enforces monotonic contiguous frame indices starting at 0, angle
    ranges, and confidence in [0, 1]; errors name the offending line.
    """
    out: list[GazePrediction] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(f"invalid JSON: {e.msg}", line=lineno) from e
        if not isinstance(rec, dict):
            raise ParseError("record is not an object", line=lineno)
        missing = [k for k in PREDICTION_KEYS if k not in rec]
        if missing:
            raise ParseError(f"missing keys {missing}", line=lineno)
        frame = rec["frame"]
        expected = len(out)
        if frame != expected:
            if any(p.frame == frame for p in out):
                raise ParseError(f"duplicate frame index {frame}", line=lineno)
            raise ParseError(f"non-contiguous frame index {frame} (expected {expected})", line=lineno)
        try:
            angles = GazeAngles(float(rec["pitch"]), float(rec["yaw"]))
            pred = GazePrediction(
                frame=frame,
                t_ms=int(rec["t_ms"]),
                angles=angles,
                face_detected=bool(rec["face"]),
                confidence=float(rec["conf"]),
            )
        except DomainError as e:
            raise ParseError(str(e), line=lineno) from e
        out.append(pred)
    return out


def write_predictions(predictions: list[GazePrediction]) -> str:
    return "".join(format_prediction(p) + "\n" for p in predictions)


# -- store --------------------------------------------------------------------


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _atomic_write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class Store:
    """Directory-backed session store; human-inspectable, no database."""

    def __init__(self, root):
        self.root = Path(root)

    # paths
    def _session_dir(self, session_id: str) -> Path:
        return self.root / "sessions" / session_id

    def _require_session_dir(self, session_id: str) -> Path:
        d = self._session_dir(session_id)
        if not (d / "manifest.json").exists():
            raise NotFoundError(f"unknown session {session_id!r}")
        return d

    def list_sessions(self) -> list[SessionManifest]:
        base = self.root / "sessions"
        if not base.exists():
            return []
        out = []
        for d in sorted(base.iterdir()):
            if (d / "manifest.json").exists():
                out.append(self.load_manifest(d.name))
        return out

    # sessions
    def save_session(self, session: Session, source: str, created_at: str | None = None,
                     video_uri: str | None = None):
        if created_at is None:
            created_at = SYNTHETIC_CREATED_AT if source == "synthetic" else _utc_now()
        body = write_predictions(session.predictions)
        manifest = SessionManifest(
            id=session.id,
            frame_count=session.frame_count,
            fps=session.fps,
            created_at=created_at,
            source=source,
            video_uri=video_uri,
            predictions_sha256=_sha256(body),
        )
        d = self._session_dir(session.id)
        _atomic_write(d / "predictions.jsonl", body)
        _atomic_write(
            d / "manifest.json",
            _dumps(
                {
                    "id": manifest.id,
                    "frame_count": manifest.frame_count,
                    "fps": manifest.fps,
                    "created_at": manifest.created_at,
                    "source": manifest.source,
                    "video_uri": manifest.video_uri,
                    "predictions_sha256": manifest.predictions_sha256,
                }
            ),
        )
        if session.events:
            _atomic_write(
                d / "events.json",
                _dumps([{"frame": e.frame, "kind": e.kind, "note": e.note} for e in session.events]),
            )
        return manifest

    def load_manifest(self, session_id: str) -> SessionManifest:
        d = self._require_session_dir(session_id)
        rec = json.loads((d / "manifest.json").read_text(encoding="utf-8"))
        return SessionManifest(
            id=rec["id"],
            frame_count=rec["frame_count"],
            fps=rec["fps"],
            created_at=rec["created_at"],
            source=rec["source"],
            video_uri=rec.get("video_uri"),
            predictions_sha256=rec.get("predictions_sha256"),
        )

    def load_session(self, session_id: str) -> Session:
        manifest = self.load_manifest(session_id)
        d = self._session_dir(session_id)
        body = (d / "predictions.jsonl").read_text(encoding="utf-8")
        if manifest.predictions_sha256 and _sha256(body) != manifest.predictions_sha256:
            raise CorruptFileError(f"predictions checksum mismatch for session {session_id!r}")
        predictions = parse_predictions(body.splitlines())
        events = []
        if (d / "events.json").exists():
            from .model import EventMarker

            events = [
                EventMarker(frame=e["frame"], kind=e["kind"], note=e.get("note", ""))
                for e in json.loads((d / "events.json").read_text(encoding="utf-8"))
            ]
        return Session(
            id=manifest.id,
            frame_count=manifest.frame_count,
            fps=manifest.fps,
            predictions=predictions,
            events=events,
        )

    # labels: stored as intervals + T, with an optimistic version counter
    def _labels_path(self, session_id: str, system: SystemKind) -> Path:
        return self._session_dir(session_id) / "labels" / f"{system.value}.json"

    def save_labels(self, session_id: str, seq: LabelSequence, expected_version: int | None = None) -> int:
        self._require_session_dir(session_id)
        path = self._labels_path(session_id, seq.system)
        current = 0
        if path.exists():
            current = json.loads(path.read_text(encoding="utf-8")).get("version", 0)
        if expected_version is not None and expected_version != current:
            raise ConflictError(
                f"labels for {seq.system.value} are at version {current}, not {expected_version}",
                current_version=current,
            )
        intervals = extract_positive_intervals(seq)
        _atomic_write(
            path,
            _dumps(
                {
                    "system": seq.system.value,
                    "frame_count": len(seq),
                    "intervals": [[iv.start, iv.end] for iv in intervals],
                    "version": current + 1,
                }
            ),
        )
        return current + 1

    def load_labels(self, session_id: str, system: SystemKind) -> tuple[LabelSequence, int]:
        self._require_session_dir(session_id)
        path = self._labels_path(session_id, system)
        if not path.exists():
            raise NotFoundError(f"no {system.value} labels for session {session_id!r}")
        rec = json.loads(path.read_text(encoding="utf-8"))
        intervals = [PositiveInterval(s, e) for s, e in rec["intervals"]]
        seq = LabelSequence(intervals_to_labels(intervals, rec["frame_count"]).labels, system)
        return seq, rec.get("version", 1)

    # votes
    def save_votes(self, session_id: str, votes: list[IntervalVote]):
        d = self._require_session_dir(session_id)
        _atomic_write(
            d / "votes.json",
            _dumps(
                [
                    {"interval": [v.interval.start, v.interval.end], "votes": list(v.votes)}
                    for v in votes
                ]
            ),
        )

    def load_votes(self, session_id: str) -> list[IntervalVote]:
        d = self._require_session_dir(session_id)
        path = d / "votes.json"
        if not path.exists():
            raise NotFoundError(f"no votes for session {session_id!r}")
        return [
            IntervalVote(interval=PositiveInterval(*rec["interval"]), votes=tuple(rec["votes"]))
            for rec in json.loads(path.read_text(encoding="utf-8"))
        ]

    # ground truth (synthetic sessions)
    def save_ground_truth(self, session_id: str, gt: GroundTruth):
        d = self._require_session_dir(session_id)
        _atomic_write(
            d / "ground_truth.json",
            _dumps(
                {
                    "frame_count": len(gt.labels),
                    "events": [[ev.start, ev.end] for ev in gt.events],
                }
            ),
        )

    def load_ground_truth(self, session_id: str) -> GroundTruth:
        d = self._require_session_dir(session_id)
        path = d / "ground_truth.json"
        if not path.exists():
            raise NotFoundError(f"no ground truth for session {session_id!r}")
        rec = json.loads(path.read_text(encoding="utf-8"))
        events = tuple(PositiveInterval(s, e) for s, e in rec["events"])
        labels = intervals_to_labels(list(events), rec["frame_count"]).labels
        return GroundTruth(labels=LabelSequence(labels, SystemKind.REFERENCE), events=events)

    # reports: content-addressed so seeded runs are byte-identical
    def save_report(self, report: EvalReport) -> str:
        body = _dumps(report.to_dict())
        report_id = _sha256(body)[:16]
        _atomic_write(self.root / "reports" / f"{report_id}.json", body)
        return report_id

    def load_report(self, report_id: str) -> EvalReport:
        path = self.root / "reports" / f"{report_id}.json"
        if not path.exists():
            raise NotFoundError(f"unknown report {report_id!r}")
        return EvalReport.from_dict(json.loads(path.read_text(encoding="utf-8")))

    def list_reports(self) -> list[str]:
        base = self.root / "reports"
        if not base.exists():
            return []
        return sorted(p.stem for p in base.glob("*.json"))


def _utc_now() -> str:
    from datetime import datetime, timezone

    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
