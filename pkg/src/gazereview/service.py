"""HTTP/JSON service over the session store.

Exposes sessions, precomputed gaze-plot projections, region queries, label
submission with optimistic versioning, votes, and evaluation runs.  All
session-scoped responses carry frame_count and fps so clients never infer
them.  Sessions' predictions are immutable once stored, so plot data and
grid indexes are cached per session.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field

from .errors import (
    ConflictError,
    CorruptFileError,
    DomainError,
    GazeReviewError,
    NotFoundError,
    ParseError,
)
from .evaluation import (
    IntervalVote,
    SessionEvalInput,
    evaluate,
)
from .geometry import angles_to_vectors
from .ml_labeler import MissingFacePolicy, MlLabelerConfig, label_session_ml
from .model import LabelSequence, PositiveInterval, SystemKind, intervals_to_labels
from .regions import (
    BRUTE_FORCE_THRESHOLD,
    DEFAULT_GRID_SIZE,
    GridIndex,
    PlotPoints,
    Polygon,
    Rectangle,
    build_result,
)
from .store import Store


class RectangleBody(BaseModel):
    type: Literal["rectangle"]
    u_min: float
    u_max: float
    v_min: float
    v_max: float


class PolygonBody(BaseModel):
    type: Literal["polygon"]
    vertices: list[tuple[float, float]]


class RegionQueryBody(BaseModel):
    shape: RectangleBody | PolygonBody = Field(discriminator="type")
    include_untrusted: bool = False


class LabelsBody(BaseModel):
    intervals: list[tuple[int, int]]
    version: int = 0  # version the client last saw; 0 = creating


class VoteBody(BaseModel):
    interval: tuple[int, int]
    votes: list[int]


class VotesBody(BaseModel):
    votes: list[VoteBody]


class MlConfigBody(BaseModel):
    theta: float
    ref_pitch: float = 0.0
    ref_yaw: float = 0.0
    min_run: int = 1
    missing_face_policy: str = "treat_negative"


class EvaluationBody(BaseModel):
    session_ids: list[str]
    k: int = 3
    ml_config: MlConfigBody | None = None


def _to_region(shape: RectangleBody | PolygonBody):
    if isinstance(shape, RectangleBody):
        return Rectangle(shape.u_min, shape.u_max, shape.v_min, shape.v_max)
    return Polygon(tuple((float(u), float(v)) for u, v in shape.vertices))


def _ml_config(body: MlConfigBody) -> MlLabelerConfig:
    from .geometry import GazeAngles, angles_to_unit_vector

    ref = angles_to_unit_vector(GazeAngles(body.ref_pitch, body.ref_yaw))
    return MlLabelerConfig(
        screen_ref=ref,
        theta=body.theta,
        min_run=body.min_run,
        missing_face_policy=MissingFacePolicy(body.missing_face_policy),
    )


def _manifest_dict(m) -> dict:
    return {
        "id": m.id,
        "frame_count": m.frame_count,
        "fps": m.fps,
        "created_at": m.created_at,
        "source": m.source,
        "video_uri": m.video_uri,
    }


def create_app(store_root, grid_size: int = DEFAULT_GRID_SIZE,
               brute_force_threshold: int = BRUTE_FORCE_THRESHOLD) -> FastAPI:
    app = FastAPI(title="gazereview")
    store = Store(store_root)
    plot_cache: dict[tuple[str, bool], PlotPoints] = {}
    index_cache: dict[tuple[str, bool], GridIndex] = {}

    @app.exception_handler(GazeReviewError)
    async def _domain_error(request, exc):
        from fastapi.responses import JSONResponse

        if isinstance(exc, NotFoundError):
            status = 404
        elif isinstance(exc, ConflictError):
            status = 409
        elif isinstance(exc, (DomainError, ParseError)):
            status = 422
        elif isinstance(exc, CorruptFileError):
            status = 500
        else:
            status = 500
        detail = {"error": str(exc)}
        if isinstance(exc, ConflictError) and exc.current_version is not None:
            detail["current_version"] = exc.current_version
        return JSONResponse(status_code=status, content=detail)

    def _plot_points(session_id: str, include_untrusted: bool) -> PlotPoints:
        key = (session_id, include_untrusted)
        if key not in plot_cache:
            session = store.load_session(session_id)
            preds = session.predictions
            if not include_untrusted:
                preds = [p for p in preds if p.face_detected]
            if preds:
                pitch = np.array([p.angles.pitch for p in preds])
                yaw = np.array([p.angles.yaw for p in preds])
                vecs = angles_to_vectors(pitch, yaw)
                pts = PlotPoints(
                    frames=np.array([p.frame for p in preds], dtype=int),
                    u=vecs[:, 0],
                    v=vecs[:, 1],
                )
            else:
                pts = PlotPoints(frames=np.array([], dtype=int), u=np.array([]), v=np.array([]))
            plot_cache[key] = pts
        return plot_cache[key]

    def _index(session_id: str, include_untrusted: bool) -> GridIndex:
        key = (session_id, include_untrusted)
        if key not in index_cache:
            index_cache[key] = GridIndex(
                _plot_points(session_id, include_untrusted),
                grid_size=grid_size,
                brute_force_threshold=brute_force_threshold,
            )
        return index_cache[key]

    @app.get("/api/sessions")
    def list_sessions():
        return [_manifest_dict(m) for m in store.list_sessions()]

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        return _manifest_dict(store.load_manifest(session_id))

    @app.get("/api/sessions/{session_id}/plot")
    def get_plot(session_id: str, include_untrusted: bool = Query(default=False)):
        manifest = store.load_manifest(session_id)
        pts = _plot_points(session_id, include_untrusted)
        session = store.load_session(session_id)
        face = {p.frame: p.face_detected for p in session.predictions}
        return {
            "frame_count": manifest.frame_count,
            "fps": manifest.fps,
            "points": [
                {
                    "frame": int(pts.frames[i]),
                    "u": float(pts.u[i]),
                    "v": float(pts.v[i]),
                    "face": face[int(pts.frames[i])],
                }
                for i in range(pts.frames.size)
            ],
            "events": [
                {"frame": e.frame, "kind": e.kind, "note": e.note} for e in session.events
            ],
        }

    @app.post("/api/sessions/{session_id}/region-query")
    def region_query(session_id: str, body: RegionQueryBody):
        manifest = store.load_manifest(session_id)
        region = _to_region(body.shape)
        frames = _index(session_id, body.include_untrusted).query(region)
        result = build_result(frames, manifest.frame_count, manifest.fps)
        return {
            "frame_count": manifest.frame_count,
            "fps": manifest.fps,
            "frames": result.frames,
            "highlight_ranges": [[iv.start, iv.end] for iv in result.highlight_ranges],
            "time_ranges_ms": [list(t) for t in result.time_ranges_ms],
        }

    def _system(system: str) -> SystemKind:
        try:
            return SystemKind(system)
        except ValueError:
            raise HTTPException(status_code=404, detail=f"unknown system {system!r}")

    @app.get("/api/sessions/{session_id}/labels/{system}")
    def get_labels(session_id: str, system: str):
        kind = _system(system)
        manifest = store.load_manifest(session_id)
        seq, version = store.load_labels(session_id, kind)
        from .model import extract_positive_intervals

        return {
            "system": kind.value,
            "frame_count": manifest.frame_count,
            "fps": manifest.fps,
            "intervals": [[iv.start, iv.end] for iv in extract_positive_intervals(seq)],
            "version": version,
        }

    @app.put("/api/sessions/{session_id}/labels/{system}")
    def put_labels(session_id: str, system: str, body: LabelsBody):
        kind = _system(system)
        manifest = store.load_manifest(session_id)
        intervals = [PositiveInterval(s, e) for s, e in body.intervals]
        seq = LabelSequence(intervals_to_labels(intervals, manifest.frame_count).labels, kind)
        version = store.save_labels(session_id, seq, expected_version=body.version)
        return {"system": kind.value, "frame_count": manifest.frame_count,
                "fps": manifest.fps, "version": version}

    @app.post("/api/sessions/{session_id}/votes")
    def post_votes(session_id: str, body: VotesBody):
        store.load_manifest(session_id)
        votes = [
            IntervalVote(interval=PositiveInterval(*v.interval), votes=tuple(v.votes))
            for v in body.votes
        ]
        store.save_votes(session_id, votes)
        return {"n_votes": len(votes)}

    @app.post("/api/evaluations")
    def post_evaluation(body: EvaluationBody):
        if not body.session_ids:
            raise DomainError("session_ids must be non-empty")
        dataset = []
        for sid in body.session_ids:
            manifest = store.load_manifest(sid)
            if body.ml_config is not None:
                session = store.load_session(sid)
                ml = label_session_ml(session, _ml_config(body.ml_config))
                store.save_labels(sid, ml)
            labels = {}
            for kind in (SystemKind.HUMAN_ONLY, SystemKind.ML_ONLY, SystemKind.HYBRID):
                labels[kind], _ = store.load_labels(sid, kind)
            votes = store.load_votes(sid)
            for v in votes:
                if len(v.votes) != body.k:
                    raise DomainError(
                        f"session {sid}: vote has {len(v.votes)} judgments, expected k={body.k}"
                    )
            dataset.append(
                SessionEvalInput(
                    session_id=sid,
                    frame_count=manifest.frame_count,
                    labels=labels,
                    votes=votes,
                )
            )
        report = evaluate(dataset)
        report_id = store.save_report(report)
        return {"report_id": report_id}

    @app.get("/api/evaluations/{report_id}")
    def get_evaluation(report_id: str):
        return store.load_report(report_id).to_dict()

    return app
