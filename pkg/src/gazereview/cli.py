"""Operator command line: ingestion, simulation, ML labeling, evaluation,
serving, and report export.

Exit codes: 0 success, 2 usage error, 3 resource not found, 4 invalid
input/config, 5 store conflict or corruption.  Errors print a single
``error: ...`` line on stderr.  All randomness is controlled by seed flags.
"""

from __future__ import annotations

import json
import sys
from dataclasses import replace
from pathlib import Path

import click

from .errors import (
    ConflictError,
    CorruptFileError,
    DomainError,
    NotFoundError,
    ParseError,
)
from .evaluation import SessionEvalInput, build_review_set, evaluate, format_report
from .geometry import GazeAngles, angles_to_unit_vector
from .ml_labeler import MissingFacePolicy, MlLabelerConfig, label_session_ml
from .model import Session, SystemKind
from .sim import (
    ProctorProfile,
    ScenarioConfig,
    derive_seed,
    generate_session,
    simulate_hybrid_proctor,
    simulate_proctor,
    simulate_votes,
)
from .store import Store, parse_predictions

EXIT_NOT_FOUND = 3
EXIT_INVALID = 4
EXIT_STORE = 5


def _fail(code: int, exc: Exception):
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _run(fn):
    try:
        fn()
    except NotFoundError as e:
        _fail(EXIT_NOT_FOUND, e)
    except (DomainError, ParseError, json.JSONDecodeError, OSError) as e:
        _fail(EXIT_INVALID, e)
    except (ConflictError, CorruptFileError) as e:
        _fail(EXIT_STORE, e)


@click.group()
def main():
    """Gaze review toolkit."""


@main.command()
@click.argument("predictions_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--id", "session_id", required=True)
@click.option("--fps", type=float, required=True)
@click.option("--video-uri", default=None)
@click.option("--store", "store_root", required=True, type=click.Path(file_okay=False))
def ingest(predictions_file, session_id, fps, video_uri, store_root):
    """Create a session from a line-delimited predictions file."""

    def go():
        lines = Path(predictions_file).read_text(encoding="utf-8").splitlines()
        predictions = parse_predictions(lines)
        session = Session(id=session_id, frame_count=len(predictions), fps=fps,
                          predictions=predictions)
        Store(store_root).save_session(session, source="ingested", video_uri=video_uri)
        click.echo(f"ingested session {session_id} ({len(predictions)} frames)")

    _run(go)


def _load_scenario(path: str, seed: int) -> ScenarioConfig:
    cfg = json.loads(Path(path).read_text(encoding="utf-8"))
    return ScenarioConfig(
        frame_count=cfg["frame_count"],
        fps=cfg["fps"],
        sigma_on=cfg["sigma_on"],
        lookaway_rate=cfg["lookaway_rate"],
        duration_range=tuple(cfg["duration_range"]),
        lookaway_angle_range=tuple(cfg["lookaway_angle_range"]),
        sigma_ml=cfg["sigma_ml"],
        seed=seed,
    )


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "n_sessions", type=int, default=1, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--store", "store_root", required=True, type=click.Path(file_okay=False))
def simulate(config_path, n_sessions, seed, store_root):
    """Generate N synthetic sessions with ground truth."""

    def go():
        store = Store(store_root)
        for i in range(n_sessions):
            cfg = _load_scenario(config_path, derive_seed(seed, "session", i))
            sid = f"sim-{seed}-{i:04d}"
            session, gt = generate_session(cfg, session_id=sid)
            store.save_session(session, source="synthetic")
            store.save_ground_truth(sid, gt)
            click.echo(f"wrote {sid} ({session.frame_count} frames, {len(gt.events)} events)")

    _run(go)


@main.command("label-ml")
@click.option("--session", "session_id", required=True)
@click.option("--theta", type=float, required=True)
@click.option("--ref-pitch", type=float, default=0.0, show_default=True)
@click.option("--ref-yaw", type=float, default=0.0, show_default=True)
@click.option("--min-run", type=int, default=1, show_default=True)
@click.option("--missing-face", type=click.Choice([p.value for p in MissingFacePolicy]),
              default=MissingFacePolicy.TREAT_NEGATIVE.value, show_default=True)
@click.option("--store", "store_root", required=True, type=click.Path(file_okay=False))
def label_ml(session_id, theta, ref_pitch, ref_yaw, min_run, missing_face, store_root):
    """Write ML-only labels for a session by angular thresholding."""

    def go():
        store = Store(store_root)
        session = store.load_session(session_id)
        cfg = MlLabelerConfig(
            screen_ref=angles_to_unit_vector(GazeAngles(ref_pitch, ref_yaw)),
            theta=theta,
            min_run=min_run,
            missing_face_policy=MissingFacePolicy(missing_face),
        )
        seq = label_session_ml(session, cfg)
        store.save_labels(session_id, seq)
        click.echo(f"labeled {session_id}: {int(seq.labels.sum())} positive frames")

    _run(go)


def _load_profiles(path: str) -> dict:
    rec = json.loads(Path(path).read_text(encoding="utf-8"))

    def prof(d, default_seed):
        return ProctorProfile(
            p_detect=d.get("p_detect", 1.0),
            p_false_alarm=d.get("p_false_alarm", 0.0),
            boundary_jitter=d.get("boundary_jitter", 0),
            p_verify_correct=d.get("p_verify_correct", 1.0),
            seed=d.get("seed", default_seed),
        )

    return {
        "human": prof(rec["human"], 1),
        "hybrid": prof(rec["hybrid"], 2),
        "voters": [prof(v, 100 + i) for i, v in enumerate(rec["voters"])],
    }


@main.command("evaluate")
@click.option("--sessions", "sessions_arg", default="all", show_default=True,
              help="comma-separated session ids, or 'all'")
@click.option("--k", "k_voters", type=int, default=3, show_default=True)
@click.option("--simulate-proctors", "profiles_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="fabricate human/hybrid labels and votes from these profiles "
                   "(requires synthetic sessions with ground truth); otherwise "
                   "stored labels and votes are used")
@click.option("--store", "store_root", required=True, type=click.Path(file_okay=False))
def evaluate_cmd(sessions_arg, k_voters, profiles_path, store_root):
    """Build references and score the three systems across sessions."""

    def go():
        store = Store(store_root)
        if sessions_arg == "all":
            session_ids = [m.id for m in store.list_sessions()]
        else:
            session_ids = [s for s in sessions_arg.split(",") if s]
        if not session_ids:
            raise DomainError("no sessions to evaluate")

        profiles = _load_profiles(profiles_path) if profiles_path else None
        if profiles and len(profiles["voters"]) != k_voters:
            raise DomainError(
                f"profiles file has {len(profiles['voters'])} voters, expected k={k_voters}"
            )

        dataset = []
        for sid in session_ids:
            manifest = store.load_manifest(sid)
            T = manifest.frame_count
            ml, _ = store.load_labels(sid, SystemKind.ML_ONLY)
            if profiles:
                gt = store.load_ground_truth(sid)
                human = simulate_proctor(
                    gt, replace(profiles["human"], seed=derive_seed(profiles["human"].seed, sid)),
                    T, manifest.fps)
                hybrid = simulate_hybrid_proctor(
                    gt, ml,
                    replace(profiles["hybrid"], seed=derive_seed(profiles["hybrid"].seed, sid)),
                    T, manifest.fps)
                store.save_labels(sid, human)
                store.save_labels(sid, hybrid)
                review = build_review_set(human, ml, hybrid, session_id=sid)
                voters = [replace(v, seed=derive_seed(v.seed, sid)) for v in profiles["voters"]]
                votes = simulate_votes(review, gt, voters)
                store.save_votes(sid, votes)
            else:
                human, _ = store.load_labels(sid, SystemKind.HUMAN_ONLY)
                hybrid, _ = store.load_labels(sid, SystemKind.HYBRID)
                votes = store.load_votes(sid)
                for v in votes:
                    if len(v.votes) != k_voters:
                        raise DomainError(
                            f"session {sid}: vote has {len(v.votes)} judgments, expected k={k_voters}"
                        )
            dataset.append(SessionEvalInput(
                session_id=sid, frame_count=T,
                labels={SystemKind.HUMAN_ONLY: human, SystemKind.ML_ONLY: ml,
                        SystemKind.HYBRID: hybrid},
                votes=votes))

        report = evaluate(dataset)
        report_id = store.save_report(report)
        click.echo(format_report(report))
        click.echo(f"report_id: {report_id}")

    _run(go)


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--store", "store_root", required=True, type=click.Path(file_okay=False))
@click.option("--grid-size", type=int, default=64, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, store_root, grid_size, host):
    """Run the HTTP API."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(store_root, grid_size=grid_size), host=host, port=port)


@main.command("export-report")
@click.argument("report_id")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json",
              show_default=True)
@click.option("--store", "store_root", required=True, type=click.Path(file_okay=False))
def export_report(report_id, fmt, store_root):
    """Print a stored evaluation report."""

    def go():
        report = Store(store_root).load_report(report_id)
        if fmt == "json":
            click.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))
        else:
            click.echo(format_report(report))

    _run(go)


if __name__ == "__main__":
    main()
