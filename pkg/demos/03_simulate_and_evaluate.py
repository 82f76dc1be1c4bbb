"""End-to-end desk-scale experiment: synthetic sessions, three labeling
systems, majority-vote reference, and the complementarity verdict.

Run:  python3 demos/03_simulate_and_evaluate.py
"""

from gazereview.evaluation import (
    SessionEvalInput,
    build_review_set,
    evaluate,
    format_report,
)
from gazereview.ml_labeler import MlLabelerConfig, label_session_ml
from gazereview.model import SystemKind
from gazereview.sim import (
    ProctorProfile,
    ScenarioConfig,
    derive_seed,
    generate_session,
    simulate_hybrid_proctor,
    simulate_proctor,
    simulate_votes,
)

N = 30
K = 3
dataset = []
for n in range(N):
    cfg = ScenarioConfig(
        frame_count=400, fps=5.0, sigma_on=0.02, lookaway_rate=4.0,
        duration_range=(4, 12), lookaway_angle_range=(0.4, 0.8), sigma_ml=0.08,
        seed=derive_seed(0, "session", n),
    )
    session, gt = generate_session(cfg)

    # the three systems: imperfect human, noisy ML, human + verified ML
    ml = label_session_ml(session, MlLabelerConfig(theta=0.2))
    human = simulate_proctor(
        gt,
        ProctorProfile(p_detect=0.6, p_false_alarm=0.5, boundary_jitter=2,
                       seed=derive_seed(0, "human", n)),
        cfg.frame_count, cfg.fps)
    hybrid = simulate_hybrid_proctor(
        gt, ml,
        ProctorProfile(p_detect=0.6, p_false_alarm=0.5, boundary_jitter=2,
                       p_verify_correct=0.95, seed=derive_seed(0, "hybrid", n)),
        cfg.frame_count, cfg.fps)

    # K proctors re-review the union of positive intervals
    review = build_review_set(human, ml, hybrid, session_id=session.id)
    voters = [ProctorProfile(p_verify_correct=0.95, seed=derive_seed(0, "voter", n, k))
              for k in range(K)]
    votes = simulate_votes(review, gt, voters)

    dataset.append(SessionEvalInput(
        session_id=session.id, frame_count=cfg.frame_count,
        labels={SystemKind.HUMAN_ONLY: human, SystemKind.ML_ONLY: ml,
                SystemKind.HYBRID: hybrid},
        votes=votes))

report = evaluate(dataset)
print(format_report(report))
