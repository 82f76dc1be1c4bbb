import itertools

import numpy as np
import pytest

from gazereview.errors import DomainError
from gazereview.evaluation import (
    IntervalVote,
    ReviewSet,
    SessionEvalInput,
    build_reference,
    build_review_set,
    evaluate,
    majority_vote,
    score_session,
)
from gazereview.model import (
    LabelSequence,
    PositiveInterval,
    SystemKind,
    extract_positive_intervals,
    intervals_to_labels,
)


def seq(bits, system=SystemKind.HUMAN_ONLY):
    return LabelSequence(bits, system)


# -- review set ---------------------------------------------------------------


def test_review_set_coalesces_across_systems():
    rs = build_review_set(seq([0, 1, 0, 0]), seq([0, 0, 1, 0], SystemKind.ML_ONLY),
                          seq([0, 0, 0, 0], SystemKind.HYBRID))
    assert rs.intervals == (PositiveInterval(1, 2),)


def test_review_set_empty():
    z = [0, 0, 0]
    rs = build_review_set(seq(z), seq(z, SystemKind.ML_ONLY), seq(z, SystemKind.HYBRID))
    assert rs.intervals == ()


def test_review_set_length_mismatch():
    with pytest.raises(DomainError):
        build_review_set(seq([0, 1]), seq([0, 1, 0], SystemKind.ML_ONLY),
                         seq([0, 1], SystemKind.HYBRID))


def test_review_set_is_bitwise_or_exhaustive():
    # all triples of sequences at small T: label-image of review set == OR
    T = 4
    all_seqs = list(itertools.product((0, 1), repeat=T))
    for a, b, c in itertools.product(all_seqs, repeat=3):
        rs = build_review_set(seq(list(a)), seq(list(b), SystemKind.ML_ONLY),
                              seq(list(c), SystemKind.HYBRID))
        image = intervals_to_labels(list(rs.intervals), T).labels
        expected = np.maximum.reduce([np.array(a), np.array(b), np.array(c)])
        assert np.array_equal(image, expected)


def test_review_set_is_bitwise_or_sampled():
    rng = np.random.default_rng(31)
    for _ in range(500):
        T = int(rng.integers(1, 11))
        a, b, c = (rng.integers(0, 2, T) for _ in range(3))
        rs = build_review_set(seq(a), seq(b, SystemKind.ML_ONLY), seq(c, SystemKind.HYBRID))
        image = intervals_to_labels(list(rs.intervals), T).labels
        assert np.array_equal(image, np.maximum.reduce([a, b, c]))


# -- majority vote ------------------------------------------------------------


def test_majority_vote_examples():
    iv = PositiveInterval(0, 1)
    assert majority_vote(IntervalVote(iv, (1, 1, 0))) == 1
    assert majority_vote(IntervalVote(iv, (1, 0))) == 0  # even tie breaks negative
    assert majority_vote(IntervalVote(iv, (1,))) == 1  # K=1 is identity
    assert majority_vote(IntervalVote(iv, (0,))) == 0


def test_majority_vote_exhaustive_k_up_to_5():
    iv = PositiveInterval(0, 0)
    for k in range(1, 6):
        for votes in itertools.product((0, 1), repeat=k):
            expected = 1 if sum(votes) > k / 2 else 0
            assert majority_vote(IntervalVote(iv, votes)) == expected


# -- reference build ----------------------------------------------------------


def test_build_reference_single_interval():
    rs = ReviewSet("s", (PositiveInterval(1, 2),))
    ref = build_reference(rs, [IntervalVote(PositiveInterval(1, 2), (1, 1, 0))], 4)
    assert list(ref.labels.labels) == [0, 1, 1, 0]
    assert ref.labels.system is SystemKind.REFERENCE


def test_build_reference_empty():
    ref = build_reference(ReviewSet("s", ()), [], 3)
    assert list(ref.labels.labels) == [0, 0, 0]


def test_build_reference_vote_coverage_enforced():
    rs = ReviewSet("s", (PositiveInterval(0, 1), PositiveInterval(3, 3)))
    with pytest.raises(DomainError):
        build_reference(rs, [IntervalVote(PositiveInterval(0, 1), (1,))], 5)
    with pytest.raises(DomainError):
        build_reference(
            rs,
            [
                IntervalVote(PositiveInterval(0, 1), (1,)),
                IntervalVote(PositiveInterval(3, 3), (1,)),
                IntervalVote(PositiveInterval(4, 4), (1,)),
            ],
            5,
        )


def test_build_reference_compositional_oracle():
    rng = np.random.default_rng(37)
    for _ in range(100):
        T = 30
        bits = rng.integers(0, 2, T)
        ivs = extract_positive_intervals(seq(bits))
        rs = ReviewSet("s", tuple(ivs))
        votes = [IntervalVote(iv, tuple(rng.integers(0, 2, 3))) for iv in ivs]
        ref = build_reference(rs, votes, T)
        positive = [v.interval for v in votes if majority_vote(v)]
        assert np.array_equal(ref.labels.labels, intervals_to_labels(positive, T).labels)


# -- scoring ------------------------------------------------------------------


def make_ref(bits, covered_bits):
    T = len(bits)
    rs = ReviewSet("s", tuple(extract_positive_intervals(seq(covered_bits))))
    votes = []
    ref_ivs = extract_positive_intervals(seq(bits))
    for iv in rs.intervals:
        # interval voted positive iff it is inside the reference bit pattern
        val = 1 if all(bits[t] for t in range(iv.start, iv.end + 1)) else 0
        votes.append(IntervalVote(iv, (val,)))
    return build_reference(rs, votes, T)


def test_score_perfect_agreement():
    ref = make_ref([0, 1, 1, 0], [0, 1, 1, 0])
    score = score_session(seq([0, 1, 1, 0]), ref)
    assert score.precision == 1.0 and score.recall_ub == 1.0


def test_score_half_precision():
    # a = [1,1,0,0], ref positives only (0,0); review set covers (0,1)
    rs = ReviewSet("s", (PositiveInterval(0, 1),))
    # interval-granular voting cannot mark half an interval; construct the
    # reference directly at frame level via two single-frame intervals
    rs = ReviewSet("s", (PositiveInterval(0, 0), PositiveInterval(1, 1)))
    votes = [IntervalVote(PositiveInterval(0, 0), (1,)), IntervalVote(PositiveInterval(1, 1), (0,))]
    ref = build_reference(rs, votes, 4)
    score = score_session(seq([1, 1, 0, 0]), ref)
    assert score.precision == 0.5
    assert score.recall_ub == 1.0


def test_score_random_confusion_oracle():
    rng = np.random.default_rng(41)
    for _ in range(300):
        T = 40
        a_bits = rng.integers(0, 2, T)
        ref_bits = rng.integers(0, 2, T)
        covered = np.maximum(a_bits, ref_bits)
        # reference positives are a subset of the covered region by construction
        rs = ReviewSet("s", tuple(extract_positive_intervals(seq(covered))))
        # frame-level reference: single-frame vote intervals would be needed;
        # instead compute expected counts directly with brute force
        ref_in = ref_bits & covered
        from gazereview.evaluation import ReferenceLabeling

        ref = ReferenceLabeling(labels=seq(ref_in, SystemKind.REFERENCE), covered=rs)
        score = score_session(seq(a_bits), ref)
        tp = fp = fn = 0
        for t in range(T):
            if not covered[t]:
                continue
            if a_bits[t] and ref_in[t]:
                tp += 1
            elif a_bits[t] and not ref_in[t]:
                fp += 1
            elif not a_bits[t] and ref_in[t]:
                fn += 1
        assert (score.tp, score.fp, score.fn) == (tp, fp, fn)
        # tp + fp equals a's positives inside the review set
        assert score.tp + score.fp == int((a_bits & covered).sum())


def test_score_undefined_metrics():
    ref = make_ref([0, 0, 0], [0, 0, 0])
    score = score_session(seq([0, 0, 0]), ref)
    assert score.precision is None and score.recall_ub is None


def test_score_length_mismatch():
    ref = make_ref([0, 1], [0, 1])
    with pytest.raises(DomainError):
        score_session(seq([0, 1, 0]), ref)


# -- evaluate -----------------------------------------------------------------


def make_item(sid, h, m, hm, truth_fn):
    T = len(h)
    labels = {
        SystemKind.HUMAN_ONLY: seq(h),
        SystemKind.ML_ONLY: seq(m, SystemKind.ML_ONLY),
        SystemKind.HYBRID: seq(hm, SystemKind.HYBRID),
    }
    rs = build_review_set(labels[SystemKind.HUMAN_ONLY], labels[SystemKind.ML_ONLY],
                          labels[SystemKind.HYBRID], session_id=sid)
    votes = [IntervalVote(iv, (truth_fn(iv),)) for iv in rs.intervals]
    return SessionEvalInput(session_id=sid, frame_count=T, labels=labels, votes=votes)


def test_evaluate_empty_dataset():
    with pytest.raises(DomainError):
        evaluate([])


def test_evaluate_single_session_reduces_to_score():
    item = make_item("a", [0, 1, 1, 0], [0, 1, 0, 0], [0, 1, 1, 0], lambda iv: 1)
    report = evaluate([item])
    assert report.n_sessions == 1
    h = report.per_system[SystemKind.HUMAN_ONLY]
    m = report.per_system[SystemKind.ML_ONLY]
    assert h.mean_precision == 1.0 and h.mean_recall_ub == 1.0
    assert m.mean_precision == 1.0 and m.mean_recall_ub == 0.5


def test_evaluate_identical_scores_no_complementarity():
    item = make_item("a", [0, 1, 0], [0, 1, 0], [0, 1, 0], lambda iv: 1)
    report = evaluate([item])
    assert not report.holds_precision
    assert not report.holds_recall


def test_evaluate_three_sessions_hand_computed():
    # session 1: all perfect -> everyone 1.0/1.0
    i1 = make_item("s1", [0, 1, 1, 0], [0, 1, 1, 0], [0, 1, 1, 0], lambda iv: 1)
    # session 2: human misses the second event; hybrid catches everything
    i2 = make_item("s2", [1, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 1], [1, 1, 0, 0, 1, 1],
                   lambda iv: 1)
    # session 3: ML fires on a rejected interval (voted 0)
    i3 = make_item("s3", [1, 0, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0],
                   lambda iv: 1 if iv.start == 0 else 0)
    report = evaluate([i1, i2, i3])
    h = report.per_system[SystemKind.HUMAN_ONLY]
    m = report.per_system[SystemKind.ML_ONLY]
    hm = report.per_system[SystemKind.HYBRID]
    # hand-computed means
    assert h.mean_precision == pytest.approx((1.0 + 1.0 + 1.0) / 3)
    assert h.mean_recall_ub == pytest.approx((1.0 + 0.5 + 1.0) / 3)
    assert m.mean_precision == pytest.approx((1.0 + 1.0 + 0.0) / 3)
    assert m.mean_recall_ub == pytest.approx((1.0 + 0.5 + 0.0) / 3)
    assert hm.mean_precision == pytest.approx(1.0)
    assert hm.mean_recall_ub == pytest.approx(1.0)
    assert report.holds_recall  # 1.0 > max(0.833, 0.5)
    assert not report.holds_precision  # 1.0 is not > 1.0


def test_evaluate_permutation_invariant():
    items = [
        make_item("s1", [0, 1, 1, 0], [0, 1, 0, 0], [0, 1, 1, 0], lambda iv: 1),
        make_item("s2", [1, 0, 0, 0], [0, 0, 1, 1], [1, 0, 1, 1], lambda iv: 1),
        make_item("s3", [0, 0, 0, 1], [0, 1, 0, 1], [0, 1, 0, 1], lambda iv: iv.start % 2),
    ]
    r1 = evaluate(items)
    r2 = evaluate(items[::-1])
    assert r1.to_dict() == r2.to_dict()


def test_report_round_trips_via_dict():
    from gazereview.evaluation import EvalReport

    item = make_item("a", [0, 1, 1, 0], [0, 1, 0, 0], [0, 1, 1, 0], lambda iv: 1)
    report = evaluate([item])
    assert EvalReport.from_dict(report.to_dict()).to_dict() == report.to_dict()
