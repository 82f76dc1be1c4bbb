"""Interval algebra over binary label sequences.

Run:  python3 demos/02_interval_algebra.py
"""

from gazereview.model import (
    LabelSequence,
    SystemKind,
    extract_positive_intervals,
    intervals_to_labels,
    merge_interval_sets,
)

human = LabelSequence([0, 1, 1, 0, 0, 0, 1, 1, 1, 0], SystemKind.HUMAN_ONLY)
ml = LabelSequence([0, 0, 1, 1, 0, 0, 0, 1, 0, 1], SystemKind.ML_ONLY)

h_ivs = extract_positive_intervals(human)
m_ivs = extract_positive_intervals(ml)
print("human intervals:", [(iv.start, iv.end) for iv in h_ivs])
print("ml intervals:   ", [(iv.start, iv.end) for iv in m_ivs])

merged = merge_interval_sets(h_ivs, m_ivs)
print("merged (coalescing adjacency):", [(iv.start, iv.end) for iv in merged])

union = intervals_to_labels(merged, 10)
print("union labels:", union.labels.tolist())

# round trip: intervals -> labels -> intervals is lossless
assert extract_positive_intervals(union) == merged
print("round trip holds")
