"""gazereview: gaze plots, interval labeling, and human-ML complementarity
evaluation for asynchronous exam proctoring."""

from .errors import (
    ConflictError,
    CorruptFileError,
    DomainError,
    GazeReviewError,
    NotFoundError,
    ParseError,
)
from .evaluation import (
    EvalReport,
    IntervalVote,
    ReferenceLabeling,
    ReviewSet,
    SessionEvalInput,
    SessionScore,
    build_reference,
    build_review_set,
    evaluate,
    majority_vote,
    score_session,
)
from .geometry import (
    GazeAngles,
    GazeVector,
    PlanePoint,
    angles_to_unit_vector,
    angular_distance,
    classify_frame,
    project_to_plane,
)
from .ml_labeler import MissingFacePolicy, MlLabelerConfig, label_session_ml
from .model import (
    EventMarker,
    GazePrediction,
    LabelSequence,
    PositiveInterval,
    Session,
    SystemKind,
    extract_positive_intervals,
    intervals_to_labels,
    merge_interval_sets,
)
from .sim import (
    GroundTruth,
    ProctorProfile,
    ScenarioConfig,
    generate_session,
    simulate_hybrid_proctor,
    simulate_proctor,
    simulate_votes,
)
from .store import Store, parse_predictions, write_predictions

__version__ = "0.1.0"
