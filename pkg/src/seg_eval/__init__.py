"""Evaluation measures and error diagnostics for time-series segmentation.

Scores a predicted state sequence against a ground truth with classical
change-point and clustering measures (margin-tolerant F1, Covering, ARI,
NMI), their boundary-weighted variants (WARI, WNMI), and a state matching
score (SMS) built on a four-kind error typology with per-block diagnostics.
"""

from .changepoint import F1Result, covering, default_margin, f1_margin
from .clustering import ClusteringScore, Measure, ari, nmi, wari, wnmi
from .cli import EvalConfig, evaluate_pair
from .contingency import (
    ContingencyMatrix,
    WeightVector,
    boundary_weights,
    contingency_matrix,
)
from .errors import (
    DegenerateInput,
    EmptyBatch,
    EmptySequence,
    InvalidParameter,
    InvalidSpec,
    LengthMismatch,
    ParseError,
    SegEvalError,
    UnmappedLabel,
)
from .mapping import StateMapping, apply_mapping, optimal_state_mapping, overlap_cost_matrix
from .sequences import (
    ChangePointList,
    Segment,
    StateSequence,
    change_points,
    distance_to_nearest_cp,
    parse_label_sequence,
    segments,
)
from .sms import (
    DEFAULT_WEIGHTS,
    ErrorBlock,
    ErrorType,
    PenaltyWeights,
    SmsReport,
    TypeStats,
    block_penalty,
    classify_block,
    error_blocks,
    error_report,
    sms,
)
from .synth import CorruptionSpec, SweepRow, inject_error, make_ground_truth, sweep

__version__ = "0.1.0"

__all__ = [
    "ari",
    "apply_mapping",
    "block_penalty",
    "boundary_weights",
    "change_points",
    "ChangePointList",
    "classify_block",
    "ClusteringScore",
    "ContingencyMatrix",
    "CorruptionSpec",
    "covering",
    "DEFAULT_WEIGHTS",
    "default_margin",
    "DegenerateInput",
    "distance_to_nearest_cp",
    "EmptyBatch",
    "EmptySequence",
    "ErrorBlock",
    "error_blocks",
    "error_report",
    "ErrorType",
    "EvalConfig",
    "evaluate_pair",
    "F1Result",
    "f1_margin",
    "inject_error",
    "InvalidParameter",
    "InvalidSpec",
    "LengthMismatch",
    "make_ground_truth",
    "Measure",
    "nmi",
    "optimal_state_mapping",
    "overlap_cost_matrix",
    "ParseError",
    "parse_label_sequence",
    "PenaltyWeights",
    "SegEvalError",
    "Segment",
    "segments",
    "sms",
    "SmsReport",
    "StateMapping",
    "StateSequence",
    "sweep",
    "SweepRow",
    "TypeStats",
    "UnmappedLabel",
    "wari",
    "WeightVector",
    "wnmi",
]
