"""State matching score: error-block typology, penalties and diagnostics.

The pipeline aligns predicted labels to real labels, extracts maximal
wrong and constant-prediction intervals (error blocks), classifies each
block into one of four kinds by the number of distinct real states it
spans, prices each block by kind-specific penalty weights, and reports
``1 - total_penalty / N`` plus the full per-block breakdown.

Block typology (A = number of distinct real states inside the block):

* ``delay``       A = 1 and the block continues a correctly predicted
                  neighbour of the same state (a shifted boundary).
* ``isolation``   A = 1 otherwise (a false state inside one real state).
* ``transition``  A = 2 (a false state straddling one real boundary).
* ``missing``     A >= 3 (three or more real states collapsed together).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, NamedTuple

import numpy as np

from .errors import EmptyBatch, InvalidParameter, LengthMismatch
from .mapping import StateMapping, apply_mapping, optimal_state_mapping
from .sequences import StateSequence, change_points

__all__ = [
    "ErrorType",
    "PenaltyWeights",
    "DEFAULT_WEIGHTS",
    "ErrorBlock",
    "TypeStats",
    "SmsReport",
    "error_blocks",
    "classify_block",
    "block_penalty",
    "sms",
    "error_report",
]


class ErrorType(str, Enum):
    DELAY = "delay"
    ISOLATION = "isolation"
    TRANSITION = "transition"
    MISSING = "missing"


@dataclass(frozen=True)
class PenaltyWeights:
    """Severity knobs per error kind."""

    delay: float = 0.1
    transition: float = 0.3
    isolation: float = 0.8
    missing: float = 0.5

    def __post_init__(self):
        for name in ("delay", "transition", "isolation", "missing"):
            if getattr(self, name) < 0:
                raise InvalidParameter(f"penalty weight {name!r} must be >= 0")

    def for_type(self, kind: ErrorType) -> float:
        return getattr(self, kind.value)

    @property
    def max_weight(self) -> float:
        return max(self.delay, self.transition, self.isolation, self.missing)


DEFAULT_WEIGHTS = PenaltyWeights()


@dataclass(frozen=True)
class ErrorBlock:
    """A maximal interval where the mapped prediction is one wrong label.

    ``kind``, ``distance`` and ``penalty`` are None until the block has been
    classified and priced. ``distance`` (isolation/transition only) is the
    normalized distance ``2 * min(start - b_prev, b_next - end) / N`` to the
    nearest real change points strictly outside the block, with the sequence
    boundaries 0 and N standing in when no such change point exists.
    """

    start: int
    end: int
    predicted_label: int
    atomicity: int
    kind: ErrorType | None = None
    distance: float | None = None
    penalty: float | None = None

    @property
    def length(self) -> int:
        return self.end - self.start + 1


class TypeStats(NamedTuple):
    count: int
    length: int
    penalty: float


@dataclass(frozen=True)
class SmsReport:
    """Score plus full error-block diagnostics for one (gt, pred) pair."""

    score: float
    blocks: tuple[ErrorBlock, ...]
    per_type: dict[ErrorType, TypeStats]
    total_error_length: int
    n: int
    mapping: StateMapping


def error_blocks(gt: StateSequence, mapped_pred: np.ndarray) -> list[ErrorBlock]:
    """Maximal wrong intervals with constant predicted label.

    A wrong region whose predicted label changes mid-way is split into one
    block per constant-prediction run. Types and penalties are left unset.
    """
    labels = gt.labels
    if labels.size != mapped_pred.size:
        raise LengthMismatch(
            f"length mismatch: N_gt={labels.size} N_pred={mapped_pred.size}"
        )
    wrong = mapped_pred != labels
    blocks: list[ErrorBlock] = []
    k = 0
    n = labels.size
    while k < n:
        if not wrong[k]:
            k += 1
            continue
        start = k
        label = mapped_pred[k]
        while k + 1 < n and wrong[k + 1] and mapped_pred[k + 1] == label:
            k += 1
        atomicity = int(np.unique(labels[start : k + 1]).size)
        blocks.append(
            ErrorBlock(start=start, end=k, predicted_label=int(label), atomicity=atomicity)
        )
        k += 1
    return blocks


def _classify(
    labels: np.ndarray,
    mapped_pred: np.ndarray,
    block: ErrorBlock,
    cps: np.ndarray,
) -> tuple[ErrorType, float | None]:
    n = labels.size
    if block.atomicity == 1:
        p = block.predicted_label
        left_ok = (
            block.start > 0
            and labels[block.start - 1] == p
            and mapped_pred[block.start - 1] == p
        )
        right_ok = (
            block.end < n - 1
            and labels[block.end + 1] == p
            and mapped_pred[block.end + 1] == p
        )
        if left_ok or right_ok:
            return ErrorType.DELAY, None
        kind = ErrorType.ISOLATION
    elif block.atomicity == 2:
        kind = ErrorType.TRANSITION
    else:
        return ErrorType.MISSING, None

    at = np.searchsorted(cps, block.start)  # cps[at-1] < start <= cps[at]
    b_prev = int(cps[at - 1]) if at > 0 else 0
    after = np.searchsorted(cps, block.end, side="right")
    b_next = int(cps[after]) if after < cps.size else n
    distance = 2.0 * min(block.start - b_prev, b_next - block.end) / n
    return kind, distance


def classify_block(
    gt: StateSequence, mapped_pred: np.ndarray, block: ErrorBlock
) -> tuple[ErrorType, float | None]:
    """Assign an error kind (and boundary distance where applicable).

    With A = 1, the block is a delay when an adjacent sample is correctly
    predicted as the block's own predicted label, else an isolation (blocks
    at the sequence edges that satisfy neither condition count as
    isolations). A = 2 is a transition and A >= 3 a missing error.
    """
    return _classify(gt.labels, mapped_pred, block, change_points(gt).positions)


def block_penalty(block: ErrorBlock, weights: PenaltyWeights) -> float:
    """Price a classified block.

    delay: ``l * (1 + w)``; isolation/transition: ``l * (1 + d * w)``;
    missing: ``l * (1 + w * (1 + (3 / A) * (w - 1)))``.
    """
    if block.kind is None:
        raise InvalidParameter("block must be classified before pricing")
    l = block.length
    w = weights.for_type(block.kind)
    if block.kind is ErrorType.DELAY:
        return l * (1.0 + w)
    if block.kind is ErrorType.MISSING:
        return l * (1.0 + w * (1.0 + (3.0 / block.atomicity) * (w - 1.0)))
    return l * (1.0 + block.distance * w)


def sms(
    gt: StateSequence,
    pred: StateSequence,
    weights: PenaltyWeights = DEFAULT_WEIGHTS,
) -> SmsReport:
    """Full pipeline: align labels, extract and classify blocks, score.

    The score is ``1 - sum(penalties) / N``. With all weights in [0, 1] it
    lies in ``[1 - (1 + w_max) * E / N, 1 - E / N]`` where E is the total
    error length; with all weights zero it equals the mapped accuracy
    ``1 - E / N`` exactly. The value is emitted unclamped.
    """
    if len(gt) != len(pred):
        raise LengthMismatch(f"length mismatch: N_gt={len(gt)} N_pred={len(pred)}")
    m = optimal_state_mapping(gt, pred)
    mapped = apply_mapping(pred, m)
    cps = change_points(gt).positions
    blocks = []
    for raw in error_blocks(gt, mapped):
        kind, distance = _classify(gt.labels, mapped, raw, cps)
        block = replace(raw, kind=kind, distance=distance)
        blocks.append(replace(block, penalty=block_penalty(block, weights)))
    per_type = {
        t: TypeStats(
            count=sum(1 for b in blocks if b.kind is t),
            length=sum(b.length for b in blocks if b.kind is t),
            penalty=sum(b.penalty for b in blocks if b.kind is t),
        )
        for t in ErrorType
    }
    total_error = sum(b.length for b in blocks)
    total_penalty = sum(b.penalty for b in blocks)
    return SmsReport(
        score=1.0 - total_penalty / len(gt),
        blocks=tuple(blocks),
        per_type=per_type,
        total_error_length=total_error,
        n=len(gt),
        mapping=m,
    )


def error_report(reports: Iterable[SmsReport]) -> dict[ErrorType, dict[str, float]]:
    """Batch aggregates per error kind.

    For each kind: the mean number of blocks per report, the mean total
    error length per report, and the mean penalty share (kind penalty
    divided by N, i.e. the kind's additive contribution to ``1 - score``).
    """
    reports = list(reports)
    if not reports:
        raise EmptyBatch("error_report needs at least one report")
    k = len(reports)
    out: dict[ErrorType, dict[str, float]] = {}
    for t in ErrorType:
        out[t] = {
            "mean_count": sum(r.per_type[t].count for r in reports) / k,
            "mean_length": sum(r.per_type[t].length for r in reports) / k,
            "mean_penalty_share": sum(r.per_type[t].penalty / r.n for r in reports) / k,
        }
    return out
