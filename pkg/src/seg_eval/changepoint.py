"""Change-point-level measures: margin-tolerant F1 and segment Covering."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameter, LengthMismatch
from .sequences import ChangePointList, Segment, StateSequence, segments

__all__ = ["F1Result", "f1_margin", "covering", "default_margin"]


@dataclass(frozen=True)
class F1Result:
    precision: float
    recall: float
    f1: float
    matches: tuple[tuple[int, int], ...]
    margin: int


def default_margin(n: int) -> int:
    """Margin of 1% of the series length, but at least one sample."""
    return max(1, round(0.01 * n))


def f1_margin(
    gt_cps: ChangePointList, pred_cps: ChangePointList, margin: int
) -> F1Result:
    """Match predicted to true change points within ``margin`` samples.

    Predictions are visited in ascending order; each is matched to the
    nearest still-unmatched true change point within the margin (ties go to
    the earlier one), and matched points are removed so a single true change
    point cannot be claimed twice. Conventions: two empty lists score 1.0,
    exactly one empty list scores 0.0.
    """
    if margin < 0:
        raise InvalidParameter(f"margin must be non-negative, got {margin}")
    gt = list(gt_cps)
    pred = list(pred_cps)
    if not gt and not pred:
        return F1Result(1.0, 1.0, 1.0, (), margin)
    if not gt or not pred:
        return F1Result(0.0, 0.0, 0.0, (), margin)

    unmatched = list(gt)
    matches: list[tuple[int, int]] = []
    for p in pred:
        best = None
        best_dist = margin + 1
        for g in unmatched:
            dist = abs(p - g)
            if dist < best_dist:  # strict: ties keep the earlier candidate
                best, best_dist = g, dist
        if best is not None:
            matches.append((p, best))
            unmatched.remove(best)
    precision = len(matches) / len(pred)
    recall = len(matches) / len(gt)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return F1Result(precision, recall, f1, tuple(matches), margin)


def _interval_iou(a: Segment, b: Segment) -> float:
    inter = min(a.end, b.end) - max(a.start, b.start) + 1
    if inter <= 0:
        return 0.0
    union = a.length + b.length - inter
    return inter / union


def covering(gt: StateSequence, pred: StateSequence) -> float:
    """Length-weighted mean of each true segment's best IoU with a
    predicted segment."""
    if len(gt) != len(pred):
        raise LengthMismatch(f"length mismatch: N_gt={len(gt)} N_pred={len(pred)}")
    pred_segments = segments(pred)
    total = 0.0
    for ref in segments(gt):
        best = max(_interval_iou(ref, p) for p in pred_segments)
        total += ref.length * best
    return total / len(gt)
