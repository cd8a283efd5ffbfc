"""Deterministic synthetic ground truths and controlled corruptions.

Used to study how each measure reacts to the length, position and kind of
a single injected error. Every injection is self-validating: the corrupted
prediction is re-analysed through the full scoring pipeline and must come
back as exactly one error block of the requested kind covering exactly the
requested interval, otherwise the spec is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .changepoint import covering, default_margin, f1_margin
from .clustering import ari, nmi, wari, wnmi
from .contingency import contingency_matrix
from .errors import InvalidSpec
from .sequences import StateSequence, change_points, segments
from .sms import DEFAULT_WEIGHTS, ErrorType, PenaltyWeights, sms

__all__ = ["CorruptionSpec", "SweepRow", "make_ground_truth", "inject_error", "sweep"]

MEASURE_ORDER = ("f1", "covering", "ari", "nmi", "wari", "wnmi", "sms")


@dataclass(frozen=True)
class CorruptionSpec:
    """One injected error.

    ``position`` may be an absolute index (int), a normalized offset in
    [0, 1] (float), or None to pick a feasible placement at random using
    ``seed``. Delay/transition/missing positions refer to the ground-truth
    change point the error attaches to; isolation positions are the block
    start. ``fill_label`` overrides the label written over the corrupted
    interval (defaults: the preceding segment's label for delay and
    missing, a brand-new label for isolation and transition).
    """

    kind: ErrorType
    length: int
    position: int | float | None = None
    seed: int = 0
    fill_label: int | None = None

    def __post_init__(self):
        if self.length < 1:
            raise InvalidSpec("corruption length must be >= 1")


@dataclass(frozen=True)
class SweepRow:
    kind: str
    length: int
    position: int
    measure: str
    score: float


def make_ground_truth(
    segment_lengths: Sequence[int], labels: Sequence[int] | None = None
) -> StateSequence:
    """Concatenate constant runs; labels default to 0, 1, 2, ..."""
    if len(segment_lengths) == 0:
        raise InvalidSpec("need at least one segment")
    if any(m < 1 for m in segment_lengths):
        raise InvalidSpec("segment lengths must be positive")
    if labels is None:
        labels = list(range(len(segment_lengths)))
    if len(labels) != len(segment_lengths):
        raise InvalidSpec("labels and segment_lengths must have equal length")
    if any(a == b for a, b in zip(labels, labels[1:])):
        raise InvalidSpec("adjacent segments must have distinct labels")
    runs = [np.full(m, lab, dtype=np.int64) for m, lab in zip(segment_lengths, labels)]
    return StateSequence.from_labels(np.concatenate(runs))


def _resolve_index(position: int | float, n: int) -> int:
    if isinstance(position, (int, np.integer)):
        return int(position)
    if 0.0 <= position <= 1.0:
        return int(round(position * (n - 1)))
    raise InvalidSpec(f"normalized position must lie in [0, 1], got {position}")


def _nearest_cp(cps: list[int], index: int) -> int:
    if not cps:
        raise InvalidSpec("ground truth has no change points")
    return min(cps, key=lambda c: (abs(c - index), c))


def _build_raw(gt: StateSequence, spec: CorruptionSpec, anchor: int) -> np.ndarray:
    """Overwrite the corrupted interval on raw ids; InvalidSpec if unfit."""
    labels = gt.labels
    n = labels.size
    l = spec.length
    segs = segments(gt)
    fresh = gt.n_states

    if spec.kind is ErrorType.DELAY:
        seg = next((s for s in segs if s.start == anchor), None)
        if seg is None:
            raise InvalidSpec(f"delay must anchor at a change point, got {anchor}")
        if anchor + l - 1 > seg.end:
            raise InvalidSpec("delay longer than the segment it shifts into")
        fill = int(labels[anchor - 1]) if spec.fill_label is None else spec.fill_label
        lo, hi = anchor, anchor + l
    elif spec.kind is ErrorType.ISOLATION:
        seg = next(
            (s for s in segs if s.start < anchor and anchor + l - 1 < s.end), None
        )
        if seg is None:
            raise InvalidSpec("isolation must lie strictly inside one segment")
        fill = fresh if spec.fill_label is None else spec.fill_label
        lo, hi = anchor, anchor + l
    elif spec.kind is ErrorType.TRANSITION:
        if anchor not in change_points(gt).positions:
            raise InvalidSpec(f"transition must straddle a change point, got {anchor}")
        if l < 2:
            raise InvalidSpec("transition needs length >= 2 to straddle a boundary")
        before = l // 2
        after = l - before
        seg_prev = next(s for s in segs if s.end == anchor - 1)
        seg_next = next(s for s in segs if s.start == anchor)
        if anchor - before < seg_prev.start or anchor + after - 1 > seg_next.end:
            raise InvalidSpec("transition does not fit within the two segments")
        fill = fresh if spec.fill_label is None else spec.fill_label
        lo, hi = anchor - before, anchor + after
    else:  # MISSING
        if anchor not in change_points(gt).positions:
            raise InvalidSpec(f"missing must start at a change point, got {anchor}")
        lo, hi = anchor, anchor + l
        if hi > n:
            raise InvalidSpec("missing overruns the sequence")
        if np.unique(labels[lo:hi]).size < 3:
            raise InvalidSpec("missing must span at least three real states")
        fill = int(labels[anchor - 1]) if spec.fill_label is None else spec.fill_label

    if np.any(labels[lo:hi] == fill):
        raise InvalidSpec("fill label collides with the truth inside the interval")
    raw = labels.copy()
    raw[lo:hi] = fill
    return raw


def _inject_at(
    gt: StateSequence, spec: CorruptionSpec, anchor: int
) -> tuple[StateSequence, int, int]:
    """Build and fully validate one placement; returns (pred, start, end)."""
    raw = _build_raw(gt, spec, anchor)
    pred = StateSequence.from_labels(raw)

    # Self-validation: after label alignment the pipeline must see exactly
    # one block of the requested kind on exactly the corrupted interval.
    report = sms(gt, pred, DEFAULT_WEIGHTS)
    if len(report.blocks) != 1:
        raise InvalidSpec(
            f"placement yields {len(report.blocks)} error blocks after alignment"
        )
    block = report.blocks[0]
    if block.kind is not spec.kind or block.length != spec.length:
        raise InvalidSpec(
            f"placement re-classifies as {block.kind.value} of length {block.length}"
        )
    diff = np.flatnonzero(raw != gt.labels)
    if diff[0] != block.start or diff[-1] != block.end or diff.size != spec.length:
        raise InvalidSpec("corrupted interval is not exactly the error block")
    return pred, block.start, block.end


def _anchor_candidates(gt: StateSequence, spec: CorruptionSpec) -> list[int]:
    if spec.kind is ErrorType.ISOLATION:
        return list(range(1, len(gt) - spec.length))
    return list(change_points(gt))


def inject_error(gt: StateSequence, spec: CorruptionSpec) -> StateSequence:
    """Corrupt ``gt`` per ``spec``.

    The returned prediction differs from the truth on exactly the corrupted
    interval (in raw label terms; ids are re-canonicalized) and the scoring
    pipeline classifies it as a single block of the requested kind.
    """
    pred, _, _ = _inject(gt, spec)
    return pred


def _inject(gt: StateSequence, spec: CorruptionSpec) -> tuple[StateSequence, int, int]:
    n = len(gt)
    if spec.position is None:
        rng = np.random.default_rng(spec.seed)
        candidates = np.array(_anchor_candidates(gt, spec), dtype=np.int64)
        rng.shuffle(candidates)
        last_error = None
        for anchor in candidates.tolist():
            try:
                return _inject_at(gt, spec, anchor)
            except InvalidSpec as err:
                last_error = err
        raise InvalidSpec(
            f"no feasible placement for {spec.kind.value} of length {spec.length}"
            + (f" ({last_error})" if last_error else "")
        )
    anchor = _resolve_index(spec.position, n)
    if spec.kind is not ErrorType.ISOLATION and isinstance(spec.position, float):
        anchor = _nearest_cp(list(change_points(gt)), anchor)
    return _inject_at(gt, spec, anchor)


def _score(measure: str, gt, pred, alpha, weights, margin) -> float:
    if measure == "f1":
        m = default_margin(len(gt)) if margin == "auto" else int(margin)
        return f1_margin(change_points(gt), change_points(pred), m).f1
    if measure == "covering":
        return covering(gt, pred)
    if measure == "ari":
        return ari(contingency_matrix(gt, pred)).value
    if measure == "nmi":
        return nmi(contingency_matrix(gt, pred)).value
    if measure == "wari":
        return wari(gt, pred, alpha).value
    if measure == "wnmi":
        return wnmi(gt, pred, alpha).value
    if measure == "sms":
        return sms(gt, pred, weights).score
    raise InvalidSpec(f"unknown measure {measure!r}")


def sweep(
    gt: StateSequence,
    axis: str,
    grid: Iterable[CorruptionSpec],
    measures: Sequence[str] = ("ari", "wari", "sms"),
    alpha: float = 0.1,
    weights: PenaltyWeights = DEFAULT_WEIGHTS,
    margin: int | str = "auto",
) -> list[SweepRow]:
    """Score every corruption in ``grid`` under every requested measure.

    ``axis`` labels what the grid varies (length, position or type) and is
    validated only; rows come out in grid order then measure order, so the
    output is deterministic for fixture files. Row positions report the
    realized block start.
    """
    if axis not in ("length", "position", "type"):
        raise InvalidSpec(f"unknown sweep axis {axis!r}")
    wanted = [m for m in MEASURE_ORDER if m in measures]
    unknown = set(measures) - set(MEASURE_ORDER)
    if unknown:
        raise InvalidSpec(f"unknown measures: {sorted(unknown)}")
    rows = []
    for spec in grid:
        pred, start, _ = _inject(gt, spec)
        for measure in wanted:
            rows.append(
                SweepRow(
                    kind=spec.kind.value,
                    length=spec.length,
                    position=start,
                    measure=measure,
                    score=_score(measure, gt, pred, alpha, weights, margin),
                )
            )
    return rows
