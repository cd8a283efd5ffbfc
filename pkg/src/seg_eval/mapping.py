"""Optimal alignment of predicted state labels to real state labels.

Predicted labels are matched to real labels by maximising total sample
overlap with an assignment solver; predicted labels left over when there
are more predicted than real states receive fresh ids (the smallest
non-negative integers not already used as targets, in ascending
predicted-id order). The solver is implemented here: state counts are tiny,
so an O(n^3) augmenting-path method is more than enough.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, UnmappedLabel
from .sequences import StateSequence

__all__ = ["StateMapping", "overlap_cost_matrix", "optimal_state_mapping", "apply_mapping"]


@dataclass(frozen=True)
class StateMapping:
    """Injective map from predicted ids to real (or fresh) ids."""

    mapping: dict[int, int]
    assigned: frozenset[int]
    fresh: frozenset[int]

    def __getitem__(self, predicted_id: int) -> int:
        return self.mapping[predicted_id]

    def total_overlap(self, gt: StateSequence, pred: StateSequence) -> int:
        """Number of samples where the mapped prediction equals the truth."""
        mapped = apply_mapping(pred, self)
        return int(np.sum(mapped == gt.labels))


def overlap_cost_matrix(gt: StateSequence, pred: StateSequence) -> np.ndarray:
    """Negative co-occurrence counts, one row per predicted label."""
    if len(gt) != len(pred):
        raise LengthMismatch(f"length mismatch: N_gt={len(gt)} N_pred={len(pred)}")
    n_pred = pred.n_states
    n_real = gt.n_states
    flat = pred.labels * n_real + gt.labels
    counts = np.bincount(flat, minlength=n_pred * n_real).reshape(n_pred, n_real)
    return -counts.astype(np.int64)


def _hungarian(cost: np.ndarray) -> list[int]:
    """Minimum-cost assignment on an n x m matrix with n <= m.

    Classic augmenting-path formulation with row/column potentials.
    Returns, for each row, the assigned column index.
    """
    n, m = cost.shape
    assert n <= m
    INF = float("inf")
    u = [0.0] * (n + 1)
    v = [0.0] * (m + 1)
    match = [0] * (m + 1)  # match[j] = row assigned to column j (1-based)
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [INF] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = INF
            j1 = -1
            row = cost[i0 - 1]
            for j in range(1, m + 1):
                if used[j]:
                    continue
                cur = row[j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    result = [-1] * n
    for j in range(1, m + 1):
        if match[j]:
            result[match[j] - 1] = j - 1
    return result


def _best_total_overlap(overlap: np.ndarray, rows: list[int], cols: list[int]) -> int:
    """Maximum total overlap assigning min(|rows|, |cols|) row/col pairs."""
    if not rows or not cols:
        return 0
    sub = overlap[np.ix_(rows, cols)]
    if len(rows) <= len(cols):
        assign = _hungarian(-sub.astype(np.float64))
        return int(sum(sub[i, assign[i]] for i in range(len(rows)) if assign[i] >= 0))
    assign = _hungarian(-sub.T.astype(np.float64))
    return int(sum(sub[assign[j], j] for j in range(len(cols)) if assign[j] >= 0))


def optimal_state_mapping(gt: StateSequence, pred: StateSequence) -> StateMapping:
    """Map each predicted label to the real label it overlaps most.

    The assignment maximises total overlap over all injective partial maps
    of maximal size. Among equally good assignments the lowest predicted id
    takes the lowest real id (resolved by fixing ids in ascending order and
    keeping a choice only if it preserves the optimal total). Unassigned
    predicted ids get fresh ids per the smallest-unused-integer rule.
    """
    overlap = -overlap_cost_matrix(gt, pred)
    n_pred, n_real = overlap.shape
    rows = list(range(n_pred))
    cols = list(range(n_real))
    best = _best_total_overlap(overlap, rows, cols)

    mapping: dict[int, int] = {}
    for i in range(n_pred):
        rest = [r for r in rows if r != i]
        chosen = None
        for j in cols:
            other_cols = [c for c in cols if c != j]
            if overlap[i, j] + _best_total_overlap(overlap, rest, other_cols) == best:
                chosen = j
                break
        if chosen is not None:
            mapping[i] = chosen
            cols.remove(chosen)
            best -= int(overlap[i, chosen])
        # else: more predicted than real labels; i stays unassigned and the
        # optimum is attainable without it (checked implicitly: best is
        # reachable from the remaining rows).
        rows.remove(i)

    assigned = frozenset(mapping.values())
    fresh = set()
    used = set(mapping.values())
    for i in range(n_pred):
        if i not in mapping:
            candidate = 0
            while candidate in used:
                candidate += 1
            mapping[i] = candidate
            used.add(candidate)
            fresh.add(candidate)
    return StateMapping(mapping=mapping, assigned=assigned, fresh=frozenset(fresh))


def apply_mapping(pred: StateSequence, m: StateMapping) -> np.ndarray:
    """Relabel a prediction through a mapping; returns a plain label array.

    The result is not a canonical :class:`StateSequence` because mapped ids
    are in the real-label space (plus fresh ids) and need not be dense.
    """
    n_pred = pred.n_states
    table = np.empty(n_pred, dtype=np.int64)
    for label in range(n_pred):
        if label not in m.mapping:
            raise UnmappedLabel(f"predicted label {label} has no image")
        table[label] = m.mapping[label]
    return table[pred.labels]
