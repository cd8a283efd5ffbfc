"""Unweighted and boundary-weighted contingency matrices.

The weighted variant multiplies each sample's contribution by
``1 + alpha * d`` where ``d`` is the sample's distance to the nearest
ground-truth change point, so mistakes deep inside a segment carry more
mass than mistakes hugging a boundary.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, LengthMismatch
from .sequences import StateSequence, distance_to_nearest_cp

__all__ = ["WeightVector", "ContingencyMatrix", "boundary_weights", "contingency_matrix"]


@dataclass(frozen=True)
class WeightVector:
    """Per-sample weights ``1 + alpha * d`` over a ground-truth sequence."""

    values: np.ndarray
    alpha: float

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class ContingencyMatrix:
    """Co-occurrence masses between two label sequences.

    ``cells[i, j]`` is the (possibly weighted) mass of samples labelled
    ``i`` in the reference and ``j`` in the prediction. Row/column sums and
    the grand total are precomputed; in the unweighted case every cell is
    an integer-valued float and ``total == N``.
    """

    cells: np.ndarray
    row_sums: np.ndarray
    col_sums: np.ndarray
    total: float

    def __post_init__(self):
        for name in ("cells", "row_sums", "col_sums"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def boundary_weights(gt: StateSequence, alpha: float) -> WeightVector:
    """Weights ``1 + alpha * distance_to_nearest_cp(gt)``.

    ``alpha = 0`` collapses to unit weights; a constant ground truth has no
    change points, so its weights are all ones for any alpha.
    """
    if alpha < 0:
        raise InvalidParameter(f"alpha must be non-negative, got {alpha}")
    d = distance_to_nearest_cp(gt)
    return WeightVector(1.0 + alpha * d, float(alpha))


def contingency_matrix(
    gt: StateSequence,
    pred: StateSequence,
    weights: WeightVector | None = None,
) -> ContingencyMatrix:
    """Build the (weighted) contingency matrix of two equal-length sequences.

    When ``weights`` is None, unit weights are used; the code path is
    identical either way so an all-ones weight vector reproduces the
    unweighted matrix bit for bit.
    """
    if len(gt) != len(pred):
        raise LengthMismatch(f"length mismatch: N_gt={len(gt)} N_pred={len(pred)}")
    w = np.ones(len(gt), dtype=np.float64) if weights is None else weights.values
    if w.size != len(gt):
        raise LengthMismatch(f"weight vector length {w.size} != N={len(gt)}")
    n_real = gt.n_states
    n_pred = pred.n_states
    flat = gt.labels * n_pred + pred.labels
    cells = np.bincount(flat, weights=w, minlength=n_real * n_pred)
    cells = cells.reshape(n_real, n_pred)
    return ContingencyMatrix(
        cells=cells,
        row_sums=cells.sum(axis=1),
        col_sums=cells.sum(axis=0),
        total=float(cells.sum()),
    )
