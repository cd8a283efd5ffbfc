"""Clustering-agreement measures over contingency matrices.

Implements the pair-counting adjusted Rand index and normalized mutual
information, plus their boundary-weighted variants. The weighted variants
are the plain measures applied to a weighted contingency matrix, with the
generalized binomial ``x * (x - 1) / 2`` extended to real-valued masses
(well defined here because every nonzero weighted mass is >= 1).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .contingency import ContingencyMatrix, boundary_weights, contingency_matrix
from .errors import DegenerateInput
from .sequences import StateSequence

__all__ = ["Measure", "ClusteringScore", "ari", "nmi", "wari", "wnmi"]


class Measure(str, enum.Enum):
    RI = "ri"
    ARI = "ari"
    NMI = "nmi"
    WARI = "wari"
    WNMI = "wnmi"


@dataclass(frozen=True)
class ClusteringScore:
    """A scalar agreement score; ``alpha`` is set for weighted variants."""

    value: float
    measure: Measure
    alpha: float | None = None


def _pair_count(x: np.ndarray | float):
    """Number of unordered pairs, extended to real masses: x*(x-1)/2."""
    return x * (x - 1.0) * 0.5


def _adjusted_rand(c: ContingencyMatrix) -> float:
    if c.total <= 1:
        raise DegenerateInput("adjusted Rand index needs total mass > 1")
    index = _pair_count(c.cells).sum()
    sum_rows = _pair_count(c.row_sums).sum()
    sum_cols = _pair_count(c.col_sums).sum()
    expected = sum_rows * sum_cols / _pair_count(c.total)
    max_index = 0.5 * (sum_rows + sum_cols)
    if max_index == expected:
        # Both partitions trivial (single cluster or all singletons): perfect
        # agreement by convention.
        return 1.0
    return (index - expected) / (max_index - expected)


def _normalized_mutual_information(c: ContingencyMatrix) -> float:
    if c.total <= 0:
        raise DegenerateInput("normalized mutual information needs total mass > 0")
    w = c.total
    p_rows = c.row_sums / w
    p_cols = c.col_sums / w
    with np.errstate(divide="ignore"):
        log_rows = np.where(p_rows > 0, np.log(p_rows), 0.0)
        log_cols = np.where(p_cols > 0, np.log(p_cols), 0.0)
    h_rows = -np.sum(p_rows * log_rows)
    h_cols = -np.sum(p_cols * log_cols)
    if h_rows + h_cols == 0.0:
        return 1.0
    # Reusing log_rows/log_cols makes the log terms cancel exactly under
    # perfect agreement, so identical sequences score exactly 1.0.
    rows_idx, cols_idx = np.nonzero(c.cells)
    p = c.cells[rows_idx, cols_idx] / w
    mutual = np.sum(p * (np.log(p) - log_rows[rows_idx] - log_cols[cols_idx]))
    value = 2.0 * max(float(mutual), 0.0) / (h_rows + h_cols)
    return min(value, 1.0)


def ari(c: ContingencyMatrix) -> ClusteringScore:
    """Adjusted Rand index.

    The fraction of agreeing sample pairs, corrected for chance under the
    standard permutation model:
    ``(Index - E[Index]) / (MaxIndex - E[Index])`` with
    ``Index = sum_ij C2(n_ij)``, ``E[Index] = sum_i C2(a_i) sum_j C2(b_j) / C2(W)``
    and ``MaxIndex = (sum_i C2(a_i) + sum_j C2(b_j)) / 2``.
    """
    return ClusteringScore(_adjusted_rand(c), Measure.ARI)


def nmi(c: ContingencyMatrix) -> ClusteringScore:
    """Mutual information normalized by the mean of the two entropies.

    Returns a value in [0, 1]; 1.0 when both partitions are trivial, 0.0
    when either side carries no information about the other.
    """
    return ClusteringScore(_normalized_mutual_information(c), Measure.NMI)


def wari(gt: StateSequence, pred: StateSequence, alpha: float = 0.1) -> ClusteringScore:
    """Boundary-weighted adjusted Rand index.

    The adjusted Rand computation applied to the contingency matrix built
    with ``boundary_weights(gt, alpha)``. At ``alpha = 0`` this coincides
    exactly (bit for bit) with :func:`ari`.
    """
    weights = boundary_weights(gt, alpha)
    c = contingency_matrix(gt, pred, weights)
    return ClusteringScore(_adjusted_rand(c), Measure.WARI, float(alpha))


def wnmi(gt: StateSequence, pred: StateSequence, alpha: float = 0.1) -> ClusteringScore:
    """Boundary-weighted normalized mutual information."""
    weights = boundary_weights(gt, alpha)
    c = contingency_matrix(gt, pred, weights)
    return ClusteringScore(_normalized_mutual_information(c), Measure.WNMI, float(alpha))
