"""Shared generators for randomized tests."""

from pathlib import Path

import numpy as np
import pytest

from seg_eval import StateSequence

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def random_segmentation(rng: np.random.Generator, n: int, k_max: int) -> StateSequence:
    """Segment-structured sequence: random cut points, adjacent-distinct labels."""
    n_segments = int(rng.integers(1, min(9, n) + 1))
    if n_segments > 1:
        cuts = np.sort(rng.choice(np.arange(1, n), size=n_segments - 1, replace=False))
    else:
        cuts = np.array([], dtype=int)
    bounds = np.concatenate(([0], cuts, [n]))
    k = int(rng.integers(2, k_max + 1)) if k_max >= 2 else 1
    labels = []
    prev = -1
    for _ in range(n_segments):
        lab = int(rng.integers(0, k))
        while lab == prev and k > 1:
            lab = int(rng.integers(0, k))
        labels.append(lab)
        prev = lab
    runs = [
        np.full(bounds[i + 1] - bounds[i], labels[i]) for i in range(n_segments)
    ]
    return StateSequence.from_labels(np.concatenate(runs))


def random_pair(
    rng: np.random.Generator, n_max: int, k_max: int
) -> tuple[StateSequence, StateSequence]:
    """A ground truth plus one of three prediction styles: an independent
    segmentation, a block-corrupted copy, or iid noise."""
    n = int(rng.integers(4, n_max + 1))
    gt = random_segmentation(rng, n, k_max)
    style = int(rng.integers(0, 3))
    if style == 0:
        pred = random_segmentation(rng, n, k_max)
    elif style == 1:
        raw = np.array(gt.labels, dtype=np.int64)
        for _ in range(int(rng.integers(1, 4))):
            start = int(rng.integers(0, n))
            length = int(rng.integers(1, max(2, n // 3)))
            raw[start : start + length] = int(rng.integers(0, k_max))
        pred = StateSequence.from_labels(raw)
    else:
        pred = StateSequence.from_labels(rng.integers(0, k_max, size=n))
    return gt, pred


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(2024)
