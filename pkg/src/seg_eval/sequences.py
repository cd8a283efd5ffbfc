"""Canonical label sequences and structural queries on them.

A state sequence assigns one discrete label per timestamp. All measures in
this package operate on :class:`StateSequence`, which stores labels as dense
integer ids in first-appearance order, so every downstream computation is
independent of the original token spelling.

Index conventions used throughout the package:

* Sequences are 0-indexed.
* A change point ``c`` is the first index of the new segment, i.e.
  ``labels[c-1] != labels[c]`` with ``c`` in ``[1, N-1]``.
* Both samples flanking a transition (``c-1`` and ``c``) are at distance 0
  from it.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

import numpy as np

from .errors import EmptySequence, ParseError

__all__ = [
    "StateSequence",
    "Segment",
    "ChangePointList",
    "parse_label_sequence",
    "change_points",
    "segments",
    "distance_to_nearest_cp",
]


@dataclass(frozen=True)
class StateSequence:
    """A length-N sequence of dense integer state ids.

    Every id in ``0..K-1`` must occur. :meth:`from_labels` and
    :func:`parse_label_sequence` produce the canonical form where ids are
    numbered by first appearance; the constructor also accepts any other
    dense labelling (e.g. one produced by permuting ids). ``label_names``
    optionally maps each dense id back to the original token.
    """

    labels: np.ndarray
    label_names: tuple | None = None

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        if labels.ndim != 1 or labels.size == 0:
            raise EmptySequence("a state sequence needs at least one label")
        k = np.unique(labels).size
        if labels.min() < 0 or labels.max() != k - 1:
            raise ValueError(
                "labels must be dense ids 0..K-1; use StateSequence.from_labels() "
                "to canonicalize raw tokens"
            )
        if self.label_names is not None and len(self.label_names) != k:
            raise ValueError("label_names must have one entry per distinct id")
        labels = labels.copy()
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_labels(cls, tokens: Iterable) -> "StateSequence":
        """Densify arbitrary hashable tokens by first appearance."""
        ids: dict = {}
        out = []
        for tok in tokens:
            if tok not in ids:
                ids[tok] = len(ids)
            out.append(ids[tok])
        if not out:
            raise EmptySequence("a state sequence needs at least one label")
        return cls(np.asarray(out, dtype=np.int64), tuple(ids))

    def __len__(self) -> int:
        return int(self.labels.size)

    @property
    def n_states(self) -> int:
        return int(self.labels.max()) + 1


@dataclass(frozen=True)
class Segment:
    """A maximal constant-label run ``[start, end]`` (inclusive indices)."""

    start: int
    end: int
    label: int

    def __post_init__(self):
        if not 0 <= self.start <= self.end:
            raise ValueError("segment bounds must satisfy 0 <= start <= end")

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class ChangePointList:
    """Strictly increasing transition positions, each the first index of a
    new segment."""

    positions: np.ndarray

    def __post_init__(self):
        positions = np.asarray(self.positions, dtype=np.int64)
        if positions.size and (np.any(np.diff(positions) <= 0) or positions[0] < 1):
            raise ValueError("positions must be strictly increasing and >= 1")
        positions = positions.copy()
        positions.setflags(write=False)
        object.__setattr__(self, "positions", positions)

    def __len__(self) -> int:
        return int(self.positions.size)

    def __iter__(self) -> Iterator[int]:
        return iter(self.positions.tolist())


def parse_label_sequence(text: str | IO[str], fmt: str = "lines") -> StateSequence:
    """Parse a label file into a canonical :class:`StateSequence`.

    Parameters
    ----------
    text:
        Raw text or a readable text stream.
    fmt:
        ``"lines"`` for one token per line (blank lines ignored) or
        ``"comma"`` for a single comma-separated line.

    Raises
    ------
    EmptySequence
        If no tokens remain after whitespace stripping.
    ParseError
        On malformed separators, with a 1-based line/column location.
    """
    if isinstance(text, io.TextIOBase) or hasattr(text, "read"):
        text = text.read()
    if fmt not in ("lines", "comma"):
        raise ValueError(f"unknown format {fmt!r}; expected 'lines' or 'comma'")

    tokens: list[str] = []
    if fmt == "lines":
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped:
                continue
            parts = stripped.split()
            if len(parts) != 1:
                column = line.index(parts[1]) + 1
                raise ParseError("expected one token per line", lineno, column)
            tokens.append(stripped)
    else:
        lines = [(i, ln) for i, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
        if len(lines) > 1:
            raise ParseError(
                "comma-separated input must be a single line", lines[1][0], 1
            )
        if lines:
            lineno, line = lines[0]
            column = 1
            for raw in line.split(","):
                tok = raw.strip()
                if not tok:
                    raise ParseError("empty token between commas", lineno, column)
                tokens.append(tok)
                column += len(raw) + 1

    if not tokens:
        raise EmptySequence("no label tokens found in input")
    return StateSequence.from_labels(tokens)


def change_points(seq: StateSequence) -> ChangePointList:
    """Positions ``c`` with ``labels[c-1] != labels[c]``."""
    labels = seq.labels
    positions = np.flatnonzero(labels[1:] != labels[:-1]) + 1
    return ChangePointList(positions)


def segments(seq: StateSequence) -> list[Segment]:
    """Run-length decomposition into maximal constant-label segments."""
    labels = seq.labels
    cps = np.flatnonzero(labels[1:] != labels[:-1]) + 1
    bounds = np.concatenate(([0], cps, [labels.size]))
    return [
        Segment(int(bounds[i]), int(bounds[i + 1] - 1), int(labels[bounds[i]]))
        for i in range(bounds.size - 1)
    ]


def distance_to_nearest_cp(seq: StateSequence) -> np.ndarray:
    """Per-sample distance to the nearest transition.

    The distance is measured to the nearer of the two samples flanking each
    change point, so ``d[c-1] = d[c] = 0`` at every change point ``c``. A
    sequence without change points yields all zeros.
    """
    n = len(seq)
    cps = change_points(seq).positions
    if cps.size == 0:
        return np.zeros(n, dtype=np.int64)
    flanks = np.unique(np.concatenate([cps - 1, cps]))
    idx = np.arange(n)
    pos = np.searchsorted(flanks, idx)
    left = flanks[np.clip(pos - 1, 0, flanks.size - 1)]
    right = flanks[np.clip(pos, 0, flanks.size - 1)]
    return np.minimum(np.abs(idx - left), np.abs(idx - right)).astype(np.int64)
