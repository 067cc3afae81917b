"""Dataset representation, class partitioning and missingness statistics.

Missing cells are stored as ``NaN`` in a float64 feature matrix. Every array
held by a :class:`LabeledDataset` is flagged read-only so that instances can be
shared between worker threads without copying.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable

import numpy as np

from .exceptions import DataError


def as_feature_matrix(X) -> np.ndarray:
    """Validate ``X`` and return it as a read-only float64 ``(N, d)`` array.

    ``None`` entries are accepted as missing and converted to ``NaN``.
    Observed infinities are rejected. An input that is already a read-only
    float64 array is used as is; anything else is copied.
    """
    frozen = isinstance(X, np.ndarray) and X.dtype == np.float64 and not X.flags.writeable
    arr = X if frozen else np.array(X, dtype=np.float64)
    if arr.ndim != 2:
        raise DataError(f"feature matrix must be 2-dimensional, got ndim={arr.ndim}")
    n, d = arr.shape
    if n < 1 or d < 1:
        raise DataError(f"feature matrix must have at least one row and column, got {arr.shape}")
    if np.isinf(arr).any():
        r, c = np.argwhere(np.isinf(arr))[0]
        raise DataError(f"infinite value at row {r}, column {c}")
    arr.setflags(write=False)
    return arr


def _as_labels(y, n_rows: int) -> np.ndarray:
    labels = np.asarray(y)
    if labels.ndim != 1:
        raise DataError("labels must be one-dimensional")
    if labels.shape[0] != n_rows:
        raise DataError(f"labels length {labels.shape[0]} does not match {n_rows} feature rows")
    if labels.dtype == object:
        for i, v in enumerate(labels):
            if v is None or (isinstance(v, float) and np.isnan(v)):
                raise DataError(f"missing label at row {i}")
    elif labels.dtype.kind == "f" and np.isnan(labels).any():
        raise DataError(f"missing label at row {int(np.flatnonzero(np.isnan(labels))[0])}")
    if labels.flags.writeable:
        labels = labels.copy()
        labels.setflags(write=False)
    return labels


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Feature matrix with one class label per row.

    Parameters
    ----------
    X : array-like of shape (n_samples, n_features)
        Features; ``NaN`` (or ``None``) marks a missing cell.
    y : array-like of shape (n_samples,)
        Class identifiers. Any totally ordered hashable tokens are allowed.
    column_names : sequence of str, optional
        One distinct name per feature column.
    label_name : str, optional
        Name of the label column.
    label_position : int, optional
        Column position of the label in the source table, used when writing
        the table back out. ``None`` means "after the last feature".
    """

    X: np.ndarray
    y: np.ndarray
    column_names: tuple[str, ...] | None = None
    label_name: str | None = None
    label_position: int | None = field(default=None, compare=False)

    def __post_init__(self):
        X = as_feature_matrix(self.X)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", _as_labels(self.y, X.shape[0]))
        if self.column_names is not None:
            names = tuple(str(c) for c in self.column_names)
            if len(names) != X.shape[1]:
                raise DataError(f"expected {X.shape[1]} column names, got {len(names)}")
            if len(set(names)) != len(names):
                raise DataError("column names must be distinct")
            object.__setattr__(self, "column_names", names)
        if self.label_position is not None and not 0 <= self.label_position <= X.shape[1]:
            raise DataError(f"label position {self.label_position} out of range")

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    @property
    def n_features(self) -> int:
        return self.X.shape[1]

    def classes(self) -> list:
        """Distinct class identifiers in ascending order."""
        return [_plain(c) for c in np.unique(self.y)]

    def class_counts(self) -> dict:
        values, counts = np.unique(self.y, return_counts=True)
        return {_plain(v): int(c) for v, c in zip(values, counts)}


def _plain(value) -> Any:
    # numpy scalars -> builtin types so dict keys and JSON output behave
    return value.item() if isinstance(value, np.generic) else value


@dataclass(frozen=True)
class ClassPartition:
    """Ascending row indices per class, with classes in ascending order."""

    groups: dict[Hashable, np.ndarray]

    def __iter__(self):
        return iter(self.groups)

    def __getitem__(self, cls) -> np.ndarray:
        return self.groups[cls]

    def __len__(self) -> int:
        return len(self.groups)

    def ordinal(self, cls) -> int:
        return list(self.groups).index(cls)


def partition_by_class(dataset: LabeledDataset) -> ClassPartition:
    groups = {}
    for cls in dataset.classes():
        idx = np.flatnonzero(dataset.y == cls)
        idx.setflags(write=False)
        groups[cls] = idx
    return ClassPartition(groups)


@dataclass(frozen=True)
class MissingnessProfile:
    """Per-class, per-feature empirical probability that a cell is missing."""

    rates: dict[Hashable, np.ndarray]

    def for_class(self, cls) -> np.ndarray:
        try:
            return self.rates[cls]
        except KeyError:
            raise DataError(f"unknown class in profile: {cls!r}") from None


def missingness_profile(dataset: LabeledDataset, partition: ClassPartition) -> MissingnessProfile:
    missing = np.isnan(dataset.X)
    rates = {}
    for cls, rows in partition.groups.items():
        r = missing[rows].sum(axis=0) / len(rows)
        r.setflags(write=False)
        rates[cls] = r
    return MissingnessProfile(rates)


def nan_rate(X) -> float:
    """Fraction of missing cells in a feature matrix."""
    X = np.asarray(X, dtype=np.float64)
    if X.size == 0:
        raise DataError("nan_rate of an empty matrix is undefined")
    return int(np.isnan(X).sum()) / X.size
