"""Euclidean distance and neighbour search restricted to shared observed features."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class MaskedDistance:
    """Distance over the features observed in both rows.

    ``value`` is ``None`` when the rows share no observed feature; such a pair
    is incomparable rather than infinitely far apart.
    """

    value: float | None
    shared: int

    @property
    def comparable(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class NeighborList:
    seed: int
    indices: np.ndarray
    distances: np.ndarray
    shared: np.ndarray

    def __len__(self) -> int:
        return len(self.indices)

    def pairs(self) -> list[tuple[int, MaskedDistance]]:
        return [
            (int(i), MaskedDistance(float(v), int(s)))
            for i, v, s in zip(self.indices, self.distances, self.shared)
        ]


def shared_observed_dims(a, b) -> np.ndarray:
    """Ascending indices of the features observed in both ``a`` and ``b``."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"row lengths differ: {a.shape} vs {b.shape}")
    return np.flatnonzero(~np.isnan(a) & ~np.isnan(b))


def masked_sq_distances(rows: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Squared masked distances from ``x`` to every row of ``rows``.

    Returns ``(sq, shared)``. Squared differences are accumulated feature by
    feature in ascending order, so the result is bit-identical to a scalar
    left-to-right loop over the same pair.
    """
    n, d = rows.shape
    sq = np.zeros(n)
    shared = np.zeros(n, dtype=np.intp)
    for k in range(d):
        if np.isnan(x[k]):
            continue
        diff = rows[:, k] - x[k]
        ok = ~np.isnan(diff)
        sq[ok] += diff[ok] * diff[ok]
        shared += ok
    return sq, shared


def masked_distance(a, b) -> MaskedDistance:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"row lengths differ: {a.shape} vs {b.shape}")
    sq, shared = masked_sq_distances(b[np.newaxis, :], a)
    if shared[0] == 0:
        return MaskedDistance(None, 0)
    return MaskedDistance(float(np.sqrt(sq[0])), int(shared[0]))


def k_nearest(seed: int, candidates, X: np.ndarray, k: int) -> NeighborList:
    """Exhaustive k-nearest-neighbour query under the masked metric.

    The seed itself is dropped from ``candidates``, as are candidates with no
    feature observed in common with the seed. Ties in distance are broken by
    ascending row index. Fewer than ``k`` neighbours (possibly none) are
    returned when not enough comparable candidates exist.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    candidates = np.asarray(candidates, dtype=np.intp)
    candidates = candidates[candidates != seed]
    sq, shared = masked_sq_distances(X[candidates], X[seed])
    keep = shared > 0
    candidates, shared = candidates[keep], shared[keep]
    dist = np.sqrt(sq[keep])
    order = np.lexsort((candidates, dist))[:k]
    return NeighborList(int(seed), candidates[order], dist[order], shared[order])
