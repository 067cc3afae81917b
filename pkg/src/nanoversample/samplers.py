"""NaN-aware SMOTE, ADASYN and ROSE samplers.

A sampler works in two phases. ``schedule`` runs once per class, single
threaded, and fixes everything that does not need randomness: neighbour
lists, ADASYN quotas, ROSE bandwidths and the seed row behind every output
slot. ``generate`` then turns one batch of slots into synthetic rows using only
the batch's own random stream, so batches can run in any order or in parallel.

Every output row consumes a fixed number of uniform draws regardless of the
NaN strategy or of which branch a feature takes.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Hashable, NamedTuple

import numpy as np

from .exceptions import AllocationWarning, DataError
from .geometry import k_nearest
from .nanpolicy import NanStrategy, combine_pair, perturb_single
from .strategy import SamplingPlan, SamplingSpec, majority_class, round_half_away
from .streams import Stream, StreamKey, derive_stream, normal_from_uniform
from .tabular import (
    ClassPartition,
    LabeledDataset,
    MissingnessProfile,
    missingness_profile,
    partition_by_class,
)


class Method(str, Enum):
    SMOTE = "smote"
    ADASYN = "adasyn"
    ROSE = "rose"

    @property
    def tag(self) -> int:
        return {"smote": 1, "adasyn": 2, "rose": 3}[self.value]


@dataclass(frozen=True)
class SynthesisConfig:
    """Parameters of one resampling run.

    Parameters
    ----------
    method : Method or str
        ``"smote"``, ``"adasyn"`` or ``"rose"``.
    k : int
        Neighbour count for SMOTE/ADASYN.
    sampling_strategy : str, float, dict or SamplingSpec
        See :class:`~nanoversample.strategy.SamplingSpec`.
    nan_strategy : NanStrategy or str
        ``"preserve"``, ``"interpolate"`` or ``"random"``.
    shrinkage : float
        Multiplier on the ROSE kernel bandwidth; 0 gives a plain bootstrap.
    seed : int
        64-bit unsigned global seed.
    batch_size : int
        Synthetic rows per random substream / unit of parallel work.
    jobs : int
        Worker threads.
    """

    method: Method = Method.SMOTE
    k: int = 5
    sampling_strategy: SamplingSpec = field(default_factory=SamplingSpec)
    nan_strategy: NanStrategy = NanStrategy.PRESERVE
    shrinkage: float = 1.0
    seed: int = 0
    batch_size: int = 64
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        object.__setattr__(self, "sampling_strategy", SamplingSpec.coerce(self.sampling_strategy))
        object.__setattr__(self, "nan_strategy", NanStrategy.parse(self.nan_strategy))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not self.shrinkage >= 0:
            raise ValueError("shrinkage must be >= 0")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class AdasynAllocation:
    seeds: np.ndarray
    difficulty: np.ndarray
    weights: np.ndarray
    quotas: np.ndarray


def adasyn_allocation(difficulty, total: int) -> tuple[np.ndarray, np.ndarray]:
    """Split ``total`` synthetic rows across seeds in proportion to difficulty.

    Returns ``(weights, quotas)``. Quotas are rounded half away from zero per
    seed without redistributing the residual, so they need not sum to
    ``total``. When every difficulty is zero the split is uniform and an
    :class:`AllocationWarning` is emitted.
    """
    r = np.asarray(difficulty, dtype=np.float64)
    s = r.sum()
    if s > 0:
        weights = r / s
    else:
        warnings.warn(
            "no seed has a majority-class neighbour; allocating uniformly",
            AllocationWarning,
            stacklevel=2,
        )
        weights = np.full(len(r), 1.0 / len(r))
    quotas = np.array([round_half_away(w * total) for w in weights], dtype=np.intp)
    return weights, quotas


def rose_bandwidth(X: np.ndarray, rows: np.ndarray, shrinkage: float) -> np.ndarray:
    """Per-feature Gaussian kernel width for one class.

    ``shrinkage * (4 / ((d + 2) n))**(1 / (d + 4)) * std_k``, with ``std_k``
    the sample standard deviation of the observed values of feature ``k``
    (zero when fewer than two are observed).
    """
    n, d = len(rows), X.shape[1]
    factor = (4.0 / ((d + 2) * n)) ** (1.0 / (d + 4))
    sub = X[rows]
    sigma = np.zeros(d)
    for k in range(d):
        col = sub[:, k]
        col = col[~np.isnan(col)]
        if len(col) >= 2:
            sigma[k] = np.std(col, ddof=1)
    return shrinkage * factor * sigma


class PairDraws(NamedTuple):
    seeds: np.ndarray
    partners: np.ndarray
    lam: np.ndarray
    bernoulli: np.ndarray


class _Sampler:
    method: Method

    def __init__(self, dataset: LabeledDataset, config: SynthesisConfig,
                 partition: ClassPartition, profile: MissingnessProfile):
        self.dataset = dataset
        self.X = dataset.X
        self.config = config
        self.partition = partition
        self.profile = profile

    def schedule(self, cls, count: int) -> np.ndarray:
        raise NotImplementedError

    def generate(self, cls, slots: np.ndarray, stream: Stream) -> np.ndarray:
        raise NotImplementedError


class _PairSampler(_Sampler):
    """Shared machinery for the two interpolating samplers."""

    def __init__(self, *args):
        super().__init__(*args)
        self._neighbours: dict[int, np.ndarray] = {}

    def _ensure_neighbours(self, cls):
        rows = self.partition[cls]
        for seed in rows.tolist():
            if seed not in self._neighbours:
                self._neighbours[seed] = k_nearest(seed, rows, self.X, self.config.k).indices

    def draw(self, cls, slots, stream) -> PairDraws:
        """Partners, weights and Bernoulli draws for one batch."""
        d = self.X.shape[1]
        u = stream.uniform((len(slots), 2 + d))
        partners = np.empty(len(slots), dtype=np.intp)
        for j, seed in enumerate(slots):
            nbrs = self._neighbours[int(seed)]
            # lone seed or no comparable neighbour: pair with itself (copy)
            partners[j] = nbrs[int(u[j, 0] * len(nbrs))] if len(nbrs) else seed
        return PairDraws(np.asarray(slots, dtype=np.intp), partners, u[:, 1], u[:, 2:])

    def generate(self, cls, slots, stream):
        dr = self.draw(cls, slots, stream)
        return combine_pair(
            self.X[dr.seeds], self.X[dr.partners], dr.lam, self.config.nan_strategy,
            self.profile, cls, dr.bernoulli,
        )


class SmoteSampler(_PairSampler):
    method = Method.SMOTE

    def schedule(self, cls, count):
        rows = self.partition[cls]
        if len(rows) == 0:
            raise DataError(f"empty class {cls!r}")
        self._ensure_neighbours(cls)
        return rows[np.arange(count) % len(rows)]


class AdasynSampler(_PairSampler):
    method = Method.ADASYN

    def __init__(self, *args):
        super().__init__(*args)
        self.majority = majority_class({c: len(r) for c, r in self.partition.groups.items()})
        self.allocations: dict[Hashable, AdasynAllocation] = {}

    def difficulty(self, cls) -> np.ndarray:
        """Fraction of each seed's k nearest neighbours (over all rows) that are
        majority-class rows. For the majority class itself, any other class counts."""
        k = self.config.k
        everyone = np.arange(self.dataset.n_samples)
        y = self.dataset.y
        out = []
        for seed in self.partition[cls]:
            nbrs = k_nearest(seed, everyone, self.X, k).indices
            labels = y[nbrs]
            hostile = labels != cls if cls == self.majority else labels == self.majority
            out.append(np.count_nonzero(hostile) / k)
        return np.array(out)

    def schedule(self, cls, count):
        rows = self.partition[cls]
        if len(rows) == 0:
            raise DataError(f"empty class {cls!r}")
        self._ensure_neighbours(cls)
        r = self.difficulty(cls)
        weights, quotas = adasyn_allocation(r, count)
        self.allocations[cls] = AdasynAllocation(rows, r, weights, quotas)
        return np.repeat(rows, quotas)


class RoseSampler(_Sampler):
    """Gaussian perturbation of uniformly drawn seeds.

    Slots carry no seed; each output row draws its seed from the batch stream.
    """

    method = Method.ROSE

    def __init__(self, *args):
        super().__init__(*args)
        self.bandwidth: dict[Hashable, np.ndarray] = {}
        self._donors: dict[Hashable, list[np.ndarray]] = {}

    def schedule(self, cls, count):
        rows = self.partition[cls]
        if len(rows) == 0:
            raise DataError(f"empty class {cls!r}")
        self.bandwidth[cls] = rose_bandwidth(self.X, rows, self.config.shrinkage)
        observed = ~np.isnan(self.X[rows])
        self._donors[cls] = [rows[observed[:, k]] for k in range(self.X.shape[1])]
        return np.arange(count, dtype=np.intp)

    def generate(self, cls, slots, stream):
        d = self.X.shape[1]
        rows = self.partition[cls]
        b = len(slots)
        u = stream.uniform((b, 1 + 3 * d))
        seeds = rows[(u[:, 0] * len(rows)).astype(np.intp)]
        offsets = self.bandwidth[cls] * normal_from_uniform(u[:, 1:1 + d])
        donors = np.full((b, d), np.nan)
        for k, pool in enumerate(self._donors[cls]):
            if len(pool):
                pick = pool[(u[:, 1 + d + k] * len(pool)).astype(np.intp)]
                donors[:, k] = self.X[pick, k]
        return perturb_single(
            self.X[seeds], offsets, donors, self.config.nan_strategy,
            self.profile, cls, u[:, 1 + 2 * d:],
        )


_SAMPLERS = {Method.SMOTE: SmoteSampler, Method.ADASYN: AdasynSampler, Method.ROSE: RoseSampler}


def build_sampler(dataset: LabeledDataset, config: SynthesisConfig,
                  partition: ClassPartition | None = None,
                  profile: MissingnessProfile | None = None) -> _Sampler:
    if partition is None:
        partition = partition_by_class(dataset)
    if profile is None:
        profile = missingness_profile(dataset, partition)
    return _SAMPLERS[config.method](dataset, config, partition, profile)


@dataclass(frozen=True)
class BatchTask:
    cls: Hashable
    class_ordinal: int
    batch_index: int
    slots: np.ndarray


def plan_batches(sampler: _Sampler, plan: SamplingPlan) -> list[BatchTask]:
    """Schedule every class and cut each schedule into batches.

    Tasks come out in output order: ascending class, then batch index.
    """
    size = sampler.config.batch_size
    tasks = []
    for ordinal, cls in enumerate(sampler.partition):
        count = plan.synth_counts.get(cls, 0)
        if count <= 0:
            continue
        slots = sampler.schedule(cls, count)
        for b, start in enumerate(range(0, len(slots), size)):
            tasks.append(BatchTask(cls, ordinal, b, slots[start:start + size]))
    return tasks


StreamFactory = Callable[[int, int], Stream]


def _default_streams(config: SynthesisConfig) -> StreamFactory:
    def make(class_ordinal, batch_index):
        return derive_stream(StreamKey(config.seed, config.method.tag, class_ordinal, batch_index))
    return make


def _run(method: Method, dataset, plan, config, streams):
    config = replace(config, method=method)
    sampler = build_sampler(dataset, config)
    streams = streams or _default_streams(config)
    d = dataset.n_features
    blocks, labels = [np.empty((0, d))], []
    for task in plan_batches(sampler, plan):
        blocks.append(sampler.generate(task.cls, task.slots, streams(task.class_ordinal, task.batch_index)))
        labels.extend([task.cls] * len(task.slots))
    return np.vstack(blocks), np.array(labels, dtype=dataset.y.dtype)


def smote_nan(dataset: LabeledDataset, plan: SamplingPlan, config: SynthesisConfig,
              streams: StreamFactory | None = None):
    """Generate SMOTE-style synthetic rows sequentially.

    Seeds cycle through each class's rows in ascending index order; each
    synthetic row interpolates its seed toward one of the seed's ``k`` nearest
    same-class neighbours. ``streams(class_ordinal, batch_index)`` supplies the
    random stream of each batch and defaults to the config seed.

    Returns
    -------
    X_syn : ndarray of shape (n_synthetic, d)
    y_syn : ndarray of shape (n_synthetic,)
    """
    return _run(Method.SMOTE, dataset, plan, config, streams)


def adasyn_nan(dataset: LabeledDataset, plan: SamplingPlan, config: SynthesisConfig,
               streams: StreamFactory | None = None):
    """ADASYN variant of :func:`smote_nan`: each seed's share of the class
    budget is proportional to its difficulty score. The number of rows emitted
    may differ from the plan by per-seed rounding."""
    return _run(Method.ADASYN, dataset, plan, config, streams)


def rose_nan(dataset: LabeledDataset, plan: SamplingPlan, config: SynthesisConfig,
             streams: StreamFactory | None = None):
    """Gaussian-kernel perturbation of uniformly drawn same-class seeds."""
    return _run(Method.ROSE, dataset, plan, config, streams)
