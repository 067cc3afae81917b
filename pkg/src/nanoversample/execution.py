"""End-to-end resampling with batch-parallel, order-independent randomness."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exceptions import DataError
from .samplers import BatchTask, SynthesisConfig, build_sampler, plan_batches
from .strategy import SamplingPlan, resolve
from .streams import StreamKey, derive_stream
from .tabular import LabeledDataset, missingness_profile, partition_by_class


@dataclass(frozen=True)
class Provenance:
    """Origin of every synthetic row: its class, batch and position in the batch."""

    labels: np.ndarray
    batch_index: np.ndarray
    batch_offset: np.ndarray

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class ResampleResult:
    dataset: LabeledDataset
    n_original: int
    plan: SamplingPlan
    provenance: Provenance

    @property
    def X(self) -> np.ndarray:
        return self.dataset.X

    @property
    def y(self) -> np.ndarray:
        return self.dataset.y

    @property
    def synthetic_X(self) -> np.ndarray:
        return self.dataset.X[self.n_original:]

    @property
    def synthetic_y(self) -> np.ndarray:
        return self.dataset.y[self.n_original:]


def resample(dataset: LabeledDataset, config: SynthesisConfig) -> ResampleResult:
    """Oversample ``dataset`` according to ``config``.

    The output holds the original rows first, unchanged and in input order,
    followed by the synthetic rows grouped by ascending class and then by
    batch. Batches run on up to ``config.jobs`` threads; each draws only from
    the substream keyed by ``(seed, method, class ordinal, batch index)`` and
    writes only into its own slice of the preallocated output, so the result
    is identical for every ``jobs`` value.
    """
    partition = partition_by_class(dataset)
    if len(partition) < 2:
        raise DataError("nothing to resample: dataset has a single class")
    profile = missingness_profile(dataset, partition)
    plan = resolve(config.sampling_strategy, dataset.class_counts())
    sampler = build_sampler(dataset, config, partition, profile)
    tasks = plan_batches(sampler, plan)

    n, d = dataset.X.shape
    sizes = [len(t.slots) for t in tasks]
    starts = n + np.concatenate([[0], np.cumsum(sizes, dtype=np.intp)])[:-1]
    X_out = np.empty((n + sum(sizes), d))
    X_out[:n] = dataset.X

    def run(task: BatchTask, start: int):
        stream = derive_stream(
            StreamKey(config.seed, config.method.tag, task.class_ordinal, task.batch_index)
        )
        X_out[start:start + len(task.slots)] = sampler.generate(task.cls, task.slots, stream)

    if config.jobs == 1 or len(tasks) <= 1:
        for task, start in zip(tasks, starts):
            run(task, start)
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            list(pool.map(run, tasks, starts))

    X_out.setflags(write=False)
    syn_labels = np.repeat(np.array([t.cls for t in tasks], dtype=dataset.y.dtype), sizes)
    provenance = Provenance(
        labels=syn_labels,
        batch_index=np.repeat(np.array([t.batch_index for t in tasks], dtype=np.intp), sizes),
        batch_offset=np.arange(len(syn_labels), dtype=np.intp) - np.repeat(starts - n, sizes),
    )
    y_out = np.concatenate([dataset.y, syn_labels])
    y_out.setflags(write=False)
    out = LabeledDataset(
        X_out,
        y_out,
        column_names=dataset.column_names,
        label_name=dataset.label_name,
        label_position=dataset.label_position,
    )
    return ResampleResult(out, n, plan, provenance)


def resample_arrays(X, y, **config):
    """Convenience wrapper: ``(X, y)`` in, resampled ``(X, y)`` out.

    Keyword arguments are forwarded to :class:`SynthesisConfig`.
    """
    result = resample(LabeledDataset(X, y), SynthesisConfig(**config))
    return result.X, result.y
