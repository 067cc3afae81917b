"""Keyed, counter-based random substreams.

Each batch of synthetic rows draws from its own Philox substream whose key is
derived from ``(global_seed, method_tag, class_ordinal, batch_index)``. Since a
batch never touches another batch's stream, the order in which batches run
(or the number of workers running them) cannot change the output.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtri

_U64 = 2**64
_HALF_STEP = 2.0**-54


@dataclass(frozen=True)
class StreamKey:
    global_seed: int
    method_tag: int
    class_ordinal: int
    batch_index: int

    def __post_init__(self):
        if not 0 <= self.global_seed < _U64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.global_seed}")
        for name in ("method_tag", "class_ordinal", "batch_index"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")


class Stream:
    """Source of uniform draws in ``[0, 1)`` and inverse-CDF normal deviates."""

    def __init__(self, key: StreamKey):
        self.key = key
        seq = np.random.SeedSequence(
            entropy=key.global_seed,
            spawn_key=(key.method_tag, key.class_ordinal, key.batch_index),
        )
        self._gen = np.random.Generator(np.random.Philox(seq))

    def uniform(self, size=None) -> np.ndarray:
        return self._gen.random(size)

    def normal(self, size=None) -> np.ndarray:
        return normal_from_uniform(self._gen.random(size))


def derive_stream(key: StreamKey) -> Stream:
    return Stream(key)


def normal_from_uniform(u) -> np.ndarray:
    """Standard normal deviates from uniforms on the ``[0, 1)`` grid."""
    u = np.asarray(u, dtype=np.float64)
    # half-step shift maps the 2**-53 grid symmetrically into (0, 1); the upper
    # half is mirrored because 1 - 2**-54 is not representable
    return np.where(u < 0.5, ndtri(u + _HALF_STEP), -ndtri((1.0 - u) - _HALF_STEP))
