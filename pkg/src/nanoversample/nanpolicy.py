"""Feature-wise rules deciding which synthetic cells stay missing.

Both combinators broadcast over leading axes, so a whole batch of parent pairs
can be combined in one call. All randomness (interpolation weights, Bernoulli
draws) is supplied by the caller.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable

import numpy as np

from .tabular import MissingnessProfile


class NanStrategy(str, Enum):
    PRESERVE = "preserve"
    INTERPOLATE = "interpolate"
    RANDOM = "random"

    @classmethod
    def parse(cls, value) -> "NanStrategy":
        if isinstance(value, NanStrategy):
            return value
        key = str(value).strip().lower()
        key = {"preserve_pattern": "preserve", "random_pattern": "random"}.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown NaN strategy {value!r}") from None


def _masked_by_profile(out, profile, cls, bernoulli):
    if profile is None or bernoulli is None:
        raise ValueError("the random strategy needs a missingness profile and Bernoulli draws")
    rates = profile.for_class(cls)
    # strict comparison: rate 0 never masks, rate 1 always does
    return np.where(np.asarray(bernoulli) < rates, np.nan, out)


def combine_pair(
    a,
    b,
    lam,
    strategy: NanStrategy = NanStrategy.PRESERVE,
    profile: MissingnessProfile | None = None,
    cls=None,
    bernoulli=None,
) -> np.ndarray:
    """Interpolate between parent rows ``a`` and ``b`` feature by feature.

    Parameters
    ----------
    a, b : ndarray of shape (..., d)
        Parent rows, ``NaN`` where missing.
    lam : float or ndarray of shape (...)
        Interpolation weight(s) in [0, 1].
    strategy : NanStrategy
        ``PRESERVE``: a feature is observed only if both parents observe it.
        ``INTERPOLATE``: a feature observed by one parent copies that value;
        it is missing only if neither parent observes it.
        ``RANDOM``: a feature is masked when ``bernoulli < p``, ``p`` being
        the class-``cls`` missing rate from ``profile``; unmasked features
        follow the ``INTERPOLATE`` rule.
    bernoulli : ndarray of shape (..., d), optional
        Uniform draws used by ``RANDOM`` only.

    Returns
    -------
    ndarray of shape (..., d)
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    if np.any((lam < 0) | (lam > 1)):
        raise ValueError("interpolation weight must lie in [0, 1]")
    strategy = NanStrategy.parse(strategy)

    out = a + lam[..., np.newaxis] * (b - a)
    # keeps rounding from overshooting the far parent
    out = np.clip(out, np.minimum(a, b), np.maximum(a, b))
    if strategy is NanStrategy.PRESERVE:
        return out

    out = np.where(np.isnan(out), np.where(np.isnan(a), b, a), out)
    if strategy is NanStrategy.RANDOM:
        out = _masked_by_profile(out, profile, cls, bernoulli)
    return out


def perturb_single(seeds, offsets, donors, strategy, profile=None, cls=None, bernoulli=None):
    """Batched form of :func:`combine_single`; ``donors`` holds donor values
    (``NaN`` where no donor exists) instead of a lookup function."""
    seeds = np.asarray(seeds, dtype=np.float64)
    strategy = NanStrategy.parse(strategy)
    if strategy is NanStrategy.PRESERVE:
        return seeds + offsets
    out = np.where(np.isnan(seeds), donors, seeds) + offsets
    if strategy is NanStrategy.RANDOM:
        out = _masked_by_profile(out, profile, cls, bernoulli)
    return out


def combine_single(
    seed,
    offsets,
    strategy: NanStrategy = NanStrategy.PRESERVE,
    donor_lookup: Callable[[int], float | None] | None = None,
    profile: MissingnessProfile | None = None,
    cls=None,
    bernoulli=None,
) -> np.ndarray:
    """Perturb a single seed row by per-feature ``offsets``.

    Missing seed features stay missing under ``PRESERVE``. Under
    ``INTERPOLATE`` (and unmasked ``RANDOM`` features) they are filled from
    ``donor_lookup(k)`` before perturbation, or left missing when it returns
    ``None``.
    """
    seed = np.asarray(seed, dtype=np.float64)
    offsets = np.asarray(offsets, dtype=np.float64)
    donors = np.full(seed.shape, np.nan)
    if donor_lookup is not None and NanStrategy.parse(strategy) is not NanStrategy.PRESERVE:
        for k in np.flatnonzero(np.isnan(seed)):
            v = donor_lookup(int(k))
            if v is not None:
                donors[k] = v
    return perturb_single(seed, offsets, donors, strategy, profile, cls, bernoulli)
