import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nanoversample import k_nearest, masked_distance, shared_observed_dims

nan = np.nan


def oracle_distance(a, b):
    """Scalar reference: left-to-right sum over features observed in both rows."""
    total, shared = 0.0, 0
    for x, z in zip(a, b):
        if not (math.isnan(x) or math.isnan(z)):
            total += (x - z) * (x - z)
            shared += 1
    return (math.sqrt(total) if shared else None), shared


def oracle_knn(seed, candidates, X, k):
    scored = []
    for j in candidates:
        if j == seed:
            continue
        dist, shared = oracle_distance(X[seed].tolist(), X[j].tolist())
        if shared:
            scored.append((dist, j))
    scored.sort()
    return [j for _, j in scored[:k]]


def test_shared_dims_examples():
    assert shared_observed_dims([1, nan, 3], [4, 5, nan]).tolist() == [0]
    assert shared_observed_dims([1, 2, 3], [1, 2, 3]).tolist() == [0, 1, 2]
    assert shared_observed_dims([nan, nan], [1, 2]).tolist() == []


def test_masked_distance_examples():
    d = masked_distance([1, nan, 3], [4, 5, nan])
    assert (d.value, d.shared) == (3.0, 1)
    d = masked_distance([2, 2], [2, 2])
    assert (d.value, d.shared) == (0.0, 2)
    d = masked_distance([nan, 1], [1, nan])
    assert d.value is None and d.shared == 0 and not d.comparable


def test_masked_distance_is_unnormalized():
    # 2 shared dims each differing by 1 -> sqrt(2), not the per-dim mean
    assert masked_distance([0, 0, nan], [1, 1, 5]).value == pytest.approx(math.sqrt(2))


def test_masked_distance_length_mismatch():
    with pytest.raises(ValueError):
        masked_distance([1, 2], [1])


def test_k_nearest_examples():
    X = np.array([[0.0], [1.0], [2.0], [3.0]])
    nl = k_nearest(0, [0, 1, 2, 3], X, 2)
    assert nl.indices.tolist() == [1, 2]
    assert nl.distances.tolist() == [1.0, 2.0]
    assert 0 not in nl.indices

    X = np.array([[0.0], [9.0], [1.0], [9.0], [-1.0]])
    assert k_nearest(0, [4, 2], X, 2).indices.tolist() == [2, 4]

    X = np.array([[1.0, nan], [nan, 2.0], [nan, 3.0]])
    assert len(k_nearest(0, [1, 2], X, 3)) == 0


def test_k_nearest_keeps_duplicates_of_seed():
    X = np.array([[1.0, 1.0], [1.0, 1.0], [4.0, 4.0]])
    nl = k_nearest(0, [0, 1, 2], X, 1)
    assert nl.indices.tolist() == [1]
    assert nl.pairs()[0][1].value == 0.0


def test_k_nearest_rejects_bad_k():
    with pytest.raises(ValueError):
        k_nearest(0, [1], np.zeros((2, 1)), 0)


row_pair = st.integers(1, 8).flatmap(
    lambda d: st.tuples(
        *[st.lists(st.one_of(st.just(nan), st.floats(-1e3, 1e3)), min_size=d, max_size=d)] * 2
    )
)


@given(row_pair)
def test_masked_distance_symmetric_and_matches_oracle(pair):
    a, b = pair
    ab, ba = masked_distance(a, b), masked_distance(b, a)
    assert ab == ba
    value, shared = oracle_distance(a, b)
    assert ab.shared == shared
    assert ab.value == value
    assert (ab.value is None) == (shared == 0)


@given(row_pair)
def test_self_distance_zero(pair):
    a, _ = pair
    observed = sum(not math.isnan(v) for v in a)
    d = masked_distance(a, a)
    if observed:
        assert (d.value, d.shared) == (0.0, observed)
    else:
        assert d.value is None


@given(row_pair)
def test_dropping_unobserved_dimension_is_neutral(pair):
    a, b = pair
    for k in range(len(a)):
        if math.isnan(a[k]) or math.isnan(b[k]):
            a2 = a[:k] + a[k + 1:]
            b2 = b[:k] + b[k + 1:]
            if a2:
                assert masked_distance(a2, b2) == masked_distance(a, b)
            break


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_k_nearest_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    n, d = rng.integers(2, 51), rng.integers(1, 9)
    # integer grid values make exact ties common, exercising the tie-break
    X = rng.integers(-3, 4, size=(n, d)).astype(float)
    X[rng.random(X.shape) < 0.3] = nan
    k = int(rng.integers(1, 8))
    cands = np.flatnonzero(rng.random(n) < 0.8)
    if len(cands) == 0:
        cands = np.arange(n)
    s = int(rng.integers(n))
    assert k_nearest(s, cands, X, k).indices.tolist() == oracle_knn(s, cands.tolist(), X, k)
