import contextlib
import time

import numpy as np
import pytest

from nanoversample import LabeledDataset

_ACCEPTANCE = []


def make_dataset(counts, d=10, missing=0.2, seed=0, shift=1.0):
    """Gaussian blobs, one per class, with cells knocked out completely at random."""
    rng = np.random.default_rng(seed)
    blocks, labels = [], []
    for i, (cls, n) in enumerate(counts.items()):
        blocks.append(rng.normal(loc=shift * i, size=(n, d)))
        labels += [cls] * n
    X = np.vstack(blocks)
    X[rng.random(X.shape) < missing] = np.nan
    return LabeledDataset(X, np.array(labels))


@pytest.fixture
def imbalanced():
    """120 x 10, {0: 100, 1: 20}, about 20% missing."""
    return make_dataset({0: 100, 1: 20}, d=10, missing=0.2, seed=7)


@pytest.fixture
def criterion():
    @contextlib.contextmanager
    def run(number, title, budget):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _ACCEPTANCE.append((number, "FAIL", title, time.perf_counter() - start, budget))
            raise
        elapsed = time.perf_counter() - start
        ok = elapsed < budget
        _ACCEPTANCE.append((number, "PASS" if ok else "FAIL", title, elapsed, budget))
        assert ok, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, title, elapsed, budget in sorted(_ACCEPTANCE):
        terminalreporter.write_line(
            f"criterion {number:2d}  {status}  {title}  ({elapsed:.2f}s, budget {budget:g}s)"
        )
