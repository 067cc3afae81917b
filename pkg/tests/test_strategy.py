import pytest
from hypothesis import given
from hypothesis import strategies as st

from nanoversample import DataError, SamplingSpec, parse_sampling_spec, resolve
from nanoversample.strategy import round_half_away

COUNTS = {0: 100, 1: 20}


@pytest.mark.parametrize("spec", ["auto", "minority", "not-majority", "not majority"])
def test_auto_family_balances(spec):
    plan = resolve(spec, COUNTS)
    assert plan.synth_counts == {0: 0, 1: 80}
    assert plan.final_counts(COUNTS) == {0: 100, 1: 100}


def test_ratio_and_explicit():
    assert resolve(0.5, COUNTS).synth_counts == {0: 0, 1: 30}
    assert resolve(0.5, COUNTS).final_counts(COUNTS) == {0: 100, 1: 50}
    plan = resolve({0: 100, 1: 80}, COUNTS)
    assert plan.synth_counts == {0: 0, 1: 60}
    assert plan.total == 60


def test_ratio_clamps_to_zero():
    assert resolve(0.5, {0: 100, 1: 60}).synth_counts == {0: 0, 1: 0}


def test_ratio_rounds_half_away_from_zero():
    # 0.25 * 10 = 2.5 -> 3
    assert resolve(0.25, {0: 10, 1: 1}).synth_counts[1] == 2
    assert round_half_away(2.5) == 3
    assert round_half_away(3.5) == 4
    assert round_half_away(-2.5) == -3
    assert round_half_away(2.4999) == 2


def test_errors():
    with pytest.raises(DataError, match="ratio strategy requires binary labels"):
        resolve(0.5, {0: 10, 1: 5, 2: 3})
    with pytest.raises(DataError, match="undersampling not supported"):
        resolve({0: 50}, COUNTS)
    with pytest.raises(DataError, match="nothing to resample"):
        resolve("auto", {0: 10})
    with pytest.raises(DataError, match="not present"):
        resolve({5: 10}, COUNTS)
    with pytest.raises(ValueError):
        SamplingSpec("ratio", ratio=1.5)
    with pytest.raises(ValueError):
        SamplingSpec("ratio", ratio=0.0)


def test_majority_tie_goes_to_smallest_identifier():
    assert resolve("auto", {"a": 5, "b": 5, "c": 2}).synth_counts == {"a": 0, "b": 0, "c": 3}
    assert resolve("auto", {2: 5, 1: 5}).synth_counts == {1: 0, 2: 0}


def test_multiclass_minority_vs_not_majority():
    counts = {0: 50, 1: 10, 2: 30, 3: 10}
    assert resolve("minority", counts).synth_counts == {0: 0, 1: 40, 2: 0, 3: 40}
    assert resolve("not-majority", counts).synth_counts == {0: 0, 1: 40, 2: 20, 3: 40}


def test_parse_cli_forms():
    assert parse_sampling_spec("auto").kind == "auto"
    assert parse_sampling_spec("not-majority").kind == "not-majority"
    assert parse_sampling_spec("0.5").ratio == 0.5
    spec = parse_sampling_spec("0=100,1=80")
    assert spec.targets == {"0": 100, "1": 80}
    # string keys match integer classes via str()
    assert resolve(spec, COUNTS).synth_counts == {0: 0, 1: 60}
    for bad in ["bogus", "1=x", "=3", "0=1,0=2", "2.0"]:
        with pytest.raises(ValueError):
            parse_sampling_spec(bad)


counts_st = st.dictionaries(st.integers(0, 9), st.integers(1, 200), min_size=2, max_size=6)


@given(counts_st)
def test_auto_equalizes_and_is_idempotent(counts):
    plan = resolve("auto", counts)
    final = plan.final_counts(counts)
    assert len(set(final.values())) == 1
    assert all(v == 0 for v in resolve("auto", final).synth_counts.values())
    assert all(v >= 0 for v in plan.synth_counts.values())


@given(counts_st)
def test_minority_subset_of_not_majority(counts):
    a = {c for c, n in resolve("minority", counts).synth_counts.items() if n > 0}
    b = {c for c, n in resolve("not-majority", counts).synth_counts.items() if n > 0}
    assert a <= b


@given(counts_st)
def test_majority_never_grows(counts):
    top = max(counts.values())
    maj = min(c for c, n in counts.items() if n == top)
    for spec in ["auto", "minority", "not-majority"]:
        assert resolve(spec, counts).synth_counts[maj] == 0
