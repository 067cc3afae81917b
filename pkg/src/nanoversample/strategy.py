"""Turn a sampling-strategy description into per-class synthetic counts."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Hashable, Mapping

from .exceptions import DataError

AUTO = "auto"
MINORITY = "minority"
NOT_MAJORITY = "not-majority"
RATIO = "ratio"
EXPLICIT = "explicit"

_ALIASES = {
    "auto": AUTO,
    "minority": MINORITY,
    "not-majority": NOT_MAJORITY,
    "not majority": NOT_MAJORITY,
    "not_majority": NOT_MAJORITY,
}


def round_half_away(x: float) -> int:
    """Round to the nearest integer, halves away from zero."""
    return int(Decimal(x).quantize(Decimal(1), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class SamplingSpec:
    kind: str = AUTO
    ratio: float | None = None
    targets: Mapping[Hashable, int] | None = field(default=None, hash=False)

    def __post_init__(self):
        if self.kind == RATIO:
            if self.ratio is None or not 0 < self.ratio <= 1:
                raise ValueError(f"ratio must lie in (0, 1], got {self.ratio}")
        elif self.kind == EXPLICIT:
            if not self.targets:
                raise ValueError("explicit strategy needs at least one class target")
            for cls, n in self.targets.items():
                if int(n) != n or n < 0:
                    raise ValueError(f"target for class {cls!r} must be a nonnegative integer")
        elif self.kind not in (AUTO, MINORITY, NOT_MAJORITY):
            raise ValueError(f"unknown sampling strategy {self.kind!r}")

    @classmethod
    def coerce(cls, value) -> "SamplingSpec":
        """Build a spec from a string, a float ratio or a ``{class: target}`` mapping."""
        if isinstance(value, SamplingSpec):
            return value
        if isinstance(value, str):
            kind = _ALIASES.get(value.strip().lower())
            if kind is None:
                raise ValueError(f"unknown sampling strategy {value!r}")
            return cls(kind)
        if isinstance(value, Mapping):
            return cls(EXPLICIT, targets=dict(value))
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return cls(RATIO, ratio=float(value))
        raise TypeError(f"cannot interpret {value!r} as a sampling strategy")


_FLOAT = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def parse_sampling_spec(text: str) -> SamplingSpec:
    """Parse the command-line form of a sampling strategy.

    Accepts ``auto``, ``minority``, ``not-majority``, a decimal ratio such as
    ``0.5``, or ``class=target,class=target``. Class keys of an explicit map
    are kept as strings; :func:`resolve` matches them against ``str(class)``.
    """
    text = text.strip()
    if text.lower() in _ALIASES:
        return SamplingSpec(_ALIASES[text.lower()])
    if _FLOAT.match(text):
        return SamplingSpec(RATIO, ratio=float(text))
    if "=" in text:
        targets = {}
        for item in text.split(","):
            key, sep, val = item.partition("=")
            key, val = key.strip(), val.strip()
            if not sep or not key or not re.fullmatch(r"\d+", val):
                raise ValueError(f"bad class target {item!r}")
            if key in targets:
                raise ValueError(f"duplicate class {key!r} in strategy map")
            targets[key] = int(val)
        return SamplingSpec(EXPLICIT, targets=targets)
    raise ValueError(f"unknown sampling strategy {text!r}")


@dataclass(frozen=True)
class SamplingPlan:
    """Number of synthetic rows to generate for every class."""

    synth_counts: dict[Hashable, int]

    @property
    def total(self) -> int:
        return sum(self.synth_counts.values())

    def final_counts(self, class_counts: Mapping[Hashable, int]) -> dict[Hashable, int]:
        return {c: n + self.synth_counts.get(c, 0) for c, n in class_counts.items()}


def majority_class(class_counts: Mapping[Hashable, int]):
    """Largest class; ties go to the smallest identifier."""
    top = max(class_counts.values())
    return min(c for c, n in class_counts.items() if n == top)


def _match_targets(targets: Mapping, class_counts: Mapping) -> dict:
    by_str = {str(c): c for c in class_counts}
    matched = {}
    for key, n in targets.items():
        if key in class_counts:
            cls = key
        elif str(key) in by_str:
            cls = by_str[str(key)]
        else:
            raise DataError(f"class {key!r} in strategy map is not present in the data")
        matched[cls] = int(n)
    return matched


def resolve(spec, class_counts: Mapping[Hashable, int]) -> SamplingPlan:
    """Resolve ``spec`` against the observed per-class row counts.

    Classes are reported in ascending identifier order. The majority class never
    receives synthetic rows except through an explicit target.
    """
    spec = SamplingSpec.coerce(spec)
    counts = {c: int(class_counts[c]) for c in sorted(class_counts)}
    if len(counts) < 2:
        raise DataError("nothing to resample: need at least two classes")
    if any(n < 1 for n in counts.values()):
        raise DataError("every class needs at least one row")

    majority = majority_class(counts)
    top = counts[majority]
    synth = dict.fromkeys(counts, 0)

    if spec.kind in (AUTO, NOT_MAJORITY):
        for c, n in counts.items():
            if c != majority:
                synth[c] = top - n
    elif spec.kind == MINORITY:
        low = min(counts.values())
        for c, n in counts.items():
            if c != majority and n == low:
                synth[c] = top - n
    elif spec.kind == RATIO:
        if len(counts) != 2:
            raise DataError("ratio strategy requires binary labels")
        (minority,) = [c for c in counts if c != majority]
        target = round_half_away(spec.ratio * top)
        synth[minority] = max(0, target - counts[minority])
    else:
        for c, target in _match_targets(spec.targets, counts).items():
            if target < counts[c]:
                raise DataError(
                    f"undersampling not supported: target {target} for class {c!r} "
                    f"is below its current count {counts[c]}"
                )
            synth[c] = target - counts[c]
    return SamplingPlan(synth)
