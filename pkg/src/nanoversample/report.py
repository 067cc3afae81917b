"""Class balance and missingness summary of a dataset."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .tabular import LabeledDataset, missingness_profile, nan_rate, partition_by_class


@dataclass(frozen=True)
class Report:
    classes: dict
    imbalance_ratio: float
    nan_rate: float
    per_feature_nan_rate: list[float]
    per_class_rates: dict
    column_names: list[str] | None = None

    def to_dict(self) -> dict:
        return {
            "classes": {str(c): n for c, n in self.classes.items()},
            "imbalance_ratio": self.imbalance_ratio,
            "nan_rate": self.nan_rate,
            "per_feature_nan_rate": self.per_feature_nan_rate,
            "per_class_rates": {str(c): r for c, r in self.per_class_rates.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        n = sum(self.classes.values())
        names = self.column_names or [f"x{i}" for i in range(len(self.per_feature_nan_rate))]
        width = max(len(s) for s in names)
        lines = [f"rows: {n}, features: {len(names)}", "class distribution:"]
        for c, count in self.classes.items():
            lines.append(f"  {c}: {count} ({count / n:.2%})")
        lines.append(f"imbalance ratio: {self.imbalance_ratio:.4g}")
        lines.append(f"overall NaN rate: {self.nan_rate:.2%}")
        lines.append("per-feature NaN rate:")
        for i, (name, r) in enumerate(zip(names, self.per_feature_nan_rate)):
            per_class = ", ".join(f"{c}={rates[i]:.2%}" for c, rates in self.per_class_rates.items())
            lines.append(f"  {name:<{width}}  {r:7.2%}   [{per_class}]")
        return "\n".join(lines)


def build_report(dataset: LabeledDataset) -> Report:
    counts = dataset.class_counts()
    partition = partition_by_class(dataset)
    profile = missingness_profile(dataset, partition)
    per_feature = np.isnan(dataset.X).sum(axis=0) / dataset.n_samples
    return Report(
        classes=counts,
        imbalance_ratio=max(counts.values()) / min(counts.values()),
        nan_rate=nan_rate(dataset.X),
        per_feature_nan_rate=[float(r) for r in per_feature],
        per_class_rates={c: [float(v) for v in r] for c, r in profile.rates.items()},
        column_names=list(dataset.column_names) if dataset.column_names else None,
    )
