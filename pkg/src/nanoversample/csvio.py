"""CSV reading and writing with configurable missing-value tokens.

Numbers are parsed with a strict, locale-independent decimal grammar and
written with ``repr``, the shortest string that round-trips to the same
double.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import DataError
from .tabular import LabeledDataset

DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_INTEGER = re.compile(r"^[+-]?\d+$")

DEFAULT_MISSING = frozenset({"", "NaN", "nan", "NA"})


@dataclass(frozen=True)
class CsvOptions:
    missing_tokens_in: frozenset[str] = DEFAULT_MISSING
    missing_token_out: str = ""
    delimiter: str = ","
    has_header: bool = True

    def __post_init__(self):
        object.__setattr__(self, "missing_tokens_in", frozenset(self.missing_tokens_in))
        if DECIMAL.match(self.missing_token_out.strip()):
            raise ValueError(f"missing token {self.missing_token_out!r} would read back as a number")
        if len(self.delimiter) != 1:
            raise ValueError("delimiter must be a single character")
        if self.delimiter in self.missing_token_out:
            raise ValueError("missing token must not contain the delimiter")


def _label_index(label, header: list[str] | None, width: int) -> int:
    if isinstance(label, str):
        if header is not None and label in header:
            return header.index(label)
        if _INTEGER.match(label.strip()):
            label = int(label)
        else:
            raise DataError(f"label column {label!r} not found")
    idx = label + width if label < 0 else label
    if not 0 <= idx < width:
        raise DataError(f"label column index {label} out of range for {width} columns")
    return idx


def _label_values(tokens: list[str]) -> np.ndarray:
    # integers only when every token is in canonical form, so writing back is lossless
    if all(_INTEGER.match(t) and str(int(t)) == t for t in tokens):
        return np.array([int(t) for t in tokens], dtype=np.int64)
    return np.array(tokens, dtype=str)


def _parse_cell(token: str, missing: frozenset[str], line: int, column: str) -> float:
    if token in missing:
        return math.nan
    text = token.strip()
    if not DECIMAL.match(text):
        raise DataError(f"line {line}, column {column}: cannot parse {token!r} as a number")
    value = float(text)
    if math.isinf(value):
        raise DataError(f"line {line}, column {column}: value {token!r} overflows to infinity")
    return value


def read_csv(path, label=-1, options: CsvOptions | None = None) -> LabeledDataset:
    """Read a labelled table.

    Parameters
    ----------
    path : path-like
    label : str or int
        Label column, by header name or position (negative counts from the end).
    options : CsvOptions, optional

    Returns
    -------
    LabeledDataset
        Features in file column order with the label column removed. Labels
        are integers when every label token is a canonical integer, strings
        otherwise.
    """
    options = options or CsvOptions()
    with open(path, newline="", encoding="utf-8") as f:
        rows = [(i + 1, r) for i, r in enumerate(csv.reader(f, delimiter=options.delimiter)) if r]
    header = None
    if options.has_header:
        if not rows:
            raise DataError(f"{path}: empty file")
        header = rows.pop(0)[1]
    if not rows:
        raise DataError(f"{path}: no data rows")

    width = len(header) if header is not None else len(rows[0][1])
    if width < 2:
        raise DataError("need at least one feature column and one label column")
    if header is not None and len(set(header)) != len(header):
        raise DataError("duplicate column names in header")
    li = _label_index(label, header, width)
    names = header or [str(i) for i in range(width)]

    X = np.empty((len(rows), width - 1))
    label_tokens = []
    for r, (line, row) in enumerate(rows):
        if len(row) != width:
            raise DataError(f"line {line}: expected {width} fields, got {len(row)}")
        tok = row[li]
        if tok in options.missing_tokens_in:
            raise DataError(f"line {line}: missing label")
        label_tokens.append(tok)
        c = 0
        for j, cell in enumerate(row):
            if j != li:
                X[r, c] = _parse_cell(cell, options.missing_tokens_in, line, names[j])
                c += 1

    return LabeledDataset(
        X,
        _label_values(label_tokens),
        column_names=None if header is None else header[:li] + header[li + 1:],
        label_name=None if header is None else header[li],
        label_position=li,
    )


def format_value(value: float, missing: str = "") -> str:
    return missing if math.isnan(value) else repr(float(value))


def write_csv(data, path, options: CsvOptions | None = None) -> None:
    """Write a dataset (or a resampling result) as CSV.

    The label column goes back to its original position under its original
    name; missing cells are written as ``options.missing_token_out``.
    """
    options = options or CsvOptions()
    dataset = getattr(data, "dataset", data)
    if not isinstance(dataset, LabeledDataset):
        raise TypeError(f"expected a LabeledDataset or ResampleResult, got {type(data).__name__}")
    d = dataset.n_features
    pos = d if dataset.label_position is None else dataset.label_position
    names = list(dataset.column_names or (f"x{i}" for i in range(d)))
    names.insert(pos, dataset.label_name or "label")

    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, delimiter=options.delimiter, lineterminator="\n")
        if options.has_header:
            writer.writerow(names)
        for row, lab in zip(dataset.X.tolist(), dataset.y.tolist()):
            cells = [format_value(v, options.missing_token_out) for v in row]
            cells.insert(pos, str(lab))
            writer.writerow(cells)
