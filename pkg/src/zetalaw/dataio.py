"""CSV ingestion and emission.

The normative table format: first row holds column headers, one sample per
row, every cell a finite decimal number, UTF-8, comma-delimited.  A missing
or non-numeric cell is a data error (imputation is out of scope).
"""

from __future__ import annotations

import csv
import math

import numpy as np

from .errors import DataError


def read_table(path) -> tuple[list[str], np.ndarray]:
    """Read a CSV into (headers, n x p float matrix), validating every cell."""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            headers = next(reader)
        except StopIteration:
            raise DataError(f"{path}: file is empty") from None
        headers = [h.strip() for h in headers]
        if any(not h for h in headers):
            raise DataError(f"{path}: blank column header")
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(headers):
                raise DataError(
                    f"{path}:{line_no}: expected {len(headers)} cells, got {len(row)}"
                )
            values = []
            for name, cell in zip(headers, row):
                cell = cell.strip()
                if not cell:
                    raise DataError(f"{path}:{line_no}: missing value in column {name!r}")
                try:
                    value = float(cell)
                except ValueError:
                    raise DataError(
                        f"{path}:{line_no}: non-numeric value {cell!r} in column {name!r}"
                    ) from None
                if not math.isfinite(value):
                    raise DataError(
                        f"{path}:{line_no}: non-finite value {cell!r} in column {name!r}"
                    )
                values.append(value)
            rows.append(values)
    if not rows:
        raise DataError(f"{path}: no data rows")
    return headers, np.asarray(rows, dtype=float)


def read_features_labels(
    path, label_column: str
) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Split a table into (feature_names, features, labels) by column name."""
    headers, data = read_table(path)
    if label_column not in headers:
        raise DataError(
            f"{path}: label column {label_column!r} not found; columns are {headers}"
        )
    idx = headers.index(label_column)
    labels = data[:, idx]
    features = np.delete(data, idx, axis=1)
    names = [h for i, h in enumerate(headers) if i != idx]
    if features.shape[1] == 0:
        raise DataError(f"{path}: no feature columns besides the label")
    return names, features, labels


def write_table(path, headers: list[str], data: np.ndarray) -> None:
    """Write a float matrix as CSV with headers, using repr-exact floats."""
    arr = np.asarray(data)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(headers)
        for row in arr:
            writer.writerow([_format(v) for v in row])


def _format(value) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))
