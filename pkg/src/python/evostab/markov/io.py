"""
CSV persistence for matrices and measures: a header row of state labels followed by numeric rows
"""

import csv
from typing import List, Optional

import numpy as np

from .exceptions import DimensionMismatchException
from .types import Measure, StochasticMatrix


def _read_rows(path: str):
    with open(path, "r", encoding="utf-8", newline="") as f:
        rows = [row for row in csv.reader(f) if row]
    if len(rows) < 2:
        raise DimensionMismatchException(f"{path}: expected a header row and at least one data row")
    labels = [label.strip() for label in rows[0]]
    try:
        values = np.array([[float(cell) for cell in row] for row in rows[1:]])
    except ValueError as e:
        raise DimensionMismatchException(f"{path}: non-numeric entry ({e})") from e
    return labels, values


def _write_rows(path: str, labels: List[str], rows):
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(labels)
        for row in rows:
            writer.writerow([repr(float(value)) for value in row])


def load_matrix(path: str) -> StochasticMatrix:
    labels, values = _read_rows(path)
    return StochasticMatrix(values, tuple(labels))


def save_matrix(matrix: StochasticMatrix, path: str):
    _write_rows(path, list(matrix.labels), matrix.entries)


def load_measure(path: str, distribution: bool = True) -> Measure:
    _, values = _read_rows(path)
    if values.shape[0] != 1:
        raise DimensionMismatchException(f"{path}: a measure is a single data row, found {values.shape[0]}")
    return Measure(values[0], distribution=distribution)


def save_measure(measure: Measure, path: str, labels: Optional[List[str]] = None):
    labels = labels or [str(i) for i in range(measure.n)]
    _write_rows(path, labels, [measure.weights])
