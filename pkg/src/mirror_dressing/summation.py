"""Compensated summation kernels for the second-order mode sums."""

from __future__ import annotations

import math

import numpy as np


def exact_sum(values) -> float:
    """Correctly rounded sum of a 1-D sequence, largest index first."""
    arr = np.asarray(values, dtype=float)
    return math.fsum(arr[::-1].tolist())


def neumaier_rows(terms: np.ndarray) -> np.ndarray:
    """Neumaier-compensated sum along the last axis of a 2-D array.

    Columns are accumulated from last to first (the largest mode frequencies
    come last in every table here), vectorised over rows.
    """
    terms = np.asarray(terms, dtype=float)
    if terms.ndim != 2:
        raise ValueError("expected a 2-D array")
    total = np.zeros(terms.shape[0])
    comp = np.zeros(terms.shape[0])
    for col in range(terms.shape[1] - 1, -1, -1):
        x = terms[:, col]
        t = total + x
        big = np.abs(total) >= np.abs(x)
        comp += np.where(big, (total - t) + x, (x - t) + total)
        total = t
    return total + comp
