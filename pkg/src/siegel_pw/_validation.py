"""Small input-checking helpers shared across modules."""

import math

import numpy as np


def as_complex_vector(z, name="z"):
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a complex vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def check_positive(value, name):
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be a positive finite number, got {value}")
    return value


def check_finite(value, name):
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


def check_same_dim(n1, n2, what="points"):
    if n1 != n2:
        raise ValueError(f"dimension mismatch between {what}: {n1} != {n2}")


def check_smoothness(s, n):
    s = float(s)
    if not (0 <= s < n + 1):
        raise ValueError(f"smoothness s must lie in [0, n+1) = [0, {n + 1}), got {s}")
    return s
