"""Small input-validation helpers used at public API boundaries."""

from __future__ import annotations

import hashlib

import numpy as np

from .errors import DataError, ShapeError


def as_waveform(x, name="samples") -> np.ndarray:
    """Coerce to a non-empty, finite, 1-D float64 array."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise ShapeError(f"{name} must be 1-D, got shape {arr.shape}")
    if arr.size == 0:
        raise DataError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite values")
    return arr


def check_equal_length(a: np.ndarray, b: np.ndarray, what="signals") -> None:
    if a.shape != b.shape:
        raise ShapeError(f"{what} must have equal length: {a.shape} vs {b.shape}")


def check_positive_int(value, name) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value <= 0:
        raise ValueError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def stable_seed(*parts) -> int:
    """Deterministic 63-bit seed derived from arbitrary hashable parts.

    Python's built-in ``hash`` is salted per process, so reproducible runs
    derive all their stream seeds through this instead.
    """
    text = "\x1f".join(repr(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") & 0x7FFF_FFFF_FFFF_FFFF
