"""Argmin rules shared by the exact oracle, rollout, and policy iteration."""

# stdlib
from __future__ import annotations

from typing import TYPE_CHECKING

# library
import numpy as np

# module
from madp.static.core import TOLERANCE

if TYPE_CHECKING:
    from collections.abc import Sequence


def first_argmin(values: Sequence[float] | np.ndarray, tol: float = TOLERANCE) -> int:
    """Lowest index whose value is within tol of the minimum."""
    arr = np.asarray(values, dtype=float)
    return int(np.flatnonzero(arr <= arr.min() + tol)[0])


def prefer_argmin(values: Sequence[float] | np.ndarray, preferred: int, tol: float = TOLERANCE) -> int:
    """Keep the preferred index if it attains the minimum, else first_argmin."""
    arr = np.asarray(values, dtype=float)
    if arr[preferred] <= arr.min() + tol:
        return preferred
    return first_argmin(arr, tol)
