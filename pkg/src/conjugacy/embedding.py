"""Delay embedding of scalar series and the observables used to build them."""

from __future__ import annotations

import numpy as np

from .core import TimeSeries


def takens_embed(s, dim, lag, space="maximum"):
    """Delay embedding of a scalar series into R^dim with the given lag.

    Window j (0-based) is (s_j, s_{j+lag}, ..., s_{j+(dim-1)lag}); every
    index for which the full window fits contributes, so the output has
    exactly n - (dim-1)*lag points.  Embedded clouds carry the maximum
    metric unless overridden.
    """
    if s.dim != 1:
        raise ValueError("takens_embed expects a scalar (1-dimensional) series")
    if dim < 1 or lag < 1:
        raise ValueError("embedding dimension and lag must be >= 1")
    n = len(s)
    n_windows = n - (dim - 1) * lag
    if n_windows < 1:
        raise ValueError(
            f"series of length {n} too short for dim={dim}, lag={lag} "
            f"(needs at least {(dim - 1) * lag + 1} points)"
        )
    col = s.points[:, 0]
    out = np.empty((n_windows, dim))
    for c in range(dim):
        out[:, c] = col[c * lag : c * lag + n_windows]
    return TimeSeries(out, space=space)


def project(A, coord):
    """Scalar series of the coord-th (1-based) coordinates of A.

    Projections of torus series are circle series; all other kinds project
    to plain scalar series.
    """
    if not 1 <= coord <= A.dim:
        raise ValueError(f"coordinate {coord} out of range for dimension {A.dim}")
    space = "circle" if A.space == "torus" else "euclidean"
    return TimeSeries(A.points[:, coord - 1], space=space)


def observable_mean(A):
    """Scalar series of the pointwise mean of all coordinates."""
    return TimeSeries(A.points.mean(axis=1), space="euclidean")
