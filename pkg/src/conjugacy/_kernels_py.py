"""Pure-numpy kernel backend.

Same contract as the compiled extension in ``_kernels.pyx``: exact
brute-force neighbor selection with (distance, index) lexicographic
tie-breaking, plus diameter and Hausdorff primitives.

Distances accumulate coordinate-by-coordinate in index order so that both
backends produce bit-identical floats.  Metric codes: 0 euclidean,
1 maximum, 2 circle, 3 torus (see ``core.METRIC_CODES``).
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_CHUNK = 256  # query rows per distance-matrix block


def _dist_block(Q, X, metric):
    """(nq, nc) distance matrix, accumulated dimension-by-dimension."""
    nq, d = Q.shape
    nc = X.shape[0]
    if metric == 0:
        s = np.zeros((nq, nc))
        for j in range(d):
            diff = Q[:, j, None] - X[None, :, j]
            s += diff * diff
        return np.sqrt(s)
    if metric == 1:
        m = np.zeros((nq, nc))
        for j in range(d):
            np.maximum(m, np.abs(Q[:, j, None] - X[None, :, j]), out=m)
        return m
    # wrapped: circle (d == 1) and torus share the coordinate formula
    m = np.zeros((nq, nc))
    for j in range(d):
        a = np.abs(Q[:, j, None] - X[None, :, j])
        np.minimum(a, 1.0 - a, out=a)
        np.maximum(m, a, out=m)
    return m


def dists_to(q, X, metric):
    """Distances from one point to every row of X."""
    q = np.asarray(q, dtype=float).reshape(1, -1)
    return _dist_block(q, np.asarray(X, dtype=float), metric)[0]


def pair_dists(P, Q, metric):
    """Rowwise distances between two aligned point arrays."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    d = P.shape[1]
    if metric == 0:
        s = np.zeros(P.shape[0])
        for j in range(d):
            diff = P[:, j] - Q[:, j]
            s += diff * diff
        return np.sqrt(s)
    if metric == 1:
        m = np.zeros(P.shape[0])
        for j in range(d):
            np.maximum(m, np.abs(P[:, j] - Q[:, j]), out=m)
        return m
    m = np.zeros(P.shape[0])
    for j in range(d):
        a = np.abs(P[:, j] - Q[:, j])
        np.minimum(a, 1.0 - a, out=a)
        np.maximum(m, a, out=m)
    return m


def argkmin(Q, X, k, metric, exclude=None):
    """k nearest rows of X per query, ties broken by ascending index.

    exclude: optional (nq,) int64 of candidate indices to drop per query
    (-1 for none).  Requires k <= number of remaining candidates.
    """
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    X = np.asarray(X, dtype=float)
    nq, nc = Q.shape[0], X.shape[0]
    limit = nc - (0 if exclude is None else 1)
    if not 1 <= k <= nc:
        raise ValueError(f"k={k} out of range for {nc} candidates")
    out_idx = np.empty((nq, k), dtype=np.int64)
    out_dist = np.empty((nq, k), dtype=float)
    cols = np.arange(nc)
    for lo in range(0, nq, _CHUNK):
        hi = min(lo + _CHUNK, nq)
        D = _dist_block(Q[lo:hi], X, metric)
        if exclude is not None:
            exc = np.asarray(exclude[lo:hi], dtype=np.int64)
            rows = np.flatnonzero(exc >= 0)
            if rows.size and k > limit:
                raise ValueError(f"k={k} out of range for {limit} candidates after exclusion")
            D[rows, exc[rows]] = np.inf
        kth = np.partition(D, k - 1, axis=1)[:, k - 1]
        for r in range(hi - lo):
            if not np.isfinite(kth[r]):
                raise ValueError(f"k={k} out of range for available candidates")
            cand = cols[D[r] <= kth[r]]
            order = np.lexsort((cand, D[r, cand]))[:k]
            out_idx[lo + r] = cand[order]
            out_dist[lo + r] = D[r, cand[order]]
    return out_idx, out_dist


def target_ranks(Q, X, targets, metric, exclude=None):
    """1-based rank of each target candidate in the (distance, index) order.

    Rank of target t for query row q = 1 + number of non-excluded candidates
    strictly preceding t in the lexicographic (distance to q, index) order.
    """
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    X = np.asarray(X, dtype=float)
    targets = np.atleast_2d(np.asarray(targets, dtype=np.int64))
    nq, kt = targets.shape
    nc = X.shape[0]
    cols = np.arange(nc)
    out = np.empty((nq, kt), dtype=np.int64)
    for lo in range(0, nq, _CHUNK):
        hi = min(lo + _CHUNK, nq)
        D = _dist_block(Q[lo:hi], X, metric)
        if exclude is not None:
            exc = np.asarray(exclude[lo:hi], dtype=np.int64)
            rows = np.flatnonzero(exc >= 0)
            D[rows, exc[rows]] = np.inf
        span = np.arange(lo, hi)
        for c in range(kt):
            t = targets[lo:hi, c]
            dt = D[np.arange(hi - lo), t]
            less = (D < dt[:, None]).sum(axis=1)
            eq_lower = ((D == dt[:, None]) & (cols[None, :] < t[:, None])).sum(axis=1)
            out[span, c] = 1 + less + eq_lower
    return out


def diameter(X, metric):
    """Maximum pairwise distance among rows of X."""
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    best = 0.0
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        D = _dist_block(X[lo:hi], X[lo:], metric)
        m = float(D.max()) if D.size else 0.0
        if m > best:
            best = m
    return best


def hausdorff_dist(P, Q, metric):
    """Hausdorff distance between two finite point sets."""
    P = np.atleast_2d(np.asarray(P, dtype=float))
    Q = np.atleast_2d(np.asarray(Q, dtype=float))
    D = _dist_block(P, Q, metric)
    return max(float(D.min(axis=1).max()), float(D.min(axis=0).max()))
