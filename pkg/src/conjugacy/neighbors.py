"""Nearest-neighbor queries, Hausdorff distance, and index validation.

All queries are exact.  Ordering is by (distance, candidate index)
ascending, so ties are deterministic and results are reproducible across
backends and across the accelerated / brute-force paths.

Euclidean and maximum metrics get a k-d tree accelerated batch path
(:class:`NeighborIndex`); circle and torus always use the brute-force
kernels -- periodic tree logic is easy to get wrong and the series sizes
here keep O(n^2) affordable.  :func:`validate_index` cross-checks the two
paths and is also exercised by the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from ._backend import get_backend
from .core import METRIC_CODES, TimeSeries, _check_space


@dataclass(frozen=True)
class NeighborQueryResult:
    """Indices of the nearest points (nearest first) and their distances."""

    indices: np.ndarray
    distances: np.ndarray


def _series_points(A):
    return A.points if isinstance(A, TimeSeries) else np.atleast_2d(np.asarray(A, dtype=float))


def knn(query, k, A, restrict_to=None):
    """k nearest points of A to ``query``, including the query itself if it
    belongs to A.

    restrict_to limits the candidate pool to the first ``restrict_to``
    points of the series (time-horizon clipping).
    """
    pts = A.points if restrict_to is None else A.points[:restrict_to]
    if not 1 <= k <= pts.shape[0]:
        raise ValueError(f"k={k} out of range for {pts.shape[0]} candidates")
    q = np.asarray(query, dtype=float).reshape(1, -1)
    if q.shape[1] != A.dim:
        raise ValueError(f"query dimension {q.shape[1]} != series dimension {A.dim}")
    idx, dist = get_backend().argkmin(q, pts, k, METRIC_CODES[A.space])
    return NeighborQueryResult(idx[0], dist[0])


def knn_excl(query_index, k, A, restrict_to=None):
    """k nearest points of A to its own point ``query_index``, with that
    point removed from the candidates."""
    pts = A.points if restrict_to is None else A.points[:restrict_to]
    n = pts.shape[0]
    if not 0 <= query_index < len(A):
        raise ValueError(f"query index {query_index} out of range")
    limit = n - 1 if query_index < n else n
    if not 1 <= k <= limit:
        raise ValueError(f"k={k} out of range for {limit} candidates")
    q = A.points[query_index].reshape(1, -1)
    exclude = np.array([query_index if query_index < n else -1], dtype=np.int64)
    idx, dist = get_backend().argkmin(q, pts, k, METRIC_CODES[A.space], exclude=exclude)
    return NeighborQueryResult(idx[0], dist[0])


def hausdorff(space, S1, S2):
    """Hausdorff distance between two finite point sets under one metric."""
    _check_space(space)
    S1 = np.atleast_2d(np.asarray(S1, dtype=float))
    S2 = np.atleast_2d(np.asarray(S2, dtype=float))
    if S1.shape[0] == 0 or S2.shape[0] == 0:
        raise ValueError("hausdorff distance needs two non-empty sets")
    if S1.shape[1] != S2.shape[1]:
        raise ValueError(f"dimension mismatch: {S1.shape[1]} vs {S2.shape[1]}")
    return get_backend().hausdorff_dist(S1, S2, METRIC_CODES[space])


class NeighborIndex:
    """Batch exact-kNN engine over a fixed candidate set.

    Euclidean and maximum metrics are served by a k-d tree; the tree result
    is finalized with a radius sweep plus a (distance, index) sort so that
    boundary ties come out identical to brute force.  Wrapped metrics go
    straight to the brute-force kernels.
    """

    def __init__(self, points, space="euclidean"):
        _check_space(space)
        self.points = _series_points(points)
        self.space = space
        self.metric = METRIC_CODES[space]
        if space == "euclidean":
            self._tree = cKDTree(self.points)
            self._p = 2
        elif space == "maximum":
            self._tree = cKDTree(self.points)
            self._p = np.inf
        else:
            self._tree = None
            self._p = None

    def __len__(self):
        return self.points.shape[0]

    def query(self, Q, k, exclude=None):
        """(indices, distances) of the k nearest candidates per query row."""
        Q = np.atleast_2d(np.asarray(Q, dtype=float))
        backend = get_backend()
        if self._tree is None:
            return backend.argkmin(Q, self.points, k, self.metric, exclude=exclude)
        n = len(self)
        limit = n if exclude is None else n - 1
        if not 1 <= k <= limit:
            raise ValueError(f"k={k} out of range for {limit} candidates")
        kq = min(k + (0 if exclude is None else 1), n)
        tree_dist, _ = self._tree.query(Q, k=kq, p=self._p)
        tree_dist = np.asarray(tree_dist)
        if tree_dist.ndim == 1:  # scipy squeezes the neighbor axis when kq == 1
            tree_dist = tree_dist[:, None]
        # Inflate the k-th tree distance a hair so last-ulp disagreements
        # with our own distance formula cannot drop a boundary tie.
        radius = np.nextafter(tree_dist[:, -1] * (1.0 + 1e-12), np.inf)
        balls = self._tree.query_ball_point(Q, radius, p=self._p)
        out_idx = np.empty((Q.shape[0], k), dtype=np.int64)
        out_dist = np.empty((Q.shape[0], k), dtype=float)
        for r in range(Q.shape[0]):
            cand = np.asarray(balls[r], dtype=np.int64)
            if exclude is not None and exclude[r] >= 0:
                cand = cand[cand != exclude[r]]
            d = backend.dists_to(Q[r], self.points[cand], self.metric)
            order = np.lexsort((cand, d))[:k]
            out_idx[r] = cand[order]
            out_dist[r] = d[order]
        return out_idx, out_dist


@dataclass
class IndexValidationReport:
    trials: int
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def __str__(self):
        if self.passed:
            return f"index validation passed ({self.trials} trials)"
        lines = [f"index validation FAILED ({len(self.failures)}/{self.trials} trials):"]
        for f in self.failures[:10]:
            lines.append(f"  query={f['query']} k={f['k']} exclude={f['exclude']}")
        return "\n".join(lines)


def validate_index(A, trials, seed=0):
    """Cross-check the accelerated index against brute force on random
    queries; any mismatch is reported with the offending query."""
    if len(A) == 0:
        raise ValueError("cannot validate an index over an empty series")
    rng = np.random.default_rng(seed)
    index = NeighborIndex(A.points, A.space)
    backend = get_backend()
    lo = A.points.min(axis=0)
    hi = A.points.max(axis=0)
    report = IndexValidationReport(trials=trials)
    for _ in range(trials):
        if rng.random() < 0.5:
            q = A.points[rng.integers(len(A))]
        else:
            q = lo + (hi - lo + 1e-9) * rng.random(A.dim)
        use_excl = len(A) > 1 and rng.random() < 0.3
        exclude = None
        if use_excl:
            exclude = np.array([rng.integers(len(A))], dtype=np.int64)
        k = int(rng.integers(1, len(A) - (1 if use_excl else 0) + 1))
        ti, td = index.query(q.reshape(1, -1), k, exclude=exclude)
        bi, bd = backend.argkmin(q.reshape(1, -1), A.points, k, METRIC_CODES[A.space], exclude=exclude)
        if not (np.array_equal(ti, bi) and np.array_equal(td, bd)):
            report.failures.append(
                {"query": q.tolist(), "k": k, "exclude": None if exclude is None else int(exclude[0])}
            )
    return report
