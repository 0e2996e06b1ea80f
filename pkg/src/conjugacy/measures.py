"""The four conjugacy tests.

All four quantify how far two sampled trajectories are from being related
by a topological (semi-)conjugacy.  Values are near zero for conjugate
data and grow with the violation:

* :func:`fnn_test` -- directed false-nearest-neighbor ratio.  For each
  point, checks whether its nearest neighbor's counterpart (same index in
  the other series) diverges by more than a factor r.
* :func:`knn_test` -- averages, over all points, how much the k-neighborhood
  of a point must be enlarged in the other series to contain the images of
  its k nearest neighbors.
* :func:`conjtest` / :func:`conjtest_plus` -- walk the conjugacy diagram
  directly: push a k-point neighborhood t steps forward through each
  system (iteration is an index shift along the trajectory) and compare
  the two resulting sets with the Hausdorff distance, normalized by the
  codomain diameter.  The plus variant first closes the image neighborhood
  under nearer samples, which suppresses the false positives that purely
  pointwise connecting maps can produce.

fnn/knn pair points by index and require equal lengths.  The conjtest pair
instead needs an explicit connecting map (``core.ConnectingMap``) per
direction and accepts series of different lengths.

Time shifts force boundary clipping: only indices with t iterates left are
evaluated, neighbor pools are clipped the same way, and the conjtest
denominator counts the evaluated indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import get_backend
from .core import METRIC_CODES, ConnectingMap, diam, series_std


class NoAdmissiblePairsError(ValueError):
    """No point passes the sigma/r closeness filter (e.g. constant series)."""


@dataclass(frozen=True)
class TestParams:
    """Knobs of the tests: threshold r, neighborhood size k, time horizon t."""

    __test__ = False  # keep pytest from collecting this as a test class

    r: float | None = None
    k: int | None = None
    t: int | None = None

    def validate(self, min_len):
        problems = []
        if self.r is not None and not self.r > 0:
            problems.append(f"r must be > 0, got {self.r}")
        if self.k is not None and not 1 <= self.k < min_len:
            problems.append(f"k must be in [1, {min_len - 1}], got {self.k}")
        if self.t is not None and not 1 <= self.t < min_len:
            problems.append(f"t must be in [1, {min_len - 1}], got {self.t}")
        return problems


@dataclass(frozen=True)
class TestResult:
    """Paired directed values of one method, as reported in result tables."""

    __test__ = False

    method: str
    params: TestParams
    value_ab: float
    value_ba: float
    count_ab: int = 0
    count_ba: int = 0


def _check_indexed_pair(A, B, min_n=2):
    if len(A) != len(B):
        raise ValueError(f"index-paired tests need equal lengths, got {len(A)} and {len(B)}")
    if len(A) < min_n:
        raise ValueError(f"series too short: need at least {min_n} points, got {len(A)}")


def _fnn_stats(A, B):
    """Per-index nearest-neighbor distances in A and their image distances in B."""
    backend = get_backend()
    n = len(A)
    self_idx = np.arange(n, dtype=np.int64)
    nn_idx, d_x = backend.argkmin(A.points, A.points, 1, METRIC_CODES[A.space], exclude=self_idx)
    nn_idx = nn_idx[:, 0]
    d_x = d_x[:, 0]
    d_y = backend.pair_dists(B.points, B.points[nn_idx], METRIC_CODES[B.space])
    return d_x, d_y


def _fnn_value(d_x, d_y, sigma, r):
    admissible = d_x < sigma / r
    den = int(admissible.sum())
    if den == 0:
        raise NoAdmissiblePairsError("no admissible pairs: every nearest neighbor fails the sigma/r filter")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(d_x > 0, d_y / np.where(d_x > 0, d_x, 1.0), np.where(d_y > 0, np.inf, 0.0))
    num = int((admissible & (ratio > r)).sum())
    return num / den, den


def fnn_test(A, B, r):
    """Directed false-nearest-neighbor ratio between two index-paired series."""
    _check_indexed_pair(A, B, min_n=3)
    if not r > 0:
        raise ValueError(f"r must be > 0, got {r}")
    sigma = series_std(A)
    if sigma == 0.0:
        raise NoAdmissiblePairsError("no admissible pairs: series has zero spread")
    d_x, d_y = _fnn_stats(A, B)
    value, _ = _fnn_value(d_x, d_y, sigma, r)
    return value


def fnn_grid(A, B, rs):
    """fnn_test over a grid of r values, reusing the neighbor computation."""
    _check_indexed_pair(A, B, min_n=3)
    sigma = series_std(A)
    if sigma == 0.0:
        raise NoAdmissiblePairsError("no admissible pairs: series has zero spread")
    d_x, d_y = _fnn_stats(A, B)
    return [_fnn_value(d_x, d_y, sigma, float(r))[0] for r in rs]


def fnn_dim(s, r, d, lag=1):
    """Classical embedding-dimension variant: compares the d- and (d+1)-
    dimensional delay embeddings of one scalar series."""
    from .embedding import takens_embed

    E1 = takens_embed(s, d, lag)
    E2 = takens_embed(s, d + 1, lag)
    return fnn_test(E1.truncated(len(E2)), E2, r)


def knn_test(A, B, k):
    """Average relative enlargement of k-neighborhoods needed in B to cover
    the images of the k nearest neighbors in A."""
    _check_indexed_pair(A, B)
    n = len(A)
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    backend = get_backend()
    self_idx = np.arange(n, dtype=np.int64)
    u_idx, _ = backend.argkmin(A.points, A.points, k, METRIC_CODES[A.space], exclude=self_idx)
    ranks = backend.target_ranks(B.points, B.points, u_idx, METRIC_CODES[B.space], exclude=self_idx)
    excess = np.maximum(ranks.max(axis=1) - k, 0)
    return float(excess.sum()) / (n * n)


def _conjtest_setup(A, B, k, t, h):
    n, m = len(A), len(B)
    if not isinstance(h, ConnectingMap):
        raise TypeError("conjtest needs a ConnectingMap for the direction being tested")
    if not 1 <= t < min(n, m):
        raise ValueError(f"time horizon t={t} must satisfy 1 <= t < min(n, m) = {min(n, m)}")
    n_eval = n - t
    m_pool = m - t
    if not 1 <= k <= n_eval:
        raise ValueError(f"k={k} out of range: only {n_eval} points have {t} iterates left")
    diam_b = diam(B)
    if diam_b == 0.0:
        raise ValueError("degenerate comparison: the codomain series has zero diameter")
    backend = get_backend()
    metric_a = METRIC_CODES[A.space]
    metric_b = METRIC_CODES[B.space]
    a_pool = A.points[:n_eval]
    b_pool = B.points[:m_pool]
    # neighborhoods in the domain (self-inclusive by construction)
    u_idx, _ = backend.argkmin(a_pool, a_pool, k, metric_a)
    # images of every domain point that can be shifted into, then their
    # nearest-sample discretization over the clipped codomain pool
    h_img = h.image_of(A, np.arange(n, dtype=np.int64))
    ht_idx, _ = backend.argkmin(h_img[:n_eval], b_pool, 1, metric_b)
    ht_idx = ht_idx[:, 0]
    return n_eval, m_pool, diam_b, backend, metric_b, u_idx, h_img, ht_idx


def conjtest(A, B, k, t, h):
    """Mean normalized Hausdorff defect of the conjugacy diagram along A."""
    n_eval, _, diam_b, backend, metric_b, u_idx, h_img, ht_idx = _conjtest_setup(A, B, k, t, h)
    total = 0.0
    for i in range(n_eval):
        u = u_idx[i]
        through_domain = h_img[u + t]
        through_codomain = B.points[ht_idx[u] + t]
        total += backend.hausdorff_dist(through_domain, through_codomain, metric_b)
    return total / (n_eval * diam_b)


def conjtest_plus(A, B, k, t, h):
    """conjtest with the image neighborhood closed under nearer samples:
    the discretized images are completed to the smallest neighborhood of
    h(a_i) in B that contains them before pushing forward."""
    n_eval, m_pool, diam_b, backend, metric_b, u_idx, h_img, ht_idx = _conjtest_setup(A, B, k, t, h)
    b_pool = B.points[:m_pool]
    ranks = backend.target_ranks(h_img[:n_eval], b_pool, ht_idx[u_idx], metric_b)
    k_needed = ranks.max(axis=1)
    total = 0.0
    for i in range(n_eval):
        u = u_idx[i]
        through_domain = h_img[u + t]
        k_i = int(k_needed[i])
        enlarged, _ = backend.argkmin(h_img[i], b_pool, k_i, metric_b)
        through_codomain = B.points[enlarged[0] + t]
        total += backend.hausdorff_dist(through_domain, through_codomain, metric_b)
    return total / (n_eval * diam_b)


def _directed_counts(method, A, B, params):
    if method == "fnn":
        sigma = series_std(A)
        if sigma == 0.0:
            raise NoAdmissiblePairsError("no admissible pairs: series has zero spread")
        d_x, d_y = _fnn_stats(A, B)
        return _fnn_value(d_x, d_y, sigma, params.r)
    if method == "knn":
        return knn_test(A, B, params.k), len(A)
    raise ValueError(f"unknown method {method!r}")


def compare_series(A, B, method, params, map_ab=None, map_ba=None):
    """Run one method in both directions and bundle the paired values.

    fnn/knn use the built-in index pairing; the conjtest variants require a
    connecting map per direction.
    """
    if not isinstance(params, TestParams):
        params = TestParams(**params)
    if method in ("fnn", "knn"):
        _check_indexed_pair(A, B, min_n=3 if method == "fnn" else 2)
        v_ab, c_ab = _directed_counts(method, A, B, params)
        v_ba, c_ba = _directed_counts(method, B, A, params)
        return TestResult(method, params, v_ab, v_ba, c_ab, c_ba)
    if method in ("conjtest", "conjtest+"):
        if map_ab is None or map_ba is None:
            raise ValueError(f"{method} needs a connecting map for each direction")
        fn = conjtest if method == "conjtest" else conjtest_plus
        v_ab = fn(A, B, params.k, params.t, map_ab)
        v_ba = fn(B, A, params.k, params.t, map_ba)
        return TestResult(method, params, v_ab, v_ba, len(A) - params.t, len(B) - params.t)
    raise ValueError(f"unknown method {method!r}")
