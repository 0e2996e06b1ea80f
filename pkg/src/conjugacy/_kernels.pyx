# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend.

Brute-force neighbor selection, ranks, diameter and Hausdorff distance with
(distance, index) lexicographic tie-breaking.  Must stay result-identical to
``_kernels_py``; both accumulate distances coordinate-by-coordinate in index
order so the floats match bit for bit.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

BACKEND_NAME = "cython"


cdef inline double _dist(const double[:, ::1] A, Py_ssize_t i,
                         const double[:, ::1] B, Py_ssize_t j,
                         int metric) noexcept nogil:
    cdef Py_ssize_t c
    cdef double s = 0.0, d
    cdef Py_ssize_t dim = A.shape[1]
    if metric == 0:
        for c in range(dim):
            d = A[i, c] - B[j, c]
            s += d * d
        return sqrt(s)
    elif metric == 1:
        for c in range(dim):
            d = fabs(A[i, c] - B[j, c])
            if d > s:
                s = d
        return s
    else:
        for c in range(dim):
            d = fabs(A[i, c] - B[j, c])
            if 1.0 - d < d:
                d = 1.0 - d
            if d > s:
                s = d
        return s


cdef inline bint _worse(double d1, Py_ssize_t i1, double d2, Py_ssize_t i2) noexcept nogil:
    # strict (d1, i1) > (d2, i2) in the lexicographic key order
    if d1 > d2:
        return 1
    if d1 < d2:
        return 0
    return i1 > i2


cdef void _sift_down(double* hd, Py_ssize_t* hi, Py_ssize_t size, Py_ssize_t pos) noexcept nogil:
    # max-heap on the lexicographic key: root holds the worst kept candidate
    cdef Py_ssize_t child
    cdef double td
    cdef Py_ssize_t ti
    while True:
        child = 2 * pos + 1
        if child >= size:
            return
        if child + 1 < size and _worse(hd[child + 1], hi[child + 1], hd[child], hi[child]):
            child += 1
        if _worse(hd[child], hi[child], hd[pos], hi[pos]):
            td = hd[pos]; hd[pos] = hd[child]; hd[child] = td
            ti = hi[pos]; hi[pos] = hi[child]; hi[child] = ti
            pos = child
        else:
            return


cdef void _sift_up(double* hd, Py_ssize_t* hi, Py_ssize_t pos) noexcept nogil:
    cdef Py_ssize_t parent
    cdef double td
    cdef Py_ssize_t ti
    while pos > 0:
        parent = (pos - 1) // 2
        if _worse(hd[pos], hi[pos], hd[parent], hi[parent]):
            td = hd[pos]; hd[pos] = hd[parent]; hd[parent] = td
            ti = hi[pos]; hi[pos] = hi[parent]; hi[parent] = ti
            pos = parent
        else:
            return


def argkmin(Q, X, Py_ssize_t k, int metric, exclude=None):
    """k nearest rows of X per query row of Q; ties broken by ascending index."""
    cdef const double[:, ::1] Qv = np.ascontiguousarray(np.atleast_2d(Q), dtype=np.float64)
    cdef const double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t nq = Qv.shape[0], nc = Xv.shape[0]
    if k < 1 or k > nc:
        raise ValueError(f"k={k} out of range for {nc} candidates")
    cdef cnp.ndarray exc
    if exclude is None:
        exc = np.full(nq, -1, dtype=np.int64)
    else:
        exc = np.ascontiguousarray(exclude, dtype=np.int64)
        if np.any(exc >= 0) and k > nc - 1:
            raise ValueError(f"k={k} out of range for {nc - 1} candidates after exclusion")
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out_idx = np.empty((nq, k), dtype=np.int64)
    cdef cnp.ndarray[double, ndim=2] out_dist = np.empty((nq, k), dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] hd = np.empty(k, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] hi = np.empty(k, dtype=np.int64)
    cdef const cnp.int64_t[::1] ev = exc
    cdef cnp.int64_t[:, ::1] oi = out_idx
    cdef double[:, ::1] od = out_dist
    cdef double* hdp = <double*> cnp.PyArray_DATA(hd)
    cdef cnp.int64_t* hip_raw = <cnp.int64_t*> cnp.PyArray_DATA(hi)
    cdef Py_ssize_t* hip = <Py_ssize_t*> hip_raw
    cdef Py_ssize_t q, j, size, pos
    cdef double d
    with nogil:
        for q in range(nq):
            size = 0
            for j in range(nc):
                if j == ev[q]:
                    continue
                d = _dist(Qv, q, Xv, j, metric)
                if size < k:
                    hdp[size] = d
                    hip[size] = j
                    _sift_up(hdp, hip, size)
                    size += 1
                elif _worse(hdp[0], hip[0], d, j):
                    hdp[0] = d
                    hip[0] = j
                    _sift_down(hdp, hip, k, 0)
            # pop in descending key order, filling the output back to front
            for pos in range(k - 1, -1, -1):
                od[q, pos] = hdp[0]
                oi[q, pos] = hip[0]
                size -= 1
                hdp[0] = hdp[size]
                hip[0] = hip[size]
                _sift_down(hdp, hip, size, 0)
    return out_idx, out_dist


def target_ranks(Q, X, targets, int metric, exclude=None):
    """1-based lexicographic rank of each target candidate per query row."""
    cdef const double[:, ::1] Qv = np.ascontiguousarray(np.atleast_2d(Q), dtype=np.float64)
    cdef const double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef const cnp.int64_t[:, ::1] Tv = np.ascontiguousarray(np.atleast_2d(targets), dtype=np.int64)
    cdef Py_ssize_t nq = Qv.shape[0], nc = Xv.shape[0], kt = Tv.shape[1]
    cdef cnp.ndarray exc
    if exclude is None:
        exc = np.full(nq, -1, dtype=np.int64)
    else:
        exc = np.ascontiguousarray(exclude, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] out = np.empty((nq, kt), dtype=np.int64)
    cdef cnp.ndarray[double, ndim=1] tdist = np.empty(kt, dtype=np.float64)
    cdef const cnp.int64_t[::1] ev = exc
    cdef cnp.int64_t[:, ::1] ov = out
    cdef double[::1] td = tdist
    cdef Py_ssize_t q, j, c, t
    cdef double d
    cdef cnp.int64_t count
    with nogil:
        for q in range(nq):
            for c in range(kt):
                td[c] = _dist(Qv, q, Xv, Tv[q, c], metric)
            for c in range(kt):
                t = Tv[q, c]
                count = 0
                for j in range(nc):
                    if j == ev[q] or j == t:
                        continue
                    d = _dist(Qv, q, Xv, j, metric)
                    if d < td[c] or (d == td[c] and j < t):
                        count += 1
                ov[q, c] = count + 1
    return out


def dists_to(q, X, int metric):
    """Distances from a single point to every row of X."""
    cdef const double[:, ::1] Qv = np.ascontiguousarray(np.atleast_2d(q), dtype=np.float64)
    cdef const double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t nc = Xv.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(nc, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t j
    with nogil:
        for j in range(nc):
            ov[j] = _dist(Qv, 0, Xv, j, metric)
    return out


def pair_dists(P, Q, int metric):
    """Rowwise distances between two aligned point arrays."""
    cdef const double[:, ::1] Pv = np.ascontiguousarray(np.atleast_2d(P), dtype=np.float64)
    cdef const double[:, ::1] Qv = np.ascontiguousarray(np.atleast_2d(Q), dtype=np.float64)
    cdef Py_ssize_t n = Pv.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(n):
            ov[i] = _dist(Pv, i, Qv, i, metric)
    return out


def diameter(X, int metric):
    """Maximum pairwise distance among rows of X."""
    cdef const double[:, ::1] Xv = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t n = Xv.shape[0]
    cdef double best = 0.0, d
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                d = _dist(Xv, i, Xv, j, metric)
                if d > best:
                    best = d
    return best


def hausdorff_dist(P, Q, int metric):
    """Hausdorff distance between two finite point sets."""
    cdef const double[:, ::1] Pv = np.ascontiguousarray(np.atleast_2d(P), dtype=np.float64)
    cdef const double[:, ::1] Qv = np.ascontiguousarray(np.atleast_2d(Q), dtype=np.float64)
    cdef Py_ssize_t np_ = Pv.shape[0], nq = Qv.shape[0]
    cdef double best = 0.0, row, d
    cdef Py_ssize_t i, j
    with nogil:
        for i in range(np_):
            row = -1.0
            for j in range(nq):
                d = _dist(Pv, i, Qv, j, metric)
                if row < 0.0 or d < row:
                    row = d
            if row > best:
                best = row
        for j in range(nq):
            row = -1.0
            for i in range(np_):
                d = _dist(Pv, i, Qv, j, metric)
                if row < 0.0 or d < row:
                    row = d
            if row > best:
                best = row
    return best
