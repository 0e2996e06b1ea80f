"""Independent brute-force reference implementations.

Everything here is written straight from the defining formulas with plain
loops and full sorted rank tables -- no shared code with the production
kernels -- so the tests can compare the two paths exactly.
"""

import math

import numpy as np


def dist(space, p, q):
    p = np.atleast_1d(p)
    q = np.atleast_1d(q)
    if space == "euclidean":
        return math.sqrt(sum((float(a) - float(b)) ** 2 for a, b in zip(p, q)))
    if space == "maximum":
        return max(abs(float(a) - float(b)) for a, b in zip(p, q))
    best = 0.0
    for a, b in zip(p, q):
        m = abs(float(a) - float(b))
        m = min(m, 1.0 - m)
        best = max(best, m)
    return best


def rank_table(space, query, points, exclude=None):
    """All candidate indices sorted by (distance to query, index)."""
    keyed = [
        (dist(space, query, points[j]), j)
        for j in range(len(points))
        if j != exclude
    ]
    keyed.sort()
    return keyed


def knn_oracle(series, query, k, exclude=None, restrict=None):
    pts = series.points if restrict is None else series.points[:restrict]
    table = rank_table(series.space, query, pts, exclude=exclude)[:k]
    return [j for _, j in table], [d for d, _ in table]


def hausdorff_oracle(space, S1, S2):
    d1 = max(min(dist(space, p, q) for q in S2) for p in S1)
    d2 = max(min(dist(space, p, q) for p in S1) for q in S2)
    return max(d1, d2)


def std_oracle(points):
    total = 0.0
    for c in range(points.shape[1]):
        col = points[:, c]
        mu = sum(col) / len(col)
        total += sum((v - mu) ** 2 for v in col) / len(col)
    return math.sqrt(total)


def fnn_oracle(A, B, r):
    n = len(A)
    sigma = std_oracle(A.points)
    num = den = 0
    for i in range(n):
        table = rank_table(A.space, A.points[i], A.points, exclude=i)
        d_x, j = table[0]
        d_y = dist(B.space, B.points[i], B.points[j])
        if d_x < sigma / r:
            den += 1
            if d_x == 0.0:
                fires = d_y > 0.0
            else:
                fires = d_y / d_x > r
            if fires:
                num += 1
    if den == 0:
        raise ZeroDivisionError("no admissible pairs")
    return num / den


def knn_test_oracle(A, B, k):
    """Straight from the definition: grow e until the image neighborhood
    contains the mapped neighbors."""
    n = len(A)
    total = 0
    for i in range(n):
        table_a = rank_table(A.space, A.points[i], A.points, exclude=i)
        u = {j for _, j in table_a[:k]}
        order_b = [j for _, j in rank_table(B.space, B.points[i], B.points, exclude=i)]
        e = 0
        while not u.issubset(set(order_b[: k + e])):
            e += 1
        total += e
    return total / (n * n)


def _h_point(h, A, j):
    if h.kind == "paired":
        return h.table[j]
    return np.atleast_1d(np.asarray(h.fn(A.points[j : j + 1]), dtype=float)[0])


def conjtest_oracle(A, B, k, t, h):
    n, m = len(A), len(B)
    n_eval, m_pool = n - t, m - t
    diam_b = max(
        dist(B.space, B.points[i], B.points[j])
        for i in range(m)
        for j in range(i + 1, m)
    )
    total = 0.0
    for i in range(n_eval):
        table = rank_table(A.space, A.points[i], A.points[:n_eval])
        u = [j for _, j in table[:k]]
        s1 = [_h_point(h, A, j + t) for j in u]
        s2 = []
        for j in u:
            hb = rank_table(B.space, _h_point(h, A, j), B.points[:m_pool])[0][1]
            s2.append(B.points[hb + t])
        total += hausdorff_oracle(B.space, s1, s2)
    return total / (n_eval * diam_b)


def conjtest_plus_oracle(A, B, k, t, h):
    n, m = len(A), len(B)
    n_eval, m_pool = n - t, m - t
    diam_b = max(
        dist(B.space, B.points[i], B.points[j])
        for i in range(m)
        for j in range(i + 1, m)
    )
    total = 0.0
    for i in range(n_eval):
        table = rank_table(A.space, A.points[i], A.points[:n_eval])
        u = [j for _, j in table[:k]]
        ht = []
        for j in u:
            ht.append(rank_table(B.space, _h_point(h, A, j), B.points[:m_pool])[0][1])
        order_b = [j for _, j in rank_table(B.space, _h_point(h, A, i), B.points[:m_pool])]
        k_i = 1
        while not set(ht).issubset(set(order_b[:k_i])):
            k_i += 1
        s1 = [_h_point(h, A, j + t) for j in u]
        s2 = [B.points[j + t] for j in order_b[:k_i]]
        total += hausdorff_oracle(B.space, s1, s2)
    return total / (n_eval * diam_b)
