"""Core types shared by every module: points, time series, metric spaces.

A point is a 1-d float array; a time series is an ordered (n, dim) array of
points together with the name of the metric its space carries.  Index order
is trajectory order: row i+1 is the dynamical successor of row i.

Supported metric kinds:

* ``euclidean`` -- the usual L2 norm on R^d
* ``maximum``   -- the sup norm on R^d
* ``circle``    -- shorter-arc distance on R/Z (dimension 1, unit period)
* ``torus``     -- coordinatewise circle distance combined with max (dim >= 2)

Circle and torus points are stored as representatives in [0, 1)^d; the
constructor re-wraps raw coordinates through :func:`modone`.
"""

from __future__ import annotations

import io
import math

import numpy as np

METRIC_KINDS = ("euclidean", "maximum", "circle", "torus")

# integer codes shared with the kernel backends
METRIC_CODES = {"euclidean": 0, "maximum": 1, "circle": 2, "torus": 3}

WRAPPED_KINDS = ("circle", "torus")


def modone(x):
    """Fractional part x - floor(x), elementwise, always in [0, 1)."""
    x = np.asarray(x, dtype=float)
    out = x - np.floor(x)
    # floor(x) == x makes out exactly 0; rounding can still push values to 1.0
    out = np.where(out >= 1.0, out - 1.0, out)
    if out.ndim == 0:
        return float(out)
    return out


def _check_space(space):
    if space not in METRIC_KINDS:
        raise ValueError(f"unknown metric kind {space!r}; expected one of {METRIC_KINDS}")


def _check_space_dim(space, dim):
    if space == "circle" and dim != 1:
        raise ValueError(f"circle metric requires dimension 1, got {dim}")
    if space == "torus" and dim < 2:
        raise ValueError(f"torus metric requires dimension >= 2, got {dim}")


class TimeSeries:
    """Finite trajectory of points in one metric space.

    Parameters
    ----------
    points : array-like, shape (n,) or (n, dim)
        Trajectory samples, one point per row.  A 1-d array is treated as a
        scalar series.
    space : str
        One of the metric kinds above.
    """

    __slots__ = ("points", "space")

    def __init__(self, points, space="euclidean"):
        _check_space(space)
        pts = np.array(points, dtype=float, copy=True)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise ValueError("a time series needs at least one point with at least one coordinate")
        if not np.all(np.isfinite(pts)):
            raise ValueError("time series coordinates must be finite (no NaN/inf)")
        _check_space_dim(space, pts.shape[1])
        if space in WRAPPED_KINDS:
            pts = modone(pts)
        pts = np.ascontiguousarray(pts)
        pts.setflags(write=False)
        self.points = pts
        self.space = space

    @property
    def dim(self):
        return self.points.shape[1]

    def __len__(self):
        return self.points.shape[0]

    def __getitem__(self, i):
        return self.points[i]

    def truncated(self, n):
        """First n points as a new series (no-op when n >= len)."""
        if n >= len(self):
            return self
        return TimeSeries(self.points[:n], self.space)

    def __repr__(self):
        return f"TimeSeries(n={len(self)}, dim={self.dim}, space={self.space!r})"


def _as_point_pair(p, q):
    p = np.atleast_1d(np.asarray(p, dtype=float))
    q = np.atleast_1d(np.asarray(q, dtype=float))
    if p.shape != q.shape or p.ndim != 1:
        raise ValueError(f"dimension mismatch: {p.shape} vs {q.shape}")
    return p, q


def distance(space, p, q):
    """Distance between two points under the named metric."""
    _check_space(space)
    p, q = _as_point_pair(p, q)
    _check_space_dim(space, p.shape[0])
    if space == "euclidean":
        s = 0.0
        for j in range(p.shape[0]):
            d = p[j] - q[j]
            s += d * d
        return math.sqrt(s)
    if space == "maximum":
        m = 0.0
        for j in range(p.shape[0]):
            d = abs(p[j] - q[j])
            if d > m:
                m = d
        return m
    # wrapped kinds: coordinates are representatives in [0, 1)
    m = 0.0
    for j in range(p.shape[0]):
        d = abs(p[j] - q[j])
        d = min(d, 1.0 - d)
        if d > m:
            m = d
    return m


def series_std(A):
    """Total standard deviation of a series.

    Square root of the sum over coordinates of the per-coordinate population
    variances.  Reduces to the ordinary population standard deviation for
    scalar data; wrapped series use their [0, 1) representatives as-is.
    """
    if len(A) < 2:
        raise ValueError("series_std needs at least 2 points")
    var = A.points.var(axis=0, ddof=0)
    return math.sqrt(float(var.sum()))


def diam(A):
    """Maximum pairwise distance within a series, under its own metric."""
    from ._backend import get_backend

    return get_backend().diameter(A.points, METRIC_CODES[A.space])


# ---------------------------------------------------------------------------
# connecting maps


class ConnectingMap:
    """Candidate (semi-)conjugacy h from one sampled space into another.

    Two variants:

    * analytic -- a closure mapping (n, dim) point arrays to image arrays;
      total on any input.
    * index-paired -- a pointwise table: the i-th point of the domain series
      is sent to ``table[i]``.  The table must cover every domain index used.
    """

    __slots__ = ("kind", "fn", "table", "name")

    def __init__(self, kind, fn=None, table=None, name=""):
        if kind not in ("analytic", "paired"):
            raise ValueError(f"unknown connecting-map kind {kind!r}")
        self.kind = kind
        self.fn = fn
        self.table = table
        self.name = name or kind

    @classmethod
    def analytic(cls, fn, name="analytic"):
        return cls("analytic", fn=fn, name=name)

    @classmethod
    def index_paired(cls, images, name="paired"):
        table = images.points if isinstance(images, TimeSeries) else np.asarray(images, dtype=float)
        if table.ndim == 1:
            table = table[:, None]
        return cls("paired", table=table, name=name)

    def image_of(self, series, indices):
        """Images of ``series[indices]`` under the map, as an (m, dy) array."""
        indices = np.asarray(indices, dtype=np.int64)
        if self.kind == "analytic":
            out = np.asarray(self.fn(series.points[indices]), dtype=float)
            if out.ndim == 1:
                out = out[:, None]
            return out
        if len(self.table) < len(series):
            raise ValueError(
                f"index-paired map covers {len(self.table)} points but the domain series "
                f"has {len(series)}; truncate the series to the paired length"
            )
        return self.table[indices]

    def __repr__(self):
        return f"ConnectingMap({self.name!r})"


# ---------------------------------------------------------------------------
# CSV interface
#
# One point per row, columns are coordinates.  An optional comment header
# "# space=<kind>" names the metric; both comma and whitespace delimiters
# are accepted (and may be mixed).


def read_series_csv(path_or_file):
    if hasattr(path_or_file, "read"):
        text = path_or_file.read()
    else:
        with open(path_or_file, "r", encoding="utf-8") as fh:
            text = fh.read()
    space = "euclidean"
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.startswith("space="):
                space = body.split("=", 1)[1].strip()
            continue
        fields = line.replace(",", " ").split()
        try:
            rows.append([float(f) for f in fields])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: could not parse {line!r}") from exc
    if not rows:
        raise ValueError("no data rows in series file")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError(f"inconsistent column counts in series file: {sorted(widths)}")
    return TimeSeries(np.array(rows, dtype=float), space=space)


def write_series_csv(series, path_or_file):
    buf = io.StringIO()
    buf.write(f"# space={series.space}\n")
    for row in series.points:
        buf.write(",".join(repr(float(v)) for v in row))
        buf.write("\n")
    payload = buf.getvalue()
    if hasattr(path_or_file, "write"):
        path_or_file.write(payload)
    else:
        with open(path_or_file, "w", encoding="utf-8") as fh:
            fh.write(payload)
