"""Named analytic connecting maps and their inverses.

These are the candidate conjugacies the benchmark comparisons use:

* ``identity``       x -> x
* ``pow:s``          x -> <x>^s on the circle (inverse: pow:1/s)
* ``arcsin``         x -> 2*arcsin(sqrt(x))/pi, the logistic-to-tent
                     homeomorphism (inverse: ``sinsq``)
* ``sinsq``          y -> sin(pi*y/2)^2
* ``proj:j``         point -> its j-th coordinate (1-based); inverse
                     ``inject:j`` pads the remaining coordinates with 0
* ``paired``         pointwise index pairing; built from series data, not
                     from a formula (see ConnectingMap.index_paired)
"""

from __future__ import annotations

import numpy as np

from .core import ConnectingMap, modone


def _pow_fn(s):
    def fn(pts):
        return modone(pts) ** s

    return fn


def _arcsin_fn(pts):
    return 2.0 * np.arcsin(np.sqrt(np.clip(pts, 0.0, 1.0))) / np.pi


def _sinsq_fn(pts):
    return np.sin(np.pi * pts / 2.0) ** 2


def _proj_fn(j):
    def fn(pts):
        return pts[:, j - 1 : j]

    return fn


def _inject_fn(j, dim):
    def fn(pts):
        out = np.zeros((pts.shape[0], dim))
        out[:, j - 1] = pts[:, 0]
        return out

    return fn


def make_map(kind, **kw):
    """Build a named analytic ConnectingMap."""
    if kind == "identity":
        return ConnectingMap.analytic(lambda pts: pts, name="identity")
    if kind == "pow":
        s = float(kw["s"])
        if not s > 0:
            raise ValueError(f"pow map needs s > 0, got {s}")
        return ConnectingMap.analytic(_pow_fn(s), name=f"pow:{s:g}")
    if kind == "arcsin":
        return ConnectingMap.analytic(_arcsin_fn, name="arcsin")
    if kind == "sinsq":
        return ConnectingMap.analytic(_sinsq_fn, name="sinsq")
    if kind == "proj":
        j = int(kw["coord"])
        return ConnectingMap.analytic(_proj_fn(j), name=f"proj:{j}")
    if kind == "inject":
        j = int(kw["coord"])
        dim = int(kw["dim"])
        return ConnectingMap.analytic(_inject_fn(j, dim), name=f"inject:{j}")
    raise ValueError(f"unknown map kind {kind!r}")


def parse_map_token(token):
    """Parse a CLI map token like ``identity``, ``pow:2``, ``proj:1``."""
    if token == "paired":
        return {"kind": "paired"}
    if ":" in token:
        kind, arg = token.split(":", 1)
        if kind == "pow":
            return {"kind": "pow", "s": float(arg)}
        if kind in ("proj", "inject"):
            return {"kind": kind, "coord": int(arg)}
        raise ValueError(f"unknown map token {token!r}")
    if token in ("identity", "arcsin", "sinsq"):
        return {"kind": token}
    raise ValueError(f"unknown map token {token!r}")


def reverse_decl(decl, a_dim=None):
    """Declaration of the inverse map for a forward declaration.

    ``proj`` inverts to ``inject`` into the original dimension, which must
    be supplied by the caller.
    """
    kind = decl["kind"]
    if kind == "identity":
        return {"kind": "identity"}
    if kind == "pow":
        return {"kind": "pow", "s": 1.0 / float(decl["s"])}
    if kind == "arcsin":
        return {"kind": "sinsq"}
    if kind == "sinsq":
        return {"kind": "arcsin"}
    if kind == "proj":
        if a_dim is None:
            raise ValueError("inverting proj needs the domain dimension")
        return {"kind": "inject", "coord": decl["coord"], "dim": a_dim}
    if kind == "paired":
        return {"kind": "paired"}
    raise ValueError(f"cannot derive an inverse for map kind {kind!r}")


def build_map(decl):
    """ConnectingMap from a declaration dict (non-paired kinds only)."""
    decl = dict(decl)
    kind = decl.pop("kind")
    return make_map(kind, **decl)
