"""Deterministic trajectory factories for the benchmark systems.

Every generator iterates (or integrates) forward from an explicit start, so
re-running with the same arguments reproduces the series bit for bit.  The
only randomness lives in :func:`add_noise`, which draws from a counter-based
64-bit PRNG (Philox) keyed by an explicit seed.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp

from .core import TimeSeries, modone

LORENZ_SIGMA = 10.0
LORENZ_RHO = 28.0
LORENZ_BETA = 8.0 / 3.0


def gen_circle(phi, s, x1, N):
    """Orbit of the rotation-by-phi circle map, conjugated through x -> x^s.

    s=1 is the rigid rotation x -> <x + phi>; other exponents give nonlinear
    but topologically equivalent maps.
    """
    if not s > 0:
        raise ValueError(f"exponent s must be > 0, got {s}")
    if N < 1:
        raise ValueError("need N >= 1")
    out = np.empty(N)
    x = float(modone(x1))
    inv = 1.0 / s
    for i in range(N):
        out[i] = x
        x = modone(modone(x) ** s + phi) ** inv
    return TimeSeries(out, space="circle")


def gen_torus(phi1, phi2, start, N):
    """Orbit of the coordinatewise rotation on the 2-torus."""
    if N < 1:
        raise ValueError("need N >= 1")
    out = np.empty((N, 2))
    x = float(modone(start[0]))
    y = float(modone(start[1]))
    for i in range(N):
        out[i, 0] = x
        out[i, 1] = y
        x = modone(x + phi1)
        y = modone(y + phi2)
    return TimeSeries(out, space="torus")


def gen_interval_map(kind, param, x1, N):
    """Forward orbit of the logistic map l*x*(1-x) or the tent map
    mu*min(x, 1-x) on the unit interval.

    Note: mu=2 sends every binary-rational start (hence every float) to the
    fixed point 0 within about one step per mantissa bit; chaotic tent data
    for benchmarks is instead derived from a logistic orbit through the
    conjugating homeomorphism (see the experiment harness).
    """
    if not 0.0 <= x1 <= 1.0:
        raise ValueError(f"start {x1} outside the unit interval")
    if N < 1:
        raise ValueError("need N >= 1")
    if kind == "logistic":
        if not 0.0 <= param <= 4.0:
            raise ValueError(f"logistic parameter must be in [0, 4], got {param}")
        step = lambda x: param * x * (1.0 - x)
    elif kind == "tent":
        if not 0.0 <= param <= 2.0:
            raise ValueError(f"tent parameter must be in [0, 2], got {param}")
        step = lambda x: param * min(x, 1.0 - x)
    else:
        raise ValueError(f"unknown interval map {kind!r}")
    out = np.empty(N)
    x = float(x1)
    for i in range(N):
        out[i] = x
        x = step(x)
    return TimeSeries(out, space="euclidean")


def _lorenz_rhs(_t, state):
    x, y, z = state
    return (
        LORENZ_SIGMA * (y - x),
        x * (LORENZ_RHO - z) - y,
        x * y - LORENZ_BETA * z,
    )


def gen_lorenz(start, N, burn_in=0, sample_time=0.02, rtol=1e-9, atol=1e-11, space="maximum"):
    """Samples of the Lorenz flow at multiples of ``sample_time``.

    Integrates with the adaptive Dormand-Prince 5(4) scheme and dense
    output; the first ``burn_in`` samples are discarded so the series
    starts past the transient.
    """
    if N < 1:
        raise ValueError("need N >= 1")
    if burn_in < 0 or sample_time <= 0:
        raise ValueError("burn_in must be >= 0 and sample_time > 0")
    start = np.asarray(start, dtype=float)
    if start.shape != (3,):
        raise ValueError("the Lorenz system needs a 3-dimensional start")
    t_samples = (burn_in + np.arange(N)) * sample_time
    sol = solve_ivp(
        _lorenz_rhs,
        (0.0, float(t_samples[-1])) if t_samples[-1] > 0 else (0.0, sample_time),
        start,
        method="RK45",
        t_eval=t_samples,
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        raise RuntimeError(f"Lorenz integration failed: {sol.message}")
    return TimeSeries(sol.y.T, space=space)


def klein_surface(u, v):
    """4-d immersion of the Klein bottle at parameter angles (u, v)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.stack(
        [
            np.cos(u / 2.0) * np.cos(v) - np.sin(u / 2.0) * np.sin(2.0 * v),
            np.sin(u / 2.0) * np.cos(v) + np.cos(u / 2.0) * np.sin(2.0 * v),
            8.0 * np.cos(u) * (1.0 + np.sin(v) / 2.0),
            8.0 * np.sin(u) * (1.0 + np.sin(v) / 2.0),
        ],
        axis=-1,
    )


def gen_klein(phi1, phi2, start_params, N):
    """Orbit of the rotation on the Klein bottle, reported in R^4.

    The rotation acts on the surface parameters mod 2*pi (angles in
    radians); points are mapped through the immersion, never back.
    """
    if N < 1:
        raise ValueError("need N >= 1")
    two_pi = 2.0 * math.pi
    u = float(start_params[0]) % two_pi
    v = float(start_params[1]) % two_pi
    us = np.empty(N)
    vs = np.empty(N)
    for i in range(N):
        us[i] = u
        vs[i] = v
        u = (u + phi1) % two_pi
        v = (v + phi2) % two_pi
    return TimeSeries(klein_surface(us, vs), space="euclidean")


def add_noise(A, eps, seed):
    """Independent uniform [-eps, eps] jitter per coordinate per point.

    Deterministic given the seed (Philox counter-based generator); wrapped
    series are re-wrapped into [0, 1) afterwards.
    """
    if eps < 0:
        raise ValueError(f"noise amplitude must be >= 0, got {eps}")
    if eps == 0:
        return A
    rng = np.random.Generator(np.random.Philox(seed))
    jitter = rng.uniform(-eps, eps, size=A.points.shape)
    return TimeSeries(A.points + jitter, space=A.space)
