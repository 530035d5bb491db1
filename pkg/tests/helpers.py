"""Shared brute-force oracles for the test suite.

These deliberately avoid the closed forms under test: extrema come from
dense grid scans with local refinement, integrals from the trapezoid rule,
and the world-frame K number from a direct two-dimensional scan over source
and receive positions in world coordinates.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize_scalar

from losdof import AssemblyParams


def scan_extrema(fn, lo: float, hi: float, samples: int = 10001) -> tuple[float, float]:
    """(min, max) of ``fn`` on ``[lo, hi]``: dense scan plus bounded refinement."""
    xs = np.linspace(lo, hi, samples)
    vals = np.asarray(fn(xs), dtype=float)

    def refine(index: int, sign: float) -> float:
        a = xs[max(index - 1, 0)]
        b = xs[min(index + 1, samples - 1)]
        if a == b:
            return float(vals[index])
        res = minimize_scalar(
            lambda x: sign * float(fn(x)), bounds=(a, b), method="bounded",
            options={"xatol": 1e-12},
        )
        return sign * float(res.fun)

    w_hi = max(float(vals.max()), refine(int(vals.argmax()), -1.0))
    w_lo = min(float(vals.min()), refine(int(vals.argmin()), 1.0))
    return w_lo, w_hi


def trapezoid_k(fn, lo: float, hi: float, panels: int = 1_000_000) -> float:
    """Trapezoid-rule K number, independent of the adaptive quadrature."""
    xs = np.linspace(lo, hi, panels + 1)
    return float(np.trapezoid(np.asarray(fn(xs), dtype=float), xs))


def world_k_number(
    source_center,
    source_axis,
    source_length: float,
    rx_center,
    v_world,
    rho: float,
    n_l: int = 801,
    n_t: int = 4001,
) -> float:
    """K number computed entirely in world coordinates.

    Brute force on the definition: the spatial-frequency spread is scanned
    over the source segment at every receive position, then integrated by
    the trapezoid rule over the receive array.  Never touches the receiving
    coordinate frame, so it independently checks the whole geometry
    pipeline.
    """
    sc = np.asarray(source_center, dtype=float)
    sa = np.asarray(source_axis, dtype=float)
    sa = sa / np.linalg.norm(sa)
    rc = np.asarray(rx_center, dtype=float)
    v = np.asarray(v_world, dtype=float)
    v = v / np.linalg.norm(v)
    ts = np.linspace(-0.5 * source_length, 0.5 * source_length, n_t)
    src = sc[None, :] + ts[:, None] * sa[None, :]
    ls = np.linspace(-rho, rho, n_l)
    pts = rc[None, :] + ls[:, None] * v[None, :]
    diff = pts[:, None, :] - src[None, :, :]
    dist = np.sqrt((diff ** 2).sum(-1))
    g = (diff @ v) / dist
    w = g.max(axis=1) - g.min(axis=1)
    return float(np.trapezoid(w, ls))


def random_params(rng, v_hat=None) -> AssemblyParams:
    """One random assembly from the sweep ranges (log-uniform lengths)."""
    L = float(np.exp(rng.uniform(np.log(10.0), np.log(1e3))))
    rho = float(np.exp(rng.uniform(np.log(1.0), np.log(1e2))))
    r = float(np.exp(rng.uniform(np.log(10.0), np.log(1e5))))
    theta = float(rng.uniform(0.0, math.pi))
    if v_hat is None:
        return AssemblyParams(L, rho, r, theta)
    return AssemblyParams(L, rho, r, theta, v_hat)
