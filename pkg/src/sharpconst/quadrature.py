"""Double-exponential (tanh-sinh) quadrature on kink-delimited panels.

Integrands of the form |g(x)|^q are smooth between zeros of ``g`` but only
Hölder-continuous at them, so every routine here integrates panel by panel
with breakpoints at the zeros.  Tanh-sinh clusters nodes at panel ends, which
also absorbs algebraic endpoint behaviour such as sin(x)**alpha.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .params import QuadResult

T_MAX = 3.5
MIN_LEVEL = 2
MAX_LEVEL = 7
MAX_DEPTH = 14


class QuadratureError(RuntimeError):
    """Panel refinement exhausted its budget before meeting the tolerance."""


@lru_cache(maxsize=None)
def _nodes(level: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Signed offsets, endpoint distances (in units of the half-width) and weights."""
    h = 2.0 ** (-level)
    k = np.arange(-math.ceil(T_MAX / h), math.ceil(T_MAX / h) + 1)
    t = k * h
    u = 0.5 * math.pi * np.sinh(t)
    # 1 - |tanh(u)| written without cancellation
    dist = 2.0 / (1.0 + np.exp(2.0 * np.abs(u)))
    w = h * 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
    keep = w > 0
    return np.sign(t)[keep], dist[keep], w[keep]


def _ts_level(f, a: float, b: float, level: int) -> float:
    sgn, dist, w = _nodes(level)
    half = 0.5 * (b - a)
    x = np.where(sgn < 0, a + half * dist, b - half * dist)
    x = np.where(sgn == 0, a + half, x)
    return half * float(np.dot(w, f(x)))


def tanh_sinh(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              tol: float = 1e-12, abs_floor: float = 1e-300, _depth: int = 0):
    """Integrate a vectorised ``f`` over [a, b].

    Returns ``(value, err_estimate, n_panels)``.  The level is doubled until
    two successive estimates agree to ``tol`` relative; failing that the
    interval is bisected.
    """
    if b <= a:
        return 0.0, 0.0, 0
    prev = _ts_level(f, a, b, MIN_LEVEL - 1)
    for level in range(MIN_LEVEL, MAX_LEVEL + 1):
        cur = _ts_level(f, a, b, level)
        delta = abs(cur - prev)
        if delta <= tol * max(abs(cur), abs_floor):
            return cur, delta, 1
        prev = cur
    if _depth >= MAX_DEPTH:
        raise QuadratureError(f"tanh-sinh failed on [{a!r}, {b!r}] (last delta {delta:.3e})")
    mid = 0.5 * (a + b)
    # the tolerance stays relative to the whole interval's magnitude
    floor = max(abs_floor, abs(cur))
    v1, e1, p1 = tanh_sinh(f, a, mid, tol, floor, _depth + 1)
    v2, e2, p2 = tanh_sinh(f, mid, b, tol, floor, _depth + 1)
    return v1 + v2, e1 + e2, p1 + p2


def integrate_panels(f, breakpoints: Sequence[float], tol: float = 1e-12) -> QuadResult:
    """Sum of tanh-sinh integrals over consecutive breakpoint pairs.

    Each panel is converged relative to a coarse estimate of the whole
    integral, so panels carrying negligible mass do not stall refinement.
    """
    pts = list(breakpoints)
    pairs = [(a, b) for a, b in zip(pts[:-1], pts[1:]) if b > a]
    scale = sum(abs(_ts_level(f, a, b, MIN_LEVEL)) for a, b in pairs)
    floor = max(scale, 1e-300)
    total, err, panels = 0.0, 0.0, 0
    for a, b in pairs:
        v, e, p = tanh_sinh(f, a, b, tol, floor)
        total += v
        err += e
        panels += p
    return QuadResult(total, err, panels, tuple(pts[1:-1]))


def sign_change_roots(g: Callable[[np.ndarray], np.ndarray], grid: np.ndarray,
                      iters: int = 60) -> np.ndarray:
    """Roots of a smooth real ``g`` located by sign changes on ``grid``.

    All brackets are refined together by vectorised bisection, so the cost is
    ``iters`` calls of ``g`` on an array no longer than the bracket count.
    """
    vals = g(grid)
    exact = grid[1:-1][vals[1:-1] == 0.0]
    idx = np.nonzero(vals[:-1] * vals[1:] < 0)[0]
    lo, hi = grid[idx].astype(float), grid[idx + 1].astype(float)
    glo = vals[idx]
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        left = np.sign(gm) == np.sign(glo)
        lo = np.where(left, mid, lo)
        glo = np.where(left, gm, glo)
        hi = np.where(left, hi, mid)
    roots = np.concatenate([0.5 * (lo + hi), exact])
    return np.unique(roots)

