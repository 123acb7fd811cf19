"""Adaptive composite Gauss-Legendre quadrature.

All active panels of one refinement sweep are evaluated in a single
vectorised call of the integrand, so integrands must accept and return
numpy arrays. Accepted panel contributions are summed with ``math.fsum``
in left-endpoint order, which makes results independent of evaluation
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

ArrayFn = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``order``-point Gauss-Legendre rule on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    panels: int
    # panels accepted only because the depth limit was reached
    forced: int


def _panel_sums(f: ArrayFn, lo: np.ndarray, hi: np.ndarray, order: int) -> np.ndarray:
    x, w = gauss_legendre(order)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = np.asarray(f(nodes.ravel()), dtype=float).reshape(nodes.shape)
    return half * (vals @ w)


def quad_info(
    f: ArrayFn,
    a: float,
    b: float,
    rtol: float = 1e-10,
    atol: float = 0.0,
    order: int = 15,
    max_depth: int = 40,
    initial_panels: int = 1,
    max_active: int = 4096,
) -> QuadResult:
    """Integrate ``f`` over [a, b] and report the error estimate.

    A panel is accepted when the difference between its one-panel and
    two-half-panel estimates is below its share (by width) of the global
    tolerance ``max(atol, rtol * |I|)``. Panels accepted at the depth
    limit, or because the active set outgrew ``max_active``, are counted
    in ``forced``.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return QuadResult(0.0, 0.0, 0, 0)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integration limits must be finite")
    sign = 1.0
    if b < a:
        a, b = b, a
        sign = -1.0
    width = b - a
    edges = np.linspace(a, b, initial_panels + 1)
    lo, hi = edges[:-1], edges[1:]
    whole = _panel_sums(f, lo, hi, order)
    estimate = float(np.sum(whole))
    accepted: list[tuple[float, float, float]] = []
    forced = 0
    depth = 0
    while lo.size:
        mid = 0.5 * (lo + hi)
        halves = _panel_sums(f, np.concatenate([lo, mid]), np.concatenate([mid, hi]), order)
        left, right = halves[: lo.size], halves[lo.size:]
        refined = left + right
        err = np.abs(refined - whole)
        # update the running estimate used for the relative tolerance
        estimate += float(np.sum(refined - whole))
        tol = max(atol, rtol * abs(estimate))
        share = tol * (hi - lo) / width
        done = (err <= share) | (depth >= max_depth)
        if 2 * np.count_nonzero(~done) > max_active:
            # refinement is not converging anywhere in particular; stop here
            done[:] = True
        if not np.all(np.isfinite(refined)):
            raise ValueError("integrand returned non-finite values")
        for i in np.flatnonzero(done):
            accepted.append((lo[i], refined[i], err[i]))
        forced += int(np.count_nonzero(done & (err > share)))
        keep = ~done
        lo2 = np.concatenate([lo[keep], mid[keep]])
        hi2 = np.concatenate([mid[keep], hi[keep]])
        whole = np.concatenate([left[keep], right[keep]])
        lo, hi = lo2, hi2
        depth += 1
    accepted.sort(key=lambda item: item[0])
    value = math.fsum(item[1] for item in accepted)
    error = math.fsum(item[2] for item in accepted)
    return QuadResult(sign * value, error, len(accepted), forced)


def integrate(
    f: ArrayFn,
    a: float,
    b: float,
    rtol: float = 1e-10,
    atol: float = 0.0,
    order: int = 15,
    max_depth: int = 40,
    initial_panels: int = 1,
) -> float:
    """Adaptive integral of a vectorised ``f`` over [a, b]."""
    return quad_info(f, a, b, rtol, atol, order, max_depth, initial_panels).value


def integrate_pieces(
    f: ArrayFn,
    breaks,
    rtol: float = 1e-10,
    atol: float = 0.0,
    order: int = 15,
) -> float:
    """Sum of adaptive integrals over consecutive intervals of ``breaks``."""
    breaks = list(breaks)
    parts = [integrate(f, breaks[i], breaks[i + 1], rtol=rtol, atol=atol, order=order)
             for i in range(len(breaks) - 1)]
    return math.fsum(parts)


def fixed_gl(f: ArrayFn, lo: np.ndarray, hi: np.ndarray, order: int = 20) -> np.ndarray:
    """Fixed-order rule applied to many intervals at once.

    ``f`` receives an array of shape ``lo.shape + (order,)``.
    """
    x, w = gauss_legendre(order)
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = mid[..., None] + half[..., None] * x
    return half * (np.asarray(f(nodes), dtype=float) @ w)
