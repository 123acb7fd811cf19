"""Spherical applications: the antipodalness threshold eps(A, k), measured
antipodalness of closed surfaces, visual hulls of ideal curves and the
small-ball volume lower bound."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoSolutionError
from .models import CoordFn, HPoint, SPoint
from .renorm import boundary_metric_length
from .surfaces import TWO_PI, Surface, integrate_over, slice_volume
from .weights import Weight, omega


def sine_power_tail(n: int, eps: float) -> float:
    """Integral of sin(t)**n over [eps, pi/2], by the reduction formula."""
    if n < 0:
        raise DomainError("power must be non-negative")
    s, c = math.sin(eps), math.cos(eps)
    prev, cur = 0.5 * math.pi - eps, c
    if n == 0:
        return prev
    for j in range(2, n + 1):
        prev, cur = cur, s ** (j - 1) * c / j + (j - 1) / j * prev
    return cur


def _profile(eps: float, k: int) -> float:
    return sine_power_tail(k - 1, eps) + math.sin(eps) ** k / (k * math.cos(eps))


@dataclass(frozen=True)
class EpsQuery:
    A: float
    k: int = 2
    m: float = 1.0


def epsilon_of_area(q: EpsQuery | float, k: int | None = None, m: float | None = None) -> float:
    """Unique eps in [0, pi/2) balancing a k-volume A (multiplicity m).

    Solves ``int_eps^{pi/2} sin^{k-1} + sin^k(eps) / (k cos eps) =
    (A/m - omega_k/2) / omega_{k-1}`` by bisection; the left side is
    strictly increasing in eps.
    """
    if not isinstance(q, EpsQuery):
        q = EpsQuery(float(q), 2 if k is None else k, 1.0 if m is None else m)
    if q.k < 1:
        raise DomainError("k must be at least 1")
    if q.m < 1:
        raise DomainError("multiplicity must be at least 1")
    area = q.A / q.m
    wk, wk1 = omega(q.k), omega(q.k - 1)
    if area < wk * (1.0 - 1e-15):
        raise NoSolutionError(f"volume {q.A} is below m * omega_k = {q.m * wk}; no such surface exists")
    target = (area - 0.5 * wk) / wk1
    if target <= _profile(0.0, q.k):
        return 0.0
    lo, gap = 0.0, 1.0
    while _profile(0.5 * math.pi - gap, q.k) < target:
        gap *= 0.5
        if gap < 1e-300:
            raise NoSolutionError("volume too large to resolve eps")
    hi = 0.5 * math.pi - gap
    while hi - lo > 1e-15 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _profile(mid, q.k) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def epsilon_closed_form_k2(A: float, m: float = 1.0) -> float:
    """eps(A, 2) from cos(eps) + 1/cos(eps) = A/(m pi) - 2."""
    b = A / (m * math.pi) - 2.0
    if b < 2.0 - 1e-15:
        raise NoSolutionError("volume below 4 pi m")
    b = max(b, 2.0)
    c = 2.0 / (b + math.sqrt(b * b - 4.0))
    return math.acos(min(1.0, c))


def _chart_grid(s: Surface, n: int) -> tuple[np.ndarray, np.ndarray]:
    lo, hi = s.u_range
    u = np.linspace(lo, hi, n)
    v = np.linspace(0.0, TWO_PI, n, endpoint=False)
    return np.meshgrid(u, v, indexing="ij")


def _zoom_offsets(n: int) -> np.ndarray:
    g = np.linspace(-1.0, 1.0, n)
    du, dv = np.meshgrid(g, g, indexing="ij")
    return np.stack([du.ravel(), dv.ravel()], axis=1)


def _clip_params(s: Surface, z: np.ndarray) -> np.ndarray:
    lo, hi = s.u_range
    z = z.copy()
    z[..., 0] = np.clip(z[..., 0], lo, hi)
    return z


def _nearest_chord(s: Surface, targets: np.ndarray, starts: np.ndarray, step: np.ndarray,
                   resolution: float = 1e-10) -> np.ndarray:
    """Chord distance from each target to the surface, refined from ``starts``
    by shrinking grid searches around the current best parameters."""
    offs = _zoom_offsets(9)
    best = starts.copy()
    width = step.copy()
    while np.max(width) > resolution:
        trial = _clip_params(s, best[:, None, :] + offs[None, :, :] * width)
        X = s.embed(trial[..., 0], trial[..., 1])
        d = np.linalg.norm(X - targets[:, None, :], axis=-1)
        j = np.argmin(d, axis=1)
        best = trial[np.arange(best.shape[0]), j]
        width = width * 0.25
    X = s.embed(best[:, 0], best[:, 1])
    return np.linalg.norm(X - targets, axis=-1)


def antipodal_epsilon(s: Surface, grid: int = 128, candidates: int = 4) -> float:
    """Smallest eps such that the antipode of every point is within eps of the surface.

    A product grid of chart samples gives, for every sample p, the nearest
    sample to -p. The few samples whose antipodes are farthest from the
    surface are then refined by nested shrinking grid searches: outer over
    p (maximising), inner over the nearest point (minimising).
    """
    if s.ambient != "S":
        raise DomainError("needs a surface in a sphere")
    if not s.closed:
        raise DomainError("antipodalness is measured for closed surfaces")
    U, V = _chart_grid(s, grid)
    pts = s.embed(U, V).reshape(-1, s.n + 1)
    params = np.stack([U.ravel(), V.ravel()], axis=1)
    near_idx = np.empty(pts.shape[0], dtype=int)
    near_d = np.empty(pts.shape[0])
    sq = np.sum(pts * pts, axis=1)
    chunk = 2048
    for i in range(0, pts.shape[0], chunk):
        anti = -pts[i:i + chunk]
        # |(-p) - q|^2 = |p|^2 + |q|^2 + 2 <p, q>
        d2 = sq[i:i + chunk, None] + sq[None, :] + 2.0 * (pts[i:i + chunk] @ pts.T)
        near_idx[i:i + chunk] = np.argmin(d2, axis=1)
        near_d[i:i + chunk] = np.linalg.norm(anti - pts[near_idx[i:i + chunk]], axis=1)
    lo, hi = s.u_range
    step = np.array([(hi - lo) / (grid - 1), TWO_PI / grid])
    # ties resolved by the lowest sample index
    order = np.argsort(-near_d, kind="stable")[:candidates]
    worst = 0.0
    offs = _zoom_offsets(7)
    for i in order:
        p_best = params[i].copy()
        q_start = params[near_idx[i]]
        width = step.copy()
        value = float(_nearest_chord(s, -pts[i][None, :], q_start[None, :], 2 * step)[0])
        while np.max(width) > 1e-8:
            trial = _clip_params(s, p_best[None, :] + offs * width)
            targets = -s.embed(trial[:, 0], trial[:, 1])
            d = _nearest_chord(s, targets, np.repeat(q_start[None, :], trial.shape[0], axis=0), 2 * step)
            j = int(np.argmax(d))
            if d[j] >= value:
                value, p_best = float(d[j]), trial[j]
            width = width * 0.25
        worst = max(worst, value)
    return 2.0 * math.asin(min(1.0, 0.5 * worst))


@dataclass(frozen=True)
class AntipodalCheck:
    A: float
    eps_measured: float
    eps_bound: float
    passed: bool


def check_antipodal_bound(s: Surface, m: float = 1.0) -> AntipodalCheck:
    area = float(integrate_over(s))
    measured = antipodal_epsilon(s)
    bound = epsilon_of_area(EpsQuery(area, s.k, m))
    return AntipodalCheck(area, measured, bound, measured <= bound + 1e-9)


def visual_hull_value(curves, O: HPoint, k: int = 2) -> float:
    """Length of ideal curves in the round metric seen from O."""
    if k != 2:
        raise DomainError("visual hulls are evaluated for curves (k = 2)")
    return boundary_metric_length(curves, CoordFn.time(O))


def in_visual_hull(curves, O: HPoint, k: int = 2, tol: float = 1e-8) -> bool:
    return visual_hull_value(curves, O, k) >= omega(k - 1) - tol


def cly_bound(t: float, k: int, m: float = 1.0) -> float:
    """m times the volume of a geodesic k-ball of radius t in the unit k-sphere."""
    if not 0 < t <= 0.5 * math.pi:
        raise DomainError("radius must lie in (0, pi/2]")
    if k < 1:
        raise DomainError("k must be at least 1")
    return m * omega(k - 1) * (sine_power_tail(k - 1, 0.0) - sine_power_tail(k - 1, t))


def ball_area(s: Surface, p: SPoint, r: float) -> float:
    """Area of the part of the surface within spherical distance r of p."""
    f = CoordFn.sphere_height(p)
    return slice_volume(s, f, Weight.uniform(0.0, 0.0), 1.0 - math.cos(r))


FIG3_COLUMNS = ("A", "epsilon")
VERONESE_POINT = (6.0 * math.pi, math.pi / 3.0)


def fig3_data(A_list=None) -> list[tuple[float, float]]:
    if A_list is None:
        A_list = np.linspace(4.0 * math.pi, 40.0 * math.pi, 181)
    return [(float(A), epsilon_of_area(EpsQuery(float(A), 2))) for A in sorted(A_list)]
