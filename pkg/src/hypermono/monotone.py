"""Density curves, monotonicity verdicts, comparison of weighted densities
and tube-competitor bounds."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .concurrency import parallel_map
from .errors import DegenerateIntervalError, DomainError, PreconditionError
from .models import NULL, SPACE, SPHERE, TIME, CoordFn
from .surfaces import (TUBE_EXTENSION, TWO_PI, Surface, _check_pair, _sinusoid,
                       is_radial, slice_volume)
from .weights import Weight, omega, q_delta, tube_volume, tube_volumes

DEFAULT_TOL = 1e-8

NON_DECREASING = "nondecreasing"
NON_INCREASING = "nonincreasing"
NON_MONOTONE = "nonmonotone"


@dataclass(frozen=True, eq=False)
class DensityCurve:
    coord: CoordFn
    weight: Weight | None
    k: int
    t: np.ndarray
    A: np.ndarray
    Q: np.ndarray
    theta: np.ndarray
    tol: float = DEFAULT_TOL
    label: str = ""

    def columns(self) -> dict[str, np.ndarray]:
        return {"t": self.t, "A": self.A, "Q": self.Q, "Theta": self.theta}

    def header(self) -> dict:
        return {
            "coord": self.coord.describe(),
            "weight": self.weight.describe() if self.weight is not None else {"kind": "unweighted"},
            "k": self.k,
            "verdict": verdict(self, self.tol).status,
        }


@dataclass(frozen=True)
class MonotonicityVerdict:
    status: str
    nondecreasing: bool
    nonincreasing: bool
    slack: float
    witness: tuple[float, float] | None = None
    witness_index: tuple[int, int] | None = None
    tol: float = DEFAULT_TOL


def verdict_from_values(t, theta, tol: float = DEFAULT_TOL) -> MonotonicityVerdict:
    """Classify a sampled curve; ``slack`` is the smallest increment."""
    t = np.asarray(t, dtype=float)
    theta = np.asarray(theta, dtype=float)
    if theta.size < 2:
        raise DomainError("need at least two samples")
    d = np.diff(theta)
    up = bool(np.all(d >= -tol))
    down = bool(np.all(d <= tol))
    slack = float(np.min(d))
    if up:
        return MonotonicityVerdict(NON_DECREASING, True, down, slack, tol=tol)
    if down:
        return MonotonicityVerdict(NON_INCREASING, False, True, slack, tol=tol)
    # largest drop theta_i - theta_j over i < j
    run_max = np.maximum.accumulate(theta[:-1])
    run_arg = np.zeros(theta.size - 1, dtype=int)
    best = 0
    for idx in range(1, theta.size - 1):
        if theta[idx] > theta[best]:
            best = idx
        run_arg[idx] = best
    drops = run_max - theta[1:]
    j = int(np.argmax(drops)) + 1
    i = int(run_arg[j - 1])
    return MonotonicityVerdict(NON_MONOTONE, False, False, slack, (float(t[i]), float(t[j])), (i, j), tol)


def verdict(curve: DensityCurve, tol: float | None = None) -> MonotonicityVerdict:
    return verdict_from_values(curve.t, curve.theta, curve.tol if tol is None else tol)


def _clean_grid(t_grid) -> np.ndarray:
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise DomainError("grid needs at least two levels")
    if np.any(np.diff(t) <= 0):
        raise DomainError("grid must be strictly increasing")
    return t


def _drop_degenerate(t, A, Q):
    good = Q > 0
    if not np.all(good):
        warnings.warn(f"dropped {int(np.count_nonzero(~good))} samples with vanishing tube volume", RuntimeWarning)
    if np.count_nonzero(good) < 2:
        raise DegenerateIntervalError("fewer than two usable samples")
    return t[good], A[good], Q[good]


def density_curve(s: Surface, f: CoordFn, w: Weight, t_grid, k: int | None = None,
                  tol: float = DEFAULT_TOL, rtol: float = 1e-9) -> DensityCurve:
    """Weighted density A_(P,c)(t) / Q_(P,c)(t) sampled on a grid."""
    _check_pair(s, f)
    k = s.k if k is None else k
    t = _clean_grid(t_grid)
    if t[0] < w.h0:
        raise DomainError("grid starts below the weight's starting level")
    A = np.array(parallel_map(lambda x: slice_volume(s, f, w, x, rtol), t))
    Q = tube_volumes(w, f, k, t)
    t, A, Q = _drop_degenerate(t, A, Q)
    return DensityCurve(f, w, k, t, A, Q, A / Q, tol)


def _argmin_coord(s: Surface, f: CoordFn) -> tuple[float, float, float]:
    body = s.base if s.kind == TUBE_EXTENSION else s
    lo, hi = body.sample_range()
    ref = float(body.h(f, lo, 0.0))
    u0, u1 = body.u_bounds(f, ref)
    if body.v_linear:
        def m(u):
            a, r, v0 = _sinusoid(body, f, np.asarray(u, dtype=float))
            return a - r, v0 + math.pi

        us = np.linspace(u0, u1, 1025)
        vals, _ = m(us)
        i = int(np.argmin(vals))
        a, b = us[max(i - 1, 0)], us[min(i + 1, us.size - 1)]
        res = minimize_scalar(lambda x: float(m(np.array(x))[0]), bounds=(a, b), method="bounded",
                              options={"xatol": 1e-12})
        best_u = float(res.x) if res.fun < vals[i] else float(us[i])
        val, vmin = m(np.array(best_u))
        return float(val), best_u, float(vmin)
    us = np.linspace(u0, u1, 129)
    vs = np.linspace(0.0, TWO_PI, 128, endpoint=False)
    H = body.h(f, us[:, None], vs[None, :])
    i, j = np.unravel_index(int(np.argmin(H)), H.shape)
    u, v = float(us[i]), float(vs[j])
    du, dv = (u1 - u0) / 128, TWO_PI / 128
    best = float(H[i, j])
    for _ in range(60):
        ru = minimize_scalar(lambda x: float(body.h(f, x, v)), bounds=(max(u0, u - du), min(u1, u + du)),
                             method="bounded", options={"xatol": 1e-12})
        rv = minimize_scalar(lambda y: float(body.h(f, ru.x, y)), bounds=(v - dv, v + dv),
                             method="bounded", options={"xatol": 1e-12})
        moved = abs(ru.x - u) + abs(rv.x - v)
        u, v = float(ru.x), float(rv.x)
        val = float(rv.fun)
        du, dv = max(2 * abs(ru.x - u), 1e-6, du * 0.5), max(dv * 0.5, 1e-6)
        if val <= best:
            best = val
        if moved < 1e-11:
            break
    return best, u, v % TWO_PI


def min_coord(s: Surface, f: CoordFn) -> float:
    """Minimum of the coordinate function over the surface."""
    _check_pair(s, f)
    return _argmin_coord(s, f)[0]


def _default_grid(kind: str, lo: float, n: int = 64) -> np.ndarray:
    if kind == SPHERE:
        return np.linspace(lo, 2.0, n + 1)[1:-1]
    lo = max(lo, 1e-3)
    return np.geomspace(lo * (1.0 + 1e-3), lo * 50.0, n)


def unweighted_curve(s: Surface, f: CoordFn, a="optimal", t_grid=None,
                    tol: float = DEFAULT_TOL) -> DensityCurve:
    """Unweighted density A(t) / Q_delta(a, t) of a surface in hyperbolic space."""
    _check_pair(s, f)
    if f.kind not in (TIME, SPACE, NULL):
        raise DomainError("needs a Minkowskian coordinate")
    delta = f.delta
    a_max = min_coord(s, f)
    lower = 1.0 if f.kind == TIME else 0.0
    if a == "optimal":
        a = a_max
    a = float(a)
    if not (a >= lower if f.kind == TIME else a > lower) or a > a_max * (1 + 1e-9):
        names = {TIME: "[1, cosh d]", SPACE: "(0, sinh d]", NULL: "(0, 1/x_max]"}
        raise PreconditionError(f"a = {a} outside the admissible interval {names[f.kind]} "
                                f"with endpoint {a_max}")
    a = min(a, a_max)
    if t_grid is None:
        t_grid = _default_grid(f.kind, a_max)
    t = _clean_grid(t_grid)
    if t[0] < a:
        raise DomainError("grid starts below a")
    below = 1.0 if f.kind == TIME else (0.0 if f.kind == NULL else a_max - 1.0)
    w = Weight.uniform(below, 0.0)
    A = np.array(parallel_map(lambda x: slice_volume(s, f, w, x), t))
    Q = np.array([q_delta(a, x, s.k, delta) for x in t])
    t, A, Q = _drop_degenerate(t, A, Q)
    return DensityCurve(f, None, s.k, t, A, Q, A / Q, tol, label=f"a={a!r}")


def unweighted_check(s: Surface, f: CoordFn, a="optimal", t_grid=None,
                    tol: float = DEFAULT_TOL) -> MonotonicityVerdict:
    """Verdict on the unweighted density normalised by Q_delta(a, .)."""
    return verdict(unweighted_curve(s, f, a, t_grid, tol), tol)


@dataclass(frozen=True, eq=False)
class ComparisonReport:
    first: DensityCurve
    second: DensityCurve
    verdict_first: MonotonicityVerdict
    verdict_second: MonotonicityVerdict
    max_excess: float
    order: str


def compare_densities(s: Surface, f: CoordFn, w1: Weight, w2: Weight, t_grid,
                      k: int | None = None, tol: float = DEFAULT_TOL) -> ComparisonReport:
    """Pointwise comparison of two weighted densities on a common grid.

    ``order`` is ``"le"`` when Theta_1 <= Theta_2 + tol everywhere,
    ``"ge"`` for the reverse, ``"eq"`` for both and ``"mixed"`` otherwise.
    """
    c1 = density_curve(s, f, w1, t_grid, k, tol)
    c2 = density_curve(s, f, w2, t_grid, k, tol)
    if c1.t.size != c2.t.size or np.any(c1.t != c2.t):
        raise DegenerateIntervalError("the two densities are defined on different samples")
    diff = c1.theta - c2.theta
    le = bool(np.all(diff <= tol))
    ge = bool(np.all(diff >= -tol))
    order = "eq" if le and ge else "le" if le else "ge" if ge else "mixed"
    return ComparisonReport(c1, c2, verdict(c1, tol), verdict(c2, tol), float(np.max(diff)), order)


@dataclass(frozen=True)
class TubeBound:
    slack: float
    surface_volume: float
    tube_volume: float
    level: float
    link_length: float


def tube_bound_check(s: Surface, f: CoordFn, w: Weight) -> TubeBound:
    """Compare the weighted volume of a surface whose boundary lies in one level
    set {h = h1} with that of the h-tube from h0 to h1 over its boundary."""
    _check_pair(s, f)
    if not s.boundary_us:
        raise DomainError("surface has no boundary")
    v = np.linspace(0.0, TWO_PI, 64, endpoint=False)
    levels = np.concatenate([s.h(f, ub, v) for ub in s.boundary_us])
    h1 = float(levels[0])
    if np.ptp(levels) > 1e-9 * max(1.0, abs(h1)):
        raise DomainError("boundary does not lie in a single level set; "
                          "use unweighted_check on the tube extension instead")
    vb = float(f.V(h1))
    if vb <= 0:
        raise DomainError("boundary lies on a critical level")
    length = math.fsum(TWO_PI * math.sqrt(float(s.metric(np.array(ub))[1])) for ub in s.boundary_us) / math.sqrt(vb)
    tube = length / omega(s.k - 1) * tube_volume(w, f, s.k, h1)
    surf = slice_volume(s, f, w, h1)
    return TubeBound(tube - surf, surf, tube, h1, length)
