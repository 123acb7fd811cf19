"""Renormalised area of complete minimal surfaces in H^n: closed form for
the Hopf annuli, extraction from area growth, boundary lengths in the
conformal-infinity metrics, and isoperimetric slack."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .concurrency import parallel_map
from .errors import DomainError, FitError
from .models import NULL, SPACE, TIME, CoordFn
from .monotone import min_coord
from .quadrature import integrate
from .surfaces import MC_ANNULUS, Surface, _check_pair, mc_boundary, slice_volume
from .weights import Weight

GW_GRID = (40.0, 400.0, 40)


def ar_mc(C: float, rtol: float = 1e-13) -> float:
    """Renormalised area of the annulus with parameter C.

    The integrand ``(xi^2-1)/sqrt((xi^2-1)^2-C^2) - 1`` has an inverse
    square-root singularity at ``a = sqrt(C+1)``, removed on [a, a+1] by
    xi = a + u^2. Beyond a+1 it is written as ``C^2/(s (x+s))`` with
    ``x = xi^2-1`` and ``s = sqrt(x^2-C^2)``, which has no cancellation,
    and the infinite range is folded onto (0, 1/(a+1)] by xi = 1/v.
    """
    if not C > 0:
        raise DomainError("C must be positive")
    a = math.sqrt(C + 1.0)

    def near(u):
        xi = a + u * u
        x = xi * xi - 1.0
        return 2.0 * x / np.sqrt((xi + a) * (x + C)) - 2.0 * u

    def tail(v):
        xi = 1.0 / v
        x = xi * xi - 1.0
        s = np.sqrt((x - C) * (x + C))
        return C * C / (s * (x + s)) / (v * v)

    head = integrate(near, 0.0, 1.0, rtol=rtol, atol=1e-15)
    rest = integrate(tail, 0.0, 1.0 / (a + 1.0), rtol=rtol, atol=1e-15)
    return 4.0 * math.pi * (head + rest) - 4.0 * math.pi * a


@dataclass(frozen=True)
class GWFit:
    L: float
    A_R: float
    c: float
    residual: float
    cond: float


def _below(s: Surface, f: CoordFn) -> float:
    if f.kind == TIME:
        return 1.0
    if f.kind == NULL:
        return 0.0
    return min_coord(s, f) - 1.0


def gw_extract(s: Surface, f: CoordFn, t_grid=None, max_cond: float = 1e8) -> GWFit:
    """Least-squares fit of A(t) = L t + A_R + c/t to the sublevel areas."""
    _check_pair(s, f)
    if f.ambient != "H":
        raise DomainError("needs a hyperbolic surface")
    if s.k != 2:
        raise DomainError("renormalised area is implemented for surfaces")
    if t_grid is None:
        t_grid = np.geomspace(*GW_GRID)
    t = np.asarray(t_grid, dtype=float)
    if t.size < 4:
        raise FitError("need at least four tail levels for a three-term fit")
    design = np.stack([t, np.ones_like(t), 1.0 / t], axis=1)
    scaled = design / np.linalg.norm(design, axis=0)
    cond = float(np.linalg.cond(scaled))
    if cond > max_cond:
        raise FitError(f"tail grid too short for a stable fit: condition number {cond:.3g}")
    w = Weight.uniform(_below(s, f), 0.0)
    A = np.array(parallel_map(lambda x: slice_volume(s, f, w, x, rtol=1e-12), t))
    coef, *_ = np.linalg.lstsq(design, A, rcond=None)
    resid = A - design @ coef
    return GWFit(float(coef[0]), float(coef[1]), float(coef[2]), float(np.sqrt(np.mean(resid ** 2))), cond)


def boundary_metric_length(curves, f: CoordFn, rtol: float = 1e-11, step: float = 1e-5) -> float:
    """Total length of closed curves on the sphere at infinity in the metric
    |d theta| / |h/xi_0|: round for time, flat for null and doubled
    hyperbolic for space coordinates.

    Each curve maps v in [0, 2 pi] to unit vectors of R^n.
    """
    if f.ambient != "H":
        raise DomainError("needs a hyperbolic coordinate")
    if callable(curves):
        curves = (curves,)
    total = []
    probe = np.linspace(0.0, 2.0 * math.pi, 2049)
    for gamma in curves:
        fac = f.boundary_factor(gamma(probe))
        if np.min(np.abs(fac)) < 1e-9 or (f.kind == SPACE and np.min(fac) * np.max(fac) < 0):
            raise DomainError("curve meets the excluded set of this boundary metric")

        def g(v):
            # fourth-order central difference for the speed
            d = (8.0 * (gamma(v + step) - gamma(v - step)) - (gamma(v + 2 * step) - gamma(v - 2 * step))) / (12.0 * step)
            return np.linalg.norm(d, axis=-1) / np.abs(f.boundary_factor(gamma(v)))

        total.append(integrate(g, 0.0, 2.0 * math.pi, rtol=rtol, initial_panels=8))
    return math.fsum(total)


def isoperimetric_slack(A_R: float, boundary_length: float, a: float, delta: int) -> float:
    """-(A_R + |gamma| (a - delta/a) / 2); non-negative when the bound holds."""
    if not a > 0:
        raise DomainError("a must be positive")
    return -(A_R + 0.5 * boundary_length * (a - delta / a))


@dataclass(frozen=True)
class RenormReport:
    coord_kind: str
    a: float
    boundary_length: float
    A_R: float
    slack: float


def renorm_report(s: Surface, f: CoordFn, A_R: float | None = None) -> RenormReport:
    """Isoperimetric data of a complete surface for one coordinate."""
    _check_pair(s, f)
    if not s.ideal_boundary:
        raise DomainError("surface has no ideal boundary")
    if A_R is None:
        A_R = ar_mc(s.params["C"]) if s.kind == MC_ANNULUS else gw_extract(s, f).A_R
    a = min_coord(s, f)
    if not a > 0:
        raise DomainError("coordinate is not positive on the surface")
    length = boundary_metric_length(s.ideal_boundary, f)
    return RenormReport(f.kind, a, length, A_R, isoperimetric_slack(A_R, length, a, f.delta))


FIG2_COLUMNS = ("C", "area_term", "perimeter_term", "ratio")


def fig2_row(C: float) -> tuple[float, float, float, float]:
    a = math.sqrt(C + 1.0)
    length = boundary_metric_length(mc_boundary(C), CoordFn.time(n=4))
    area = -ar_mc(C)
    perim = 0.5 * (a + 1.0 / a) * length
    return (C, area, perim, area / perim)


def fig2_data(C_list) -> list[tuple[float, float, float, float]]:
    """Rows (C, -A_R, perimeter term, ratio) for the Hopf annuli."""
    Cs = [float(c) for c in C_list]
    if any(c <= 0 for c in Cs):
        raise DomainError("C values must be positive")
    if any(b <= a for a, b in zip(Cs, Cs[1:])):
        raise DomainError("C values must be increasing")
    return parallel_map(fig2_row, Cs)
