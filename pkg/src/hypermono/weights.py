"""Weight pairs (P, c), their tube volumes and the weaker-than ordering."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import DegenerateIntervalError, DomainError
from .models import SPHERE, TIME, CoordFn
from .quadrature import integrate

NATURAL = "natural"
UNIFORM = "uniform"
POW_XI = "pow_xi"
POW_XI_PLUS_ONE = "pow_xi_plus_one"
TABULATED = "tabulated"

_CRITICAL_TOL = 1e-14


@lru_cache(maxsize=None)
def omega(k: int) -> float:
    """Volume of the unit k-sphere, by the two-step recurrence."""
    if k < 0:
        raise DomainError("sphere dimension must be non-negative")
    if k == 0:
        return 2.0
    if k == 1:
        return 2.0 * math.pi
    return 2.0 * math.pi / (k - 1) * omega(k - 2)


@dataclass(frozen=True, eq=False)
class Weight:
    """A weight (P, c) started at the level h0."""

    kind: str
    c: float = 0.0
    h0: float = 1.0
    exponent: float = 0.0
    table: tuple | None = None
    _interp: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in (NATURAL, UNIFORM, POW_XI, POW_XI_PLUS_ONE, TABULATED):
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if self.c < 0:
            raise DomainError("boundary coefficient c must be non-negative")
        if self.kind == TABULATED:
            hs, ps = (np.asarray(x, dtype=float) for x in self.table)
            if np.any(ps < 0):
                raise DomainError("tabulated weight must be non-negative")
            object.__setattr__(self, "_interp", PchipInterpolator(hs, ps, extrapolate=False))

    @classmethod
    def natural(cls, h0: float = 1.0, c: float = 1.0) -> "Weight":
        return cls(NATURAL, c=c, h0=h0)

    @classmethod
    def uniform(cls, h0: float = 1.0, c: float = 0.0) -> "Weight":
        return cls(UNIFORM, c=c, h0=h0)

    @classmethod
    def pow_xi(cls, exponent: float, h0: float = 1.0, c: float = 0.0) -> "Weight":
        return cls(POW_XI, c=c, h0=h0, exponent=exponent)

    @classmethod
    def pow_xi_plus_one(cls, exponent: float, h0: float = 1.0, c: float = 0.0) -> "Weight":
        return cls(POW_XI_PLUS_ONE, c=c, h0=h0, exponent=exponent)

    @classmethod
    def tabulated(cls, hs, ps, h0: float | None = None, c: float = 0.0) -> "Weight":
        hs = tuple(float(x) for x in hs)
        ps = tuple(float(x) for x in ps)
        return cls(TABULATED, c=c, h0=hs[0] if h0 is None else h0, table=(hs, ps))

    def with_h0(self, h0: float, c: float | None = None) -> "Weight":
        return Weight(self.kind, self.c if c is None else c, h0, self.exponent, self.table)

    def P(self, f: CoordFn, h) -> np.ndarray:
        h = np.asarray(h, dtype=float)
        if self.kind == NATURAL:
            return f.U(h)
        if self.kind == UNIFORM:
            return np.ones_like(h)
        if self.kind == POW_XI:
            return h ** self.exponent
        if self.kind == POW_XI_PLUS_ONE:
            return (1.0 + h) ** self.exponent
        vals = self._interp(h)
        if np.any(np.isnan(vals)):
            raise DomainError("level outside the tabulated range")
        return vals

    def describe(self) -> dict:
        out = {"kind": self.kind, "c": self.c, "h0": self.h0}
        if self.kind in (POW_XI, POW_XI_PLUS_ONE):
            out["exponent"] = self.exponent
        return out


def _check_level(f: CoordFn, h: float) -> None:
    lo, hi = f.range
    if not (lo - 1e-14 <= h <= hi + 1e-14):
        raise DomainError(f"level {h} outside the range of a {f.kind} coordinate")


def is_critical(f: CoordFn, h: float) -> bool:
    return abs(float(f.V(h))) <= _CRITICAL_TOL


def level_integral(density, f: CoordFn, k: int, lo: float, hi: float, rtol: float = 1e-10) -> float:
    """Integral of ``density(h) * V(h)**(k/2 - 1)`` over [lo, hi].

    When V vanishes at an endpoint and k < 2 the endpoint singularity is
    removed by the substitution h = endpoint + u**2 (or minus, at the top).
    """
    if hi == lo:
        return 0.0
    if hi < lo:
        return -level_integral(density, f, k, hi, lo, rtol)
    p = 0.5 * k - 1.0

    def g(h):
        v = np.maximum(f.V(h), 0.0)
        return density(h) * v ** p

    if p >= 0:
        return integrate(g, lo, hi, rtol=rtol)
    lo_sing = is_critical(f, lo)
    hi_sing = is_critical(f, hi)
    if not (lo_sing or hi_sing):
        return integrate(g, lo, hi, rtol=rtol)
    mid = 0.5 * (lo + hi)
    total = 0.0
    if lo_sing:
        total += integrate(lambda u: 2.0 * u * g(lo + u * u), 0.0, math.sqrt(mid - lo), rtol=rtol)
    else:
        total += integrate(g, lo, mid, rtol=rtol)
    if hi_sing:
        total += integrate(lambda u: 2.0 * u * g(hi - u * u), 0.0, math.sqrt(hi - mid), rtol=rtol)
    else:
        total += integrate(g, mid, hi, rtol=rtol)
    return total


def boundary_term(w: Weight, f: CoordFn, k: int) -> float:
    """(c/k) V(h0)^{k/2}; vanishes when h0 is a critical level."""
    v0 = float(f.V(w.h0))
    if v0 <= _CRITICAL_TOL:
        return 0.0
    return w.c / k * v0 ** (0.5 * k)


def tube_volume(w: Weight, f: CoordFn, k: int, t: float, rtol: float = 1e-10) -> float:
    """Weighted volume of an h-tube from h0 to t over a unit-size link."""
    if k < 1:
        raise DomainError("k must be at least 1")
    _check_level(f, w.h0)
    if t < w.h0:
        raise DomainError(f"t = {t} lies below the starting level {w.h0}")
    _check_level(f, t)
    body = level_integral(lambda h: w.P(f, h), f, k, w.h0, t, rtol)
    return omega(k - 1) * (body + boundary_term(w, f, k))


def tube_volumes(w: Weight, f: CoordFn, k: int, ts, rtol: float = 1e-10) -> np.ndarray:
    """``tube_volume`` on a sorted grid, accumulating between samples."""
    ts = np.asarray(ts, dtype=float)
    if ts.size == 0:
        return ts.copy()
    if np.any(np.diff(ts) < 0):
        raise DomainError("grid must be sorted")
    if ts[0] < w.h0:
        raise DomainError(f"t = {ts[0]} lies below the starting level {w.h0}")
    _check_level(f, w.h0)
    _check_level(f, ts[-1])
    knots = np.concatenate([[w.h0], ts])
    steps = [level_integral(lambda h: w.P(f, h), f, k, knots[i], knots[i + 1], rtol)
             for i in range(ts.size)]
    return omega(k - 1) * (np.cumsum(steps) + boundary_term(w, f, k))


def q_delta(a: float, t: float, k: int, delta: int) -> float:
    """Unweighted tube normaliser with the boundary term (a^2+delta)^{k/2}/(k a)."""
    if delta not in (-1, 0, 1):
        raise DomainError("delta must be -1, 0 or 1")
    if not 0 < a <= t:
        raise DomainError("need 0 < a <= t")
    if delta == -1 and a < 1:
        raise DomainError("time coordinates need a >= 1")
    if k < 1:
        raise DomainError("k must be at least 1")
    f = _DELTA_COORD[delta]
    body = level_integral(lambda h: np.ones_like(h), f, k, a, t)
    base = max(a * a + delta, 0.0)
    return body + base ** (0.5 * k) / (k * a)


_DELTA_COORD = {
    -1: CoordFn.time(n=2),
    0: CoordFn.null(n=2),
    1: CoordFn.space([0.0, 1.0, 0.0]),
}


@dataclass(frozen=True)
class Ordering:
    """Outcome of a weaker-than test; ``witness`` is the first failing level."""

    weaker: bool
    witness: float | None = None
    margin: float = 0.0

    def __bool__(self) -> bool:
        return self.weaker


def is_weaker(
    w1: Weight,
    w2: Weight,
    f: CoordFn,
    k: int,
    interval: tuple[float, float],
    grid: int = 256,
    tol: float = 1e-12,
) -> Ordering:
    """Test P1/Q1 <= P2/Q2 on a linear grid over ``interval``.

    The starting level itself is skipped: there both normalisers may
    vanish and the ratio is not defined.
    """
    if abs(w1.h0 - w2.h0) > 1e-14:
        raise DomainError("weights must share the starting level")
    lo, hi = interval
    if lo < w1.h0 or hi < lo:
        raise DomainError("interval must lie above the starting level")
    ts = np.linspace(lo, hi, grid)
    ts = ts[ts > w1.h0]
    if ts.size == 0:
        raise DegenerateIntervalError("no sample above the starting level")
    q1 = tube_volumes(w1, f, k, ts)
    q2 = tube_volumes(w2, f, k, ts)
    if np.any(q1 <= 0) or np.any(q2 <= 0):
        raise DegenerateIntervalError("a tube volume vanishes on the interval")
    r1 = w1.P(f, ts) / q1
    r2 = w2.P(f, ts) / q2
    gap = r2 - r1
    # relative slack keeps the test meaningful where the ratios blow up
    bad = r1 > r2 + tol * np.maximum(1.0, np.abs(r2))
    margin = float(np.min(gap))
    if np.any(bad):
        return Ordering(False, float(ts[np.argmax(bad)]), margin)
    return Ordering(True, None, margin)


def chain_weights(k: int) -> list[Weight]:
    """The five weights xi, 1, (1+xi)^-k, xi^-k, xi^-(k+1) from the level 1."""
    return [
        Weight.natural(1.0, 1.0),
        Weight.uniform(1.0),
        Weight.pow_xi_plus_one(-k, 1.0),
        Weight.pow_xi(-k, 1.0),
        Weight.pow_xi(-k - 1, 1.0),
    ]


def chain_check(k: int, interval=(1.01, 50.0), f: CoordFn | None = None, grid: int = 256) -> list[Ordering]:
    """Each chain weight against its predecessor: four adjacent comparisons."""
    if f is None:
        f = CoordFn.time(n=3)
    if f.kind != TIME:
        raise DomainError("the chain is stated for a time coordinate")
    if interval[0] <= 1.0:
        raise DomainError("interval must lie in (1, inf)")
    ws = chain_weights(k)
    return [is_weaker(ws[i + 1], ws[i], f, k, interval, grid) for i in range(4)]


COMPENSATED_WEAKER = "compensated_weaker"
NATURAL_WEAKER = "natural_weaker"


@dataclass(frozen=True)
class CompensatedPair:
    natural: Weight
    compensated: Weight
    expected: str


def compensated_weights(f: CoordFn, h0: float) -> CompensatedPair:
    """Natural weight and the uniform weight with the compensating boundary term."""
    if f.kind == SPHERE:
        if not 0 < h0 < 1:
            raise DomainError("sphere starting level must lie in (0, 1)")
        return CompensatedPair(Weight.natural(h0, 1.0), Weight.uniform(h0, 1.0 / (1.0 - h0)), NATURAL_WEAKER)
    if h0 <= 0:
        raise DomainError("starting level must be positive")
    _check_level(f, h0)
    return CompensatedPair(Weight.natural(h0, 1.0), Weight.uniform(h0, 1.0 / h0), COMPENSATED_WEAKER)
