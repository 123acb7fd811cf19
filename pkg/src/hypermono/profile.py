"""Profile curves of the Hopf-invariant minimal annuli.

A profile is a planar curve in polar coordinates (r, alpha) with
rho = r**2. Its angle psi to the radial direction obeys
``sin(psi) = G(rho)`` where ``G(rho) = C * exp(-2 phi(rho)) / rho`` and
``exp(phi)`` is the conformal factor of the ambient model. The curve is
integrated in Euclidean arclength s with state (r, alpha, psi):

    r' = cos(psi),  alpha' = sin(psi) / r,  psi' = 2 r G'(rho),

which keeps ``sin(psi) - G(rho)`` constant and passes through the
turning point psi = pi/2 without a coordinate singularity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import DomainError, SingularityError
from .quadrature import integrate

HYPERBOLIC = "hyperbolic"
SPHERICAL = "spherical"
EUCLIDEAN = "euclidean"
AMBIENTS = (HYPERBOLIC, SPHERICAL, EUCLIDEAN)

BALL_EDGE = 1.0 - 1e-6
RTOL = 1e-12
ATOL = 1e-13


def profile_G(C: float, ambient: str, rho):
    rho = np.asarray(rho, dtype=float)
    if ambient == HYPERBOLIC:
        return C * (1.0 - rho) ** 2 / (4.0 * rho)
    if ambient == SPHERICAL:
        return C * (1.0 + rho) ** 2 / (4.0 * rho)
    return C / rho


def profile_dG(C: float, ambient: str, rho):
    rho = np.asarray(rho, dtype=float)
    if ambient == HYPERBOLIC:
        return -C * (1.0 - rho) * (1.0 + rho) / (4.0 * rho * rho)
    if ambient == SPHERICAL:
        return C * (rho - 1.0) * (rho + 1.0) / (4.0 * rho * rho)
    return -C / (rho * rho)


def _check(C: float, ambient: str) -> None:
    if ambient not in AMBIENTS:
        raise DomainError(f"unknown ambient {ambient!r}")
    if not C > 0:
        raise DomainError("C must be positive")
    if ambient == SPHERICAL and not C < 1:
        raise DomainError("spherical profiles need 0 < C < 1")


def waist_rho(C: float, ambient: str) -> float:
    """Smallest rho with G(rho) = 1, where the profile turns."""
    _check(C, ambient)
    g = lambda x: float(profile_G(C, ambient, x)) - 1.0
    hi = 1.0 if ambient != EUCLIDEAN else max(2.0 * C, 1.0)
    lo = hi
    while g(lo) < 0:
        lo *= 0.5
    if ambient == EUCLIDEAN:
        return brentq(g, lo, 2.0 * hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)
    return brentq(g, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps)


def angle_integral(C: float, ambient: str, rho_lo: float, rho_hi: float, rtol: float = 1e-12) -> float:
    """Polar angle swept while rho runs over [rho_lo, rho_hi] on one branch.

    ``1 - G`` is written through its roots so that turning points at
    either end can be removed by a square-root substitution without
    cancellation.
    """
    _check(C, ambient)
    r1 = waist_rho(C, ambient)
    if ambient == EUCLIDEAN:
        r2 = math.inf

        def gap(rho, pinned):
            # (1 - G) divided by the pinned root factor
            return 1.0 / rho if pinned == 1 else (rho - r1) / rho
    else:
        r2 = 1.0 / r1

        def gap(rho, pinned):
            full = C / (4.0 * rho)
            if pinned == 1:
                return full * (r2 - rho)
            if pinned == 2:
                return full * (rho - r1)
            return full * (rho - r1) * (r2 - rho)

    if rho_lo < r1 * (1 - 1e-12) or rho_hi > r2 * (1 + 1e-12) or rho_hi < rho_lo:
        raise DomainError("rho interval must lie between the turning points")

    def dalpha(rho, pinned=0):
        g = profile_G(C, ambient, rho)
        return g / (2.0 * rho * np.sqrt(gap(rho, pinned) * (1.0 + g)))

    at_lo = abs(rho_lo - r1) <= 1e-12 * r1
    at_hi = math.isfinite(r2) and abs(rho_hi - r2) <= 1e-12 * r2
    mid = 0.5 * (rho_lo + rho_hi)
    total = 0.0
    if at_lo:
        # rho = r1 + u**2 turns (rho - r1)**-0.5 d rho into 2 du
        total += integrate(lambda u: 2.0 * dalpha(r1 + u * u, 1), 0.0, math.sqrt(mid - r1), rtol=rtol)
    else:
        total += integrate(dalpha, rho_lo, mid, rtol=rtol)
    if at_hi:
        total += integrate(lambda u: 2.0 * dalpha(r2 - u * u, 2), 0.0, math.sqrt(r2 - mid), rtol=rtol)
    else:
        total += integrate(dalpha, mid, rho_hi, rtol=rtol)
    return total


def boundary_half_angle(C: float) -> float:
    """Polar angle from the waist to the ideal boundary of a hyperbolic profile."""
    return angle_integral(C, HYPERBOLIC, waist_rho(C, HYPERBOLIC), 1.0)


def sweep_angle_integral(C: float) -> float:
    """Polar angle between consecutive turning points of a spherical profile."""
    rw = waist_rho(C, SPHERICAL)
    return angle_integral(C, SPHERICAL, rw, 1.0 / rw)


@dataclass(frozen=True, eq=False)
class ProfileCurve:
    """Integrated profile, stored as two branches leaving the waist."""

    C: float
    ambient: str
    s: np.ndarray
    r: np.ndarray
    alpha: np.ndarray
    psi: np.ndarray
    waist_index: int
    s_min: float
    s_max: float
    _neg: object
    _pos: object

    def state(self, s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        s = np.asarray(s, dtype=float)
        flat = s.ravel()
        out = np.empty((3, flat.size))
        neg = flat < 0
        if np.any(neg):
            out[:, neg] = self._neg(flat[neg])
        if np.any(~neg):
            out[:, ~neg] = self._pos(flat[~neg])
        return tuple(x.reshape(s.shape) for x in out)

    def xy(self, s) -> tuple[np.ndarray, np.ndarray]:
        r, a, _ = self.state(s)
        return r * np.cos(a), r * np.sin(a)

    @property
    def rho(self) -> np.ndarray:
        return self.r ** 2

    @property
    def xi0(self) -> np.ndarray:
        if self.ambient != HYPERBOLIC:
            raise DomainError("xi0 is defined for hyperbolic profiles")
        return (1.0 + self.rho) / (1.0 - self.rho)

    @property
    def end_angles(self) -> tuple[float, float]:
        return float(self.alpha[0]), float(self.alpha[-1])

    def invariant_residual(self) -> np.ndarray:
        """sin(psi)**2 - G(rho)**2 at the stored samples."""
        return np.sin(self.psi) ** 2 - profile_G(self.C, self.ambient, self.rho) ** 2

    def columns(self) -> dict[str, np.ndarray]:
        cols = {"s": self.s, "r": self.r, "alpha": self.alpha, "psi": self.psi}
        if self.ambient == HYPERBOLIC:
            cols["xi0"] = self.xi0
        else:
            x, y = self.r * np.cos(self.alpha), self.r * np.sin(self.alpha)
            cols["x"] = x
            cols["y"] = y
        return cols


def integrate_profile(
    C: float,
    ambient: str = HYPERBOLIC,
    r_max: float = 10.0,
    rtol: float = RTOL,
    atol: float = ATOL,
    samples: int = 0,
) -> ProfileCurve:
    """Integrate both branches of the profile starting at the waist.

    Hyperbolic profiles stop at ball radius 1 - 1e-6, spherical ones at
    the next turning point, Euclidean ones at radius ``r_max``.
    ``samples`` adds that many evenly spaced dense-output points per
    branch to the solver's own steps.
    """
    _check(C, ambient)
    rw = math.sqrt(waist_rho(C, ambient))
    if ambient == EUCLIDEAN and not r_max > rw:
        raise DomainError("r_max must exceed the waist radius")

    def rhs(_, y):
        r, _a, psi = y
        return [math.cos(psi), math.sin(psi) / r, 2.0 * r * float(profile_dG(C, ambient, r * r))]

    events = []
    if ambient == HYPERBOLIC:
        length = 20.0

        def edge(_, y):
            return y[0] - BALL_EDGE

        edge.terminal = True
        events = [edge, edge]
    elif ambient == SPHERICAL:
        length = 8.0 * (1.0 / rw + 1.0)

        def turn_pos(_, y):
            return y[2] - 0.5 * math.pi

        def turn_neg(_, y):
            return 0.5 * math.pi - y[2]

        for ev in (turn_pos, turn_neg):
            ev.terminal = True
            ev.direction = 1.0
        events = [turn_pos, turn_neg]
    else:
        length = 4.0 * r_max + 10.0

        def rim(_, y):
            return y[0] - r_max

        rim.terminal = True
        events = [rim, rim]

    y0 = [rw, 0.25 * math.pi, 0.5 * math.pi]
    branches = []
    for sign, ev in ((1.0, events[0]), (-1.0, events[1])):
        sol = solve_ivp(rhs, (0.0, sign * length), y0, method="DOP853", rtol=rtol, atol=atol,
                        dense_output=True, events=ev)
        if sol.status != 1:
            raise SingularityError(
                f"profile integration (C={C}, {ambient}, branch {sign:+.0f}) ended without reaching "
                f"its stopping event: {sol.message}; last state {sol.y[:, -1]}")
        t_end = float(sol.t_events[0][0])
        ts = sol.t[np.abs(sol.t) < abs(t_end)]
        if samples:
            ts = np.union1d(ts, np.linspace(0.0, t_end, samples, endpoint=False))
        ts = np.append(ts, t_end)
        ts = ts[np.argsort(np.abs(ts))]
        ys = sol.sol(ts)
        ys[:, 0] = y0
        if ambient == SPHERICAL:
            ys[2, -1] = 0.5 * math.pi
        branches.append((ts, ys, sol.sol, t_end))

    (tp, yp, solp, endp), (tn, yn, soln, endn) = branches
    s = np.concatenate([tn[:0:-1], tp])
    y = np.concatenate([yn[:, :0:-1], yp], axis=1)
    return ProfileCurve(C, ambient, s, y[0], y[1], y[2], tn.size - 1, endn, endp, soln, solp)


def sweep_angle(p: ProfileCurve) -> float:
    """Polar angle swept by a spherical profile from the waist to its next turning point."""
    if p.ambient != SPHERICAL:
        raise DomainError("sweep angle is defined for spherical profiles")
    return float(p.alpha[-1] - p.alpha[p.waist_index])
