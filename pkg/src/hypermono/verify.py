"""Registry of invariant suites and acceptance checks run by ``hypermono verify``."""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import profile as prof
from .errors import NoSolutionError
from .models import (NULL, SPACE, TIME, CoordFn, HPoint, SPoint, ball_to_hyperboloid, boost,
                     coord_value, hyperboloid_to_ball, to_halfspace, warp_data)
from .monotone import (NON_DECREASING, NON_INCREASING, NON_MONOTONE, compare_densities,
                       density_curve, min_coord, unweighted_check, verdict)
from .renorm import ar_mc, boundary_metric_length, fig2_data, gw_extract, isoperimetric_slack, renorm_report
from .sphere import (EpsQuery, ball_area, check_antipodal_bound, cly_bound, epsilon_closed_form_k2,
                     epsilon_of_area, visual_hull_value)
from .surfaces import (TWO_PI, boundary_slice, cap, clifford_torus, disc_at_distance, fd_metric,
                       geodesic_cone, great_subsphere, integrate_over, mc_annulus, mc_boundary,
                       slice_volume, veronese, veronese_map)
from .weights import (COMPENSATED_WEAKER, NATURAL_WEAKER, Weight, chain_check, chain_weights,
                      compensated_weights, is_weaker, omega, q_delta, tube_volume)

MODULE_SUITES = ("models", "weights", "surfaces", "monotone", "renorm", "sphere")
SUITES = MODULE_SUITES + ("acceptance",)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str
    seconds: float


REGISTRY: dict[str, list[tuple[str, Callable[[], tuple[bool, str]]]]] = {s: [] for s in SUITES}


def check(suite: str, name: str):
    def register(fn):
        REGISTRY[suite].append((name, fn))
        return fn
    return register


def run_suite(suite: str) -> list[CheckResult]:
    names = SUITES if suite == "all" else (suite,)
    out = []
    for s in names:
        if s not in REGISTRY:
            raise KeyError(f"unknown suite {s!r}")
        for name, fn in REGISTRY[s]:
            t0 = time.perf_counter()
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    ok, detail = fn()
            except Exception as exc:  # a crashing check is a failing check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            out.append(CheckResult(s, name, bool(ok), detail, time.perf_counter() - t0))
    return out


# shared fixtures

@lru_cache(maxsize=None)
def annulus(C: float):
    return mc_annulus(C)


@lru_cache(maxsize=None)
def time4() -> CoordFn:
    return CoordFn.time(n=4)


NULL4_DIR = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)


def null4() -> CoordFn:
    return CoordFn.null(NULL4_DIR, n=4)


def space4() -> CoordFn:
    return CoordFn.space_from_plane(1.5, NULL4_DIR)


def clifford_pole() -> CoordFn:
    return CoordFn.sphere_height(SPoint(np.array([1.0, 0.0, 0.0, 0.0])))


def _rng(seed: int = 7) -> np.random.Generator:
    return np.random.default_rng(seed)


def _maxerr(values) -> float:
    return float(np.max(np.abs(np.asarray(values, dtype=float))))


# models

@check("models", "ball point (0.6,0,0) maps to (2.125, 1.875, 0, 0)")
def _m_ball_point():
    xi = ball_to_hyperboloid([0.6, 0.0, 0.0])
    err = _maxerr(xi - [2.125, 1.875, 0.0, 0.0])
    return err < 1e-12, f"err={err:.2e}"


@check("models", "hyperboloid-ball roundtrip on 100 points")
def _m_roundtrip():
    rng = _rng()
    pts = rng.normal(size=(100, 3))
    pts *= (rng.uniform(0, 0.99, 100) / np.linalg.norm(pts, axis=1))[:, None]
    xi = ball_to_hyperboloid(pts)
    err = _maxerr(ball_to_hyperboloid(hyperboloid_to_ball(xi)) - xi)
    return err < 1e-12 * max(1.0, float(np.max(np.abs(xi)))), f"err={err:.2e}"


@check("models", "U = V'/2 by central differences for every kind")
def _m_warp():
    rng = _rng()
    fs = [CoordFn.time(n=3), CoordFn.space([0, 1, 0, 0]), CoordFn.null(n=3),
          CoordFn.sphere_height(SPoint(np.array([0.0, 0.0, 1.0])))]
    worst = 0.0
    for f in fs:
        lo, hi = f.range
        lo = max(lo, -20.0) + 1e-4
        hi = min(hi, 20.0) - 1e-4
        h = rng.uniform(lo, hi, 1000)
        eps = 1e-5
        fd = (f.V(h + eps) - f.V(h - eps)) / (4 * eps)
        worst = max(worst, _maxerr(f.U(h) - fd))
    return worst <= 1e-6, f"max residual={worst:.2e}"


@check("models", "time coordinate invariant under rotations about its centre")
def _m_time_invariance():
    rng = _rng()
    O = HPoint.from_spatial([0.3, -0.2, 0.5])
    f = CoordFn.time(O)
    B = boost(O)
    pts = ball_to_hyperboloid(rng.uniform(-0.5, 0.5, (20, 3)))
    worst = 0.0
    for _ in range(10):
        R, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        rot = np.eye(4)
        rot[1:, 1:] = R
        iso = B @ rot @ np.linalg.inv(B)
        worst = max(worst, _maxerr(f.value(pts @ iso.T) - f.value(pts)))
    return worst < 1e-10, f"max change={worst:.2e}"


@check("models", "null coordinate times half-space height is the scale")
def _m_null_height():
    rng = _rng()
    f = CoordFn.null(lam=2.5, n=3)
    pts = ball_to_hyperboloid(rng.uniform(-0.5, 0.5, (50, 3)))
    _, x = to_halfspace(pts)
    err = _maxerr(f.value(pts) * x - 2.5)
    return err < 1e-10, f"err={err:.2e}"


@check("models", "warp data table values")
def _m_warp_table():
    got = [warp_data(CoordFn.time(n=3), 1.0), warp_data(CoordFn.null(n=3), 2.0),
           warp_data(CoordFn.sphere_height(SPoint(np.array([0.0, 0.0, 1.0]))), 1.0)]
    want = [(1.0, 0.0), (2.0, 4.0), (0.0, 1.0)]
    err = _maxerr(np.subtract(got, want))
    return err == 0.0, f"err={err:.2e}"


# weights

@check("weights", "omega * q_delta equals uniform tube volume (50 random cases)")
def _w_qdelta():
    rng = _rng()
    worst = 0.0
    kinds = {-1: CoordFn.time(n=4), 0: CoordFn.null(n=4), 1: CoordFn.space([0, 0, 0, 0, 1])}
    for _ in range(50):
        delta = int(rng.choice([-1, 0, 1]))
        k = int(rng.integers(1, 5))
        a = float(rng.uniform(1.0, 3.0) if delta == -1 else rng.uniform(0.2, 3.0))
        t = a + float(rng.uniform(0.0, 10.0))
        x = omega(k - 1) * q_delta(a, t, k, delta)
        y = tube_volume(Weight.uniform(a, 1.0 / a), kinds[delta], k, t)
        worst = max(worst, abs(x - y) / max(abs(y), 1e-300))
    return worst <= 1e-9, f"max rel err={worst:.2e}"


@check("weights", "natural tube volume does not depend on the starting level")
def _w_natural_h0():
    f = CoordFn.time(n=3)
    worst = 0.0
    for k in (1, 2, 3):
        for t in (1.5, 4.0, 20.0):
            a = tube_volume(Weight.natural(1.0), f, k, t)
            b = tube_volume(Weight.natural(1.3), f, k, t)
            closed = omega(k - 1) / k * (t * t - 1.0) ** (k / 2)
            worst = max(worst, abs(a - b) / closed, abs(a - closed) / closed)
    return worst <= 1e-10, f"max rel err={worst:.2e}"


@check("weights", "weaker-than is reflexive and transitive on chain weights")
def _w_order_props():
    f = CoordFn.time(n=3)
    ws = chain_weights(2)
    iv = (1.01, 50.0)
    refl = all(is_weaker(w, w, f, 2, iv).weaker for w in ws)
    trans = True
    for i in range(5):
        for j in range(i + 1, 5):
            for m in range(j + 1, 5):
                a = is_weaker(ws[m], ws[j], f, 2, iv).weaker and is_weaker(ws[j], ws[i], f, 2, iv).weaker
                if a and not is_weaker(ws[m], ws[i], f, 2, iv).weaker:
                    trans = False
    return refl and trans, f"reflexive={refl} transitive={trans}"


@check("weights", "chain of five weights for k = 1, 2")
def _w_chain():
    res = {k: [o.weaker for o in chain_check(k, (1.01, 50.0), grid=500)] for k in (1, 2)}
    return all(all(v) for v in res.values()), f"{res}"


@check("weights", "compensated weight orderings")
def _w_compensated():
    out = []
    for f, h0, iv in [(CoordFn.time(n=3), 2.0, (2.0, 100.0)),
                      (CoordFn.null(n=3), 1.0, (1.0, 100.0)),
                      (CoordFn.sphere_height(SPoint(np.array([0.0, 0.0, 1.0]))), 0.5, (0.5, 0.999))]:
        pair = compensated_weights(f, h0)
        if pair.expected == COMPENSATED_WEAKER:
            o = is_weaker(pair.compensated, pair.natural, f, 2, iv)
        else:
            o = is_weaker(pair.natural, pair.compensated, f, 2, iv)
        out.append(o.weaker)
    return all(out), f"{out}"


# surfaces

@check("surfaces", "profile invariant sin^2 psi = G^2 to 1e-8")
def _s_invariant():
    worst = 0.0
    for C, amb in [(0.5, prof.HYPERBOLIC), (3.0, prof.HYPERBOLIC), (0.5, prof.SPHERICAL),
                   (2.0, prof.EUCLIDEAN)]:
        worst = max(worst, _maxerr(prof.integrate_profile(C, amb).invariant_residual()))
    return worst <= 1e-8, f"max residual={worst:.2e}"


@check("surfaces", "waist identity min xi0 = sqrt(C+1)")
def _s_waist():
    errs = {C: float(np.min(prof.integrate_profile(C).xi0) - math.sqrt(C + 1.0)) for C in (0.5, 1.0, 3.0, 10.0)}
    return max(abs(e) for e in errs.values()) <= 1e-6, f"{errs}"


@check("surfaces", "Hopf rotation leaves the annulus area element unchanged")
def _s_hopf():
    M = annulus(1.0)
    u = np.linspace(M.u_range[0] * 0.9, M.u_range[1] * 0.9, 7)
    dets = []
    for v in np.linspace(0.0, TWO_PI, 10, endpoint=False):
        g = fd_metric(M, u, np.full_like(u, v))
        dets.append(np.linalg.det(g))
    dets = np.array(dets)
    spread = float(np.max(np.ptp(dets, axis=0) / np.max(dets, axis=0)))
    return spread <= 1e-8, f"relative spread={spread:.2e}"


@check("surfaces", "Veronese pulls back three times the round metric")
def _s_veronese_metric():
    V = veronese()
    u = np.linspace(0.2, 1.4, 9)
    v = np.linspace(0.0, 6.0, 9)
    U, W = np.meshgrid(u, v, indexing="ij")
    g = fd_metric(V, U, W)
    want = np.zeros_like(g)
    want[..., 0, 0] = 3.0
    want[..., 1, 1] = 3.0 * np.sin(U) ** 2
    err = _maxerr(g - want)
    return err <= 1e-8, f"err={err:.2e}"


@check("surfaces", "catalog areas: Veronese 6 pi, Clifford 2 pi^2, capped disc")
def _s_areas():
    e1 = abs(integrate_over(veronese()) - 6 * math.pi)
    e2 = abs(integrate_over(clifford_torus()) - 2 * math.pi ** 2)
    D = cap(disc_at_distance(0.0), CoordFn.time(n=3), math.cosh(1.3))
    e3 = abs(integrate_over(D) - TWO_PI * (math.cosh(1.3) - 1.0))
    return e1 <= 1e-6 and e2 <= 1e-8 and e3 <= 1e-8, f"errs={e1:.1e},{e2:.1e},{e3:.1e}"


@check("surfaces", "slice volume is nondecreasing for non-negative weights")
def _s_slice_monotone():
    D = disc_at_distance(0.7)
    f = CoordFn.time(n=3)
    ts = np.linspace(1.3, 6.0, 12)
    vals = [slice_volume(D, f, Weight.uniform(1.0), t) for t in ts]
    d = float(np.min(np.diff(vals)))
    return d >= 0.0, f"min increment={d:.3e}"


@check("surfaces", "level curve length dominates the starting parallel volume")
def _s_est_curve():
    M = annulus(1.0)
    f = time4()
    h0 = 2.0
    par = boundary_slice(M, f, h0).parallel
    lengths = [boundary_slice(M, f, t).length for t in (2.5, 5.0, 10.0)]
    return min(lengths) >= par - 1e-8, f"parallel={par:.6f} lengths={np.round(lengths, 6).tolist()}"


@check("surfaces", "disc level curves have normalised length 2 pi")
def _s_disc_slice():
    D = disc_at_distance(0.0)
    errs = [boundary_slice(D, CoordFn.time(n=3), t).length - TWO_PI for t in (1.5, 3.0, 10.0)]
    return _maxerr(errs) <= 1e-9, f"err={_maxerr(errs):.2e}"


# monotone

@check("monotone", "tube density is constant (cone over a circle)")
def _mo_tube():
    K = geodesic_cone(1.0)
    f = CoordFn.time(n=3)
    spreads = []
    for w in (Weight.natural(1.0), Weight.uniform(1.0), Weight.pow_xi(-2.0, 1.0)):
        th = density_curve(K, f, w, np.geomspace(1.05, 40.0, 16)).theta
        spreads.append(float(np.ptp(th) / np.max(np.abs(th))))
    return max(spreads) < 1e-6, f"relative spreads={[f'{s:.1e}' for s in spreads]}"


@check("monotone", "naturally weighted density nondecreasing (discs, annuli)")
def _mo_natural():
    out = {}
    D = disc_at_distance(0.7)
    f3 = CoordFn.time(n=3)
    out["disc"] = verdict(density_curve(D, f3, Weight.natural(1.0), np.geomspace(1.3, 60.0, 24))).status
    for C in (0.5, 3.0):
        M = annulus(C)
        a = math.sqrt(C + 1.0)
        out[f"M{C}"] = verdict(density_curve(M, time4(), Weight.natural(1.0), np.geomspace(a + 0.01, 40.0, 24))).status
    return all(v == NON_DECREASING for v in out.values()), f"{out}"


@check("monotone", "sphere natural density nonincreasing where U < 0")
def _mo_sphere_natural():
    T = clifford_torus()
    f = clifford_pole()
    st = verdict(density_curve(T, f, Weight.natural(1.05, 1.0), np.linspace(1.1, 1.69, 20))).status
    return st in (NON_INCREASING,), f"status={st}"


@check("monotone", "Clifford torus unweighted hemisphere density is not monotone")
def _mo_clifford():
    T = clifford_torus()
    v = verdict(density_curve(T, clifford_pole(), Weight.uniform(0.0, 0.0), np.linspace(0.02, 1.0, 50)))
    ok = v.status == NON_MONOTONE and v.witness is not None
    return ok, f"status={v.status} witness={v.witness}"


@check("monotone", "compensated density below natural on M_C")
def _mo_comparison():
    M = annulus(1.0)
    a = math.sqrt(2.0)
    pair = compensated_weights(time4(), a)
    rep = compare_densities(M, time4(), pair.compensated, pair.natural, np.geomspace(a + 0.01, 20.0, 24))
    ok = rep.max_excess <= 1e-8 and rep.verdict_first.nondecreasing and rep.verdict_second.nondecreasing
    return ok, f"max excess={rep.max_excess:.2e} order={rep.order}"


@check("monotone", "monotonicity at larger a implies it at smaller a (disc)")
def _mo_strength():
    D = disc_at_distance(0.7)
    f = CoordFn.time(n=3)
    hi = unweighted_check(D, f, math.cosh(0.7))
    lo = unweighted_check(D, f, 1.0)
    return (not hi.nondecreasing) or lo.nondecreasing, f"a=cosh d: {hi.status}, a=1: {lo.status}"


@check("monotone", "closed sphere surfaces have zero coordinate averages")
def _mo_centroid():
    errs = {s.kind: _maxerr(integrate_over(s, lambda X: X)) for s in (veronese(), clifford_torus(), great_subsphere())}
    return max(errs.values()) <= 1e-8, f"{ {k: f'{v:.1e}' for k, v in errs.items()} }"


@check("monotone", "caps of discs are their own tubes (zero slack)")
def _mo_tube_bound():
    from .monotone import tube_bound_check
    f = CoordFn.time(n=3)
    D = cap(disc_at_distance(0.0), f, 3.0)
    b = tube_bound_check(D, f, Weight.natural(1.0))
    return abs(b.slack) <= 1e-8 * b.tube_volume, f"slack={b.slack:.2e}"


# renorm

@check("renorm", "renormalised area decreases with C")
def _r_decreasing():
    vals = [ar_mc(C) for C in (0.1, 0.5, 1.0, 2.0, 4.0, 10.0)]
    return bool(np.all(np.diff(vals) < 0)) and vals[-2] < -4 * math.pi, f"{np.round(vals, 6).tolist()}"


@check("renorm", "area expansion and closed form agree on M_C")
def _r_cross():
    errs = {C: gw_extract(annulus(C), time4()).A_R - ar_mc(C) for C in (0.5, 1.0, 4.0)}
    return max(abs(e) for e in errs.values()) <= 1e-3, f"{ {k: f'{v:.1e}' for k, v in errs.items()} }"


@check("renorm", "linear area coefficient equals the ideal boundary length")
def _r_length():
    errs = {}
    for C in (0.5, 1.0):
        fit = gw_extract(annulus(C), time4())
        errs[C] = fit.L - boundary_metric_length(mc_boundary(C), time4())
    return max(abs(e) for e in errs.values()) <= 1e-4, f"{ {k: f'{v:.1e}' for k, v in errs.items()} }"


@check("renorm", "isoperimetric slacks non-negative on complete catalog surfaces")
def _r_slacks():
    worst = math.inf
    D = disc_at_distance(0.7)
    for f in (CoordFn.time(n=3), CoordFn.space([0, 1, 0, 0]), CoordFn.null([-1, 0, 0], n=3)):
        worst = min(worst, renorm_report(D, f).slack)
    for C in (0.5, 1.0, 4.0):
        for f in (time4(), null4(), space4()):
            worst = min(worst, renorm_report(annulus(C), f).slack)
    return worst >= -1e-6, f"min slack={worst:.3e}"


@check("renorm", "space-kind disc slack non-negative for a in {0.1, 0.5, 1}")
def _r_space_disc():
    D = disc_at_distance(1.0)
    f = CoordFn.space([0, 1, 0, 0])
    rep = renorm_report(D, f)
    vals = [isoperimetric_slack(rep.A_R, rep.boundary_length, a, 1) for a in (0.1, 0.5, 1.0)]
    return min(vals) >= 0.0 and rep.a >= 1.0, f"{np.round(vals, 6).tolist()}"


# sphere

@check("sphere", "epsilon is increasing in the area for k = 1, 2, 3")
def _sp_increasing():
    ok = True
    for k in (1, 2, 3):
        As = omega(k) * np.linspace(1.0, 20.0, 40)
        eps = [epsilon_of_area(EpsQuery(float(A), k)) for A in As]
        ok &= bool(np.all(np.diff(eps) > 0))
    return ok, f"increasing={ok}"


@check("sphere", "closed form and bisection agree for k = 2 (100 areas)")
def _sp_closed_form():
    As = _rng().uniform(4 * math.pi, 100 * math.pi, 100)
    err = max(abs(epsilon_of_area(EpsQuery(float(A), 2)) - epsilon_closed_form_k2(float(A))) for A in As)
    return err <= 1e-10, f"max err={err:.2e}"


@check("sphere", "no solution below m omega_k")
def _sp_domain():
    raised = 0
    for A, k, m in [(4 * math.pi - 1e-6, 2, 1.0), (2 * math.pi - 1e-3, 1, 1.0), (6 * math.pi, 2, 2.0)]:
        try:
            epsilon_of_area(EpsQuery(A, k, m))
        except NoSolutionError:
            raised += 1
    return raised == 3, f"raised {raised}/3"


@check("sphere", "measured antipodalness within the area bound")
def _sp_antipodal():
    res = {s.kind: check_antipodal_bound(s) for s in (great_subsphere(), clifford_torus(), veronese())}
    ok = all(r.passed for r in res.values())
    detail = ", ".join(f"{k}: {r.eps_measured:.6f}<={r.eps_bound:.6f}" for k, r in res.items())
    return ok, detail


@check("sphere", "visual hull: circle value 2 pi / cosh d and annulus points inside")
def _sp_hull():
    d = 0.8
    O = HPoint.from_spatial([0.0, 0.0, math.sinh(d)])
    eq = lambda v: np.stack([np.cos(v), np.sin(v), np.zeros_like(v)], axis=-1)
    e1 = abs(visual_hull_value([eq], O) - TWO_PI / math.cosh(d))
    worst = math.inf
    for C in (0.5, 1.0):
        M = annulus(C)
        us = np.linspace(M.u_range[0], M.u_range[1], 9)[1:-1]
        for u in us:
            for v in (0.0, 1.0, 2.5):
                xi = M.embed(u, v)
                worst = min(worst, visual_hull_value(mc_boundary(C), HPoint(np.asarray(xi))) - TWO_PI)
    return e1 <= 1e-8 and worst >= -1e-8, f"circle err={e1:.1e} min hull margin={worst:.3e}"


@check("sphere", "small-ball volume lower bound on Veronese balls")
def _sp_cly():
    p = SPoint(veronese_map(np.array([0.0, 0.0, 1.0])))
    area = ball_area(veronese(), p, 0.25 * math.pi)
    bound = cly_bound(0.25 * math.pi, 2)
    return area >= bound and abs(cly_bound(0.5 * math.pi, 2) - TWO_PI) < 1e-12, f"{area:.6f} >= {bound:.6f}"


# acceptance

@check("acceptance", "1 disc-pair limit and disc A_R")
def _a1():
    e1 = ar_mc(1e-6) + 4 * math.pi
    fit = gw_extract(disc_at_distance(0.0), CoordFn.time(n=3))
    e2 = fit.A_R + TWO_PI
    return abs(e1) <= 1e-3 and abs(e2) <= 1e-4, f"ar_mc+4pi={e1:.2e} A_R+2pi={e2:.2e}"


@check("acceptance", "2 figure ratio plateau and ratio >= 1")
def _a2():
    rows = fig2_data(np.geomspace(1e-2, 1e3, 41))
    ratios = np.array([r[3] for r in rows])
    last = float(ratios[-1])
    return 1.17 <= last <= 1.23 and float(ratios.min()) >= 1.0, f"ratio(1e3)={last:.6f} min={ratios.min():.6f}"


@check("acceptance", "3 expansion vs closed form for C in {0.5, 1, 4}")
def _a3():
    return _r_cross()


@check("acceptance", "4 waist identity")
def _a4():
    return _s_waist()


@check("acceptance", "5 spherical sweep angle limits")
def _a5():
    lo = prof.sweep_angle(prof.integrate_profile(1e-4, prof.SPHERICAL))
    hi = prof.sweep_angle(prof.integrate_profile(1.0 - 1e-6, prof.SPHERICAL))
    e1, e2 = lo - 0.5 * math.pi, hi - math.pi / math.sqrt(2.0)
    return abs(e1) <= 1e-2 and abs(e2) <= 1e-2, f"theta(1e-4)={lo:.6f} theta(1-1e-6)={hi:.6f}"


@check("acceptance", "6 Euclidean profile has constant x*y")
def _a6():
    p = prof.integrate_profile(2.0, prof.EUCLIDEAN)
    x, y = p.r * np.cos(p.alpha), p.r * np.sin(p.alpha)
    spread = float(np.ptp(x * y))
    return spread <= 1e-8, f"spread={spread:.2e}"


@check("acceptance", "7 epsilon solver and Veronese point")
def _a7():
    e0 = epsilon_of_area(EpsQuery(4 * math.pi, 2))
    e6 = epsilon_of_area(EpsQuery(6 * math.pi, 2)) - math.acos(2.0 - math.sqrt(3.0))
    ebig = 0.5 * math.pi - epsilon_of_area(EpsQuery(1e6, 2))
    r = check_antipodal_bound(veronese())
    ev = r.eps_measured - math.pi / 3.0
    ok = e0 == 0.0 and abs(e6) <= 1e-10 and abs(ebig) <= 1e-3 and abs(ev) <= 1e-6 and r.passed
    return ok, f"eps(4pi)={e0} eps(6pi) err={e6:.1e} pi/2-eps(1e6)={ebig:.1e} veronese err={ev:.1e}"


@check("acceptance", "8 Veronese area and centroid")
def _a8():
    V = veronese()
    ea = integrate_over(V) - 6 * math.pi
    ec = _maxerr(integrate_over(V, lambda X: X))
    return abs(ea) <= 1e-6 and ec <= 1e-8, f"area err={ea:.1e} centroid={ec:.1e}"


@check("acceptance", "9 monotonicity suite")
def _a9():
    out = {}
    D = disc_at_distance(0.7)
    f3 = CoordFn.time(n=3)
    out["disc a=1"] = unweighted_check(D, f3, 1.0).status
    out["disc a=cosh d"] = unweighted_check(D, f3, math.cosh(0.7)).status
    out["disc space"] = unweighted_check(D, CoordFn.space([0, 1, 0, 0])).status
    out["disc null"] = unweighted_check(D, CoordFn.null([-1, 0, 0], n=3)).status
    for C in (0.5, 1.0, 3.0):
        M = annulus(C)
        out[f"M{C} time"] = unweighted_check(M, time4(), math.sqrt(C + 1.0)).status
        out[f"M{C} null"] = unweighted_check(M, null4()).status
        out[f"M{C} space"] = unweighted_check(M, space4()).status
    mono = all(v == NON_DECREASING for v in out.values())
    tube_ok, tube_detail = _mo_tube()
    cl_ok, cl_detail = _mo_clifford()
    bad = [k for k, v in out.items() if v != NON_DECREASING]
    return mono and tube_ok and cl_ok, f"failures={bad} tube: {tube_detail}; clifford: {cl_detail}"


@check("acceptance", "10 weight chain and compensated comparison")
def _a10():
    ch_ok, ch = _w_chain()
    cmp_ok, cmp = _mo_comparison()
    return ch_ok and cmp_ok, f"chain {ch}; {cmp}"


@check("acceptance", "11 isoperimetric slacks and disc null slack = pi")
def _a11():
    ok, detail = _r_slacks()
    rep = renorm_report(disc_at_distance(0.0), CoordFn.null([-1, 0, 0], n=3))
    e = rep.slack - math.pi
    return ok and abs(e) <= 1e-6, f"{detail} disc null slack-pi={e:.1e}"
