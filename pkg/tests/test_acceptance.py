"""Acceptance criteria 1 to 11, each at its stated tolerance.

Every criterion appends one line to ``RESULTS``; ``conftest.py`` prints them
in the terminal summary. Run ``python3 tests/test_acceptance.py`` for the
same lines without pytest.
"""

import math
import time

import numpy as np
import pytest

from hypermono import profile as prof
from hypermono.models import CoordFn, SPoint
from hypermono.monotone import (NON_DECREASING, NON_MONOTONE, compare_densities, density_curve,
                                unweighted_check, verdict)
from hypermono.renorm import ar_mc, fig2_data, gw_extract, renorm_report
from hypermono.sphere import EpsQuery, check_antipodal_bound, epsilon_of_area
from hypermono.surfaces import (clifford_torus, disc_at_distance, geodesic_cone, integrate_over,
                                mc_annulus, veronese)
from hypermono.weights import Weight, chain_check, compensated_weights

import oracles

RESULTS: dict[int, str] = {}

TIME3 = CoordFn.time(n=3)
TIME4 = CoordFn.time(n=4)
NULL_DIR = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
NULL4 = CoordFn.null(NULL_DIR, n=4)
SPACE4 = CoordFn.space_from_plane(1.5, NULL_DIR)
SPACE3 = CoordFn.space([0.0, 1.0, 0.0, 0.0])
NULL3 = CoordFn.null([-1.0, 0.0, 0.0], n=3)


def _record(n: int, ok: bool, detail: str, seconds: float) -> None:
    RESULTS[n] = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  ({seconds:.1f} s) {detail}"


def _criterion(n: int, fn):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    _record(n, ok, detail, dt)
    return ok, detail, dt


# criteria

def c1():
    e1 = ar_mc(1e-6) + 4 * math.pi
    fit = gw_extract(disc_at_distance(0.0), TIME3)
    e2 = fit.A_R + 2 * math.pi
    return abs(e1) <= 1e-3 and abs(e2) <= 1e-4, f"ar_mc(1e-6)+4pi={e1:.2e} disc A_R+2pi={e2:.2e}"


def c2():
    rows = fig2_data(np.geomspace(1e-2, 1e3, 41))
    ratios = np.array([r[3] for r in rows])
    ok = rows[-1][0] == pytest.approx(1e3) and 1.17 <= ratios[-1] <= 1.23 and np.all(ratios >= 1.0)
    return bool(ok), f"ratio(1e3)={ratios[-1]:.6f} min ratio={ratios.min():.6f}"


def c3():
    errs = {C: gw_extract(mc_annulus(C), TIME4).A_R - ar_mc(C) for C in (0.5, 1.0, 4.0)}
    worst = max(abs(e) for e in errs.values())
    return worst <= 1e-3, f"max |A_R fit - closed form|={worst:.2e}"


def c4():
    errs = [float(np.min(prof.integrate_profile(C).xi0)) - math.sqrt(C + 1.0) for C in (0.5, 1.0, 3.0, 10.0)]
    worst = max(abs(e) for e in errs)
    return worst <= 1e-6, f"max |min xi0 - sqrt(C+1)|={worst:.2e}"


def c5():
    lo = prof.sweep_angle(prof.integrate_profile(1e-4, prof.SPHERICAL))
    hi = prof.sweep_angle(prof.integrate_profile(1.0 - 1e-6, prof.SPHERICAL))
    e1, e2 = lo - math.pi / 2, hi - math.pi / math.sqrt(2.0)
    return abs(e1) <= 1e-2 and abs(e2) <= 1e-2, f"theta(1e-4)-pi/2={e1:.2e} theta(1-1e-6)-pi/sqrt2={e2:.2e}"


def c6():
    worst = 0.0
    for C in (0.5, 2.0):
        p = prof.integrate_profile(C, prof.EUCLIDEAN)
        xy = p.r * np.cos(p.alpha) * p.r * np.sin(p.alpha)
        worst = max(worst, float(np.ptp(xy)))
    return worst <= 1e-8, f"spread of x*y={worst:.2e}"


def c7():
    e0 = epsilon_of_area(EpsQuery(4 * math.pi, 2))
    e6 = epsilon_of_area(EpsQuery(6 * math.pi, 2))
    d6 = e6 - math.acos(2 - math.sqrt(3))
    d6o = e6 - oracles.epsilon(6 * math.pi, 2)
    big = math.pi / 2 - epsilon_of_area(EpsQuery(1e6, 2))
    r = check_antipodal_bound(veronese())
    dv = r.eps_measured - math.pi / 3
    ok = e0 == 0.0 and abs(d6) <= 1e-10 and abs(d6o) <= 1e-10 and 0 <= big <= 1e-3 and abs(dv) <= 1e-6 \
        and r.eps_measured <= e6 and r.passed
    return ok, (f"eps(4pi)={e0} eps(6pi) err={d6:.1e} vs oracle {d6o:.1e} pi/2-eps(1e6)={big:.1e} "
                f"veronese eps-pi/3={dv:.1e}")


def c8():
    V = veronese()
    ea = float(integrate_over(V)) - 6 * math.pi
    ec = float(np.max(np.abs(integrate_over(V, lambda X: X))))
    return abs(ea) <= 1e-6 and ec <= 1e-8, f"area-6pi={ea:.1e} max |int x_i|={ec:.1e}"


def c9():
    out = {}
    D = disc_at_distance(0.7)
    out["disc time a=1"] = unweighted_check(D, TIME3, 1.0).status
    out["disc time a=cosh d"] = unweighted_check(D, TIME3, math.cosh(0.7)).status
    out["disc space"] = unweighted_check(D, SPACE3).status
    out["disc null"] = unweighted_check(D, NULL3).status
    for C in (0.5, 1.0, 3.0):
        M = mc_annulus(C)
        out[f"M{C} time"] = unweighted_check(M, TIME4, math.sqrt(C + 1.0)).status
        out[f"M{C} space"] = unweighted_check(M, SPACE4).status
        out[f"M{C} null"] = unweighted_check(M, NULL4).status
    bad = [k for k, v in out.items() if v != NON_DECREASING]
    th = density_curve(geodesic_cone(1.0), TIME3, Weight.natural(1.0), np.geomspace(1.05, 40.0, 16)).theta
    spread = float(np.ptp(th) / np.max(np.abs(th)))
    pole = CoordFn.sphere_height(SPoint(np.array([1.0, 0.0, 0.0, 0.0])))
    v = verdict(density_curve(clifford_torus(), pole, Weight.uniform(0.0, 0.0), np.linspace(0.02, 1.0, 50)))
    ok = not bad and spread <= 1e-6 and v.status == NON_MONOTONE and v.witness is not None
    return ok, f"non-monotone unweighted cases={bad} tube spread={spread:.1e} clifford={v.status} witness={v.witness}"


def c10():
    chain = [o.weaker for o in chain_check(2, (1.01, 50.0), grid=500)]
    a = math.sqrt(2.0)
    pair = compensated_weights(TIME4, a)
    rep = compare_densities(mc_annulus(1.0), TIME4, pair.compensated, pair.natural, np.geomspace(a + 0.01, 20.0, 24))
    ok = len(chain) == 4 and all(chain) and rep.max_excess <= 1e-8
    return ok, f"chain relations={chain} max(Theta_1 - Theta_2)={rep.max_excess:.2e}"


def c11():
    slacks = {}
    D = disc_at_distance(0.7)
    for name, f in (("time", TIME3), ("space", SPACE3), ("null", NULL3)):
        slacks[f"disc {name}"] = renorm_report(D, f).slack
    for C in (0.5, 1.0, 4.0):
        M = mc_annulus(C)
        for name, f in (("time", TIME4), ("space", SPACE4), ("null", NULL4)):
            slacks[f"M{C} {name}"] = renorm_report(M, f).slack
    worst = min(slacks.values())
    e = renorm_report(disc_at_distance(0.0), NULL3).slack - math.pi
    return worst >= -1e-6 and abs(e) <= 1e-6, f"min slack={worst:.3e} disc null slack-pi={e:.1e}"


CRITERIA = {1: (c1, 5.0), 2: (c2, 60.0), 3: (c3, None), 4: (c4, None), 5: (c5, None), 6: (c6, None),
            7: (c7, None), 8: (c8, None), 9: (c9, 120.0), 10: (c10, None), 11: (c11, None)}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    fn, limit = CRITERIA[n]
    ok, detail, dt = _criterion(n, fn)
    assert ok, detail
    if limit is not None:
        assert dt < limit, f"took {dt:.1f} s, limit {limit} s"


if __name__ == "__main__":
    import sys
    sys.path.insert(0, __file__.rsplit("/", 1)[0])
    good = all(_criterion(n, CRITERIA[n][0])[0] for n in sorted(CRITERIA))
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(0 if good else 1)
