import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypermono.errors import DomainError, FitError
from hypermono.models import CoordFn
from hypermono.renorm import (ar_mc, boundary_metric_length, fig2_data, fig2_row, gw_extract,
                              isoperimetric_slack, renorm_report)
from hypermono.surfaces import clifford_torus, disc_at_distance, mc_annulus, mc_boundary

import frozen
import oracles

TIME3 = CoordFn.time(n=3)
TIME4 = CoordFn.time(n=4)
NULL_DIR = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)


@pytest.fixture(scope="module")
def annuli():
    return {C: mc_annulus(C) for C in (0.5, 1.0, 4.0)}


def _circle(z):
    r = math.sqrt(1.0 - z * z)
    return lambda v: np.stack([r * np.cos(v), r * np.sin(v), z + 0.0 * v], axis=-1)


# closed form

@pytest.mark.parametrize("C,expected", sorted(frozen.AR_MC.items()))
def test_ar_mc_frozen(C, expected):
    assert ar_mc(C) == pytest.approx(expected, rel=1e-12)


@settings(max_examples=15)
@given(st.floats(1e-4, 50.0))
def test_ar_mc_against_oracle(C):
    assert ar_mc(C) == pytest.approx(oracles.ar_mc(C), rel=1e-10)


def test_disc_pair_limit():
    assert abs(ar_mc(1e-6) + 4 * math.pi) <= 1e-3


def test_ar_mc_strictly_decreasing():
    vals = [ar_mc(C) for C in np.geomspace(1e-3, 1e3, 30)]
    assert np.all(np.diff(vals) < 0)
    assert ar_mc(1.0) > ar_mc(2.0) > ar_mc(4.0)
    assert ar_mc(4.0) < -4 * math.pi


@pytest.mark.parametrize("C", [0.0, -1.0, float("nan")])
def test_ar_mc_rejects_nonpositive(C):
    with pytest.raises(DomainError):
        ar_mc(C)


# area-growth fit

def test_gw_disc_through_centre():
    fit = gw_extract(disc_at_distance(0.0), TIME3)
    assert fit.A_R == pytest.approx(-2 * math.pi, abs=1e-4)
    assert fit.L == pytest.approx(2 * math.pi, abs=1e-6)
    assert abs(fit.c) <= 1e-6


def test_gw_cross_validation(annuli):
    for C, M in annuli.items():
        fit = gw_extract(M, TIME4)
        assert abs(fit.A_R - ar_mc(C)) <= 1e-3
        assert abs(fit.L - boundary_metric_length(mc_boundary(C), TIME4)) <= 1e-4


def test_gw_short_grid_rejected():
    D = disc_at_distance(0.0)
    with pytest.raises(FitError, match="condition number"):
        gw_extract(D, TIME3, t_grid=np.linspace(100.0, 100.001, 6))
    with pytest.raises(FitError):
        gw_extract(D, TIME3, t_grid=[10.0, 20.0, 30.0])


def test_gw_needs_hyperbolic():
    from hypermono.models import SPoint
    f = CoordFn.sphere_height(SPoint(np.array([1.0, 0.0, 0.0, 0.0])))
    with pytest.raises(DomainError):
        gw_extract(clifford_torus(), f)


# boundary lengths

def test_equator_round_length():
    assert boundary_metric_length(_circle(0.0), TIME3) == pytest.approx(2 * math.pi, rel=1e-10)


@pytest.mark.parametrize("z", [-0.5, 0.0, 0.3])
def test_flat_length_of_circle(z):
    # stereographic image from the ideal point (0, 0, 1) has radius sqrt(1-z^2)/(1-z)
    R = math.sqrt(1 - z * z) / (1 - z)
    f = CoordFn.null([0.0, 0.0, 1.0])
    assert boundary_metric_length(_circle(z), f) == pytest.approx(2 * math.pi * R, rel=1e-10)


def test_flat_length_scales_with_lambda():
    f1, f2 = CoordFn.null([0.0, 0.0, 1.0]), CoordFn.null([0.0, 0.0, 1.0], lam=2.0)
    assert boundary_metric_length(_circle(0.2), f2) == pytest.approx(0.5 * boundary_metric_length(_circle(0.2), f1), rel=1e-12)


def test_annulus_boundary_is_two_great_circles():
    assert boundary_metric_length(mc_boundary(1.0), TIME4) == pytest.approx(oracles.mc_boundary_length(), rel=1e-10)


def test_curve_through_null_point_rejected():
    f = CoordFn.null([0.0, 0.0, 1.0])
    tilted = lambda v: np.stack([np.cos(v), np.zeros_like(v), np.sin(v)], axis=-1)
    with pytest.raises(DomainError):
        boundary_metric_length(tilted, f)


def test_curve_crossing_space_plane_rejected():
    f = CoordFn.space([0.0, 1.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        boundary_metric_length(_circle(0.0), f)


# isoperimetric slack

def test_slack_arithmetic():
    assert isoperimetric_slack(-2 * math.pi, 2 * math.pi, 1.0, -1) == pytest.approx(0.0, abs=1e-15)
    assert isoperimetric_slack(-2 * math.pi, 2 * math.pi, 1.0, 0) == pytest.approx(math.pi, rel=1e-15)
    with pytest.raises(DomainError):
        isoperimetric_slack(-1.0, 1.0, 0.0, 1)


def test_disc_time_slack_zero():
    rep = renorm_report(disc_at_distance(0.0), TIME3)
    assert rep.a == pytest.approx(1.0)
    assert abs(rep.slack) <= 1e-6


def test_disc_null_slack_pi():
    rep = renorm_report(disc_at_distance(0.0), CoordFn.null([-1.0, 0.0, 0.0]))
    assert rep.slack == pytest.approx(math.pi, abs=1e-6)


@pytest.mark.parametrize("kind", ["time", "null", "space"])
@pytest.mark.parametrize("C", [0.5, 1.0, 4.0])
def test_annulus_slacks_nonnegative(annuli, C, kind):
    f = {"time": TIME4, "null": CoordFn.null(NULL_DIR, n=4), "space": CoordFn.space_from_plane(1.5, NULL_DIR)}[kind]
    rep = renorm_report(annuli[C], f)
    assert rep.slack >= -1e-6
    if kind == "time" and C == 4.0:
        assert rep.slack > 0


@pytest.mark.parametrize("a", [0.1, 0.5, 1.0])
def test_space_disc_slack(a):
    rep = renorm_report(disc_at_distance(1.0), CoordFn.space([0.0, 1.0, 0.0, 0.0]))
    assert isoperimetric_slack(rep.A_R, rep.boundary_length, a, 1) >= 0.0


def test_report_needs_ideal_boundary():
    from hypermono.surfaces import cap
    with pytest.raises(DomainError):
        renorm_report(cap(disc_at_distance(0.0), TIME3, 3.0), TIME3)


# figure table

def test_fig2_small_C_limit():
    C, area, perim, ratio = fig2_row(1e-6)
    assert area == pytest.approx(4 * math.pi, abs=1e-3)
    assert perim == pytest.approx(4 * math.pi, abs=1e-3)
    assert ratio == pytest.approx(1.0, abs=1e-3)


def test_fig2_plateau():
    ratio = fig2_row(1e3)[3]
    assert 1.17 <= ratio <= 1.23
    assert ratio == pytest.approx(frozen.FIG2_RATIO_1E3, rel=1e-10)
    assert ratio == pytest.approx(oracles.fig2_ratio(1e3), rel=1e-10)


def test_fig2_ratio_at_least_one():
    rows = fig2_data(np.geomspace(1e-2, 1e3, 21))
    assert [r[0] for r in rows] == sorted(r[0] for r in rows)
    assert min(r[3] for r in rows) >= 1.0


@pytest.mark.parametrize("Cs", [[0.5, -1.0], [2.0, 1.0], [1.0, 1.0]])
def test_fig2_input_checks(Cs):
    with pytest.raises(DomainError):
        fig2_data(Cs)
