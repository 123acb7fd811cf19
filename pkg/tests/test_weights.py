import math

import numpy as np
import pytest
from hypothesis import given
from scipy.interpolate import PchipInterpolator
from hypothesis import strategies as st

from frozen import Q_DELTA_1P3_4_K3_SPACE
from oracles import omega as omega_oracle
from oracles import q_delta as q_delta_oracle

from hypermono.errors import DegenerateIntervalError, DomainError
from hypermono.models import CoordFn, SPoint
from hypermono.weights import (COMPENSATED_WEAKER, NATURAL_WEAKER, Weight, boundary_term, chain_check,
                               chain_weights, compensated_weights, is_critical, is_weaker, omega, q_delta,
                               tube_volume, tube_volumes)

TIME3 = CoordFn.time(n=3)
NULL3 = CoordFn.null(n=3)
SPACE3 = CoordFn.space([0.0, 0.0, 0.0, 1.0])
COORD = {-1: TIME3, 0: NULL3, 1: SPACE3}


@pytest.mark.parametrize("k", range(0, 7))
def test_omega_matches_gamma_formula(k):
    assert omega(k) == pytest.approx(omega_oracle(k), rel=1e-15)


def test_omega_low_values():
    assert omega(0) == 2.0
    assert omega(1) == 2 * math.pi
    assert omega(2) == 4 * math.pi


@pytest.mark.parametrize("t", [1.0, 1.5, 3.0, 25.0])
def test_natural_time_tube(t):
    assert tube_volume(Weight.natural(1.0, 1.0), TIME3, 2, t) == pytest.approx(math.pi * (t * t - 1), rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("a, t", [(0.5, 1.0), (1.0, 4.0), (2.0, 2.0)])
def test_uniform_null_tube(a, t):
    got = tube_volume(Weight.uniform(a, 1.0 / a), NULL3, 2, t)
    assert got == pytest.approx(2 * math.pi * (t - a / 2), rel=1e-12)


@pytest.mark.parametrize("w", [Weight.natural(2.0, 0.0), Weight.uniform(2.0, 0.0), Weight.pow_xi(-2, 2.0)])
def test_empty_tube_is_zero(w):
    assert tube_volume(w, TIME3, 2, 2.0) == 0.0


def test_tube_volume_below_start():
    with pytest.raises(DomainError):
        tube_volume(Weight.uniform(2.0), TIME3, 2, 1.5)


@pytest.mark.parametrize("delta, want", [(-1, lambda t: t - 1), (1, lambda t: t), (0, lambda t: t - 0.5)])
@pytest.mark.parametrize("t", [1.0, 2.0, 7.5])
def test_q_delta_examples(delta, want, t):
    assert q_delta(1.0, t, 2, delta) == pytest.approx(want(t), rel=1e-13, abs=1e-15)


def test_q_delta_frozen():
    assert q_delta(1.3, 4.0, 3, 1) == pytest.approx(Q_DELTA_1P3_4_K3_SPACE, rel=1e-12)


@pytest.mark.parametrize("a, t, delta", [(2.0, 1.0, 0), (1.0, 2.0, 3), (0.5, 2.0, -1), (-1.0, 2.0, 1)])
def test_q_delta_errors(a, t, delta):
    with pytest.raises(DomainError):
        q_delta(a, t, 2, delta)


@given(st.sampled_from([-1, 0, 1]), st.integers(1, 4), st.floats(1.0, 3.0), st.floats(0.0, 10.0))
def test_q_delta_identity(delta, k, a, dt):
    t = a + dt
    x = omega(k - 1) * q_delta(a, t, k, delta)
    y = tube_volume(Weight.uniform(a, 1.0 / a), COORD[delta], k, t)
    assert x == pytest.approx(y, rel=1e-9)
    assert q_delta(a, t, k, delta) == pytest.approx(q_delta_oracle(a, t, k, delta), rel=1e-10)


@given(st.integers(1, 4), st.floats(1.0, 3.0), st.floats(1.0, 3.0), st.floats(3.0, 30.0))
def test_natural_tube_independent_of_start(k, h1, h2, t):
    q1 = tube_volume(Weight.natural(h1), TIME3, k, t)
    q2 = tube_volume(Weight.natural(h2), TIME3, k, t)
    assert q1 == pytest.approx(q2, rel=1e-10)
    assert q1 == pytest.approx(omega(k - 1) / k * (t * t - 1) ** (k / 2), rel=1e-10)


def test_critical_start_ignores_c():
    assert is_critical(TIME3, 1.0)
    assert boundary_term(Weight.uniform(1.0, 5.0), TIME3, 2) == 0.0
    ts = np.linspace(1.5, 9.0, 5)
    np.testing.assert_array_equal(tube_volumes(Weight.uniform(1.0, 5.0), TIME3, 2, ts),
                                  tube_volumes(Weight.uniform(1.0, 0.0), TIME3, 2, ts))


@given(st.floats(1.5, 40.0), st.floats(1.2, 3.0))
def test_tube_volume_increasing(t, h0):
    w = Weight.pow_xi_plus_one(-2, h0, 0.3)
    assert tube_volume(w, TIME3, 2, h0 + t) > tube_volume(w, TIME3, 2, h0 + 0.9 * t)


def test_tabulated_weight_interpolates_monotonically():
    hs = np.linspace(1.0, 10.0, 10)
    w = Weight.tabulated(hs, 1.0 / hs ** 2)
    x = np.linspace(1.0, 10.0, 200)
    p = w.P(TIME3, x)
    assert np.all(p > 0)
    assert np.all(np.diff(p) <= 0)
    # quadrature of the interpolant agrees with its exact piecewise-cubic integral
    exact = 2 * math.pi * PchipInterpolator(hs, 1.0 / hs ** 2).integrate(1.0, 10.0)
    assert tube_volume(w, TIME3, 2, 10.0) == pytest.approx(exact, rel=1e-10)


def test_weaker_larger_c():
    w1, w2 = Weight.uniform(2.0, 2.0), Weight.uniform(2.0, 1.0)
    assert is_weaker(w1, w2, TIME3, 2, (2.0, 30.0)).weaker
    o = is_weaker(w2, w1, TIME3, 2, (2.0, 30.0))
    assert not o.weaker and o.witness is not None


def test_weaker_reflexive_and_chain_pair():
    w = Weight.pow_xi(-2, 1.0)
    assert is_weaker(w, w, TIME3, 2, (1.01, 10.0)).weaker
    assert is_weaker(Weight.uniform(1.0), Weight.natural(1.0), TIME3, 2, (1.0, 10.0)).weaker


def test_weaker_degenerate_interval():
    with pytest.raises(DegenerateIntervalError):
        is_weaker(Weight.uniform(1.0, 0.0), Weight.uniform(1.0), TIME3, 2, (1.0, 1.0), grid=3)


@pytest.mark.parametrize("k", [1, 2])
def test_chain_all_weaker(k):
    res = chain_check(k, (1.01, 50.0), grid=500)
    assert len(res) == 4
    assert all(o.weaker for o in res)


def test_chain_reversed_not_weaker():
    ws = chain_weights(2)
    o = is_weaker(ws[0], ws[1], TIME3, 2, (1.01, 50.0))
    assert not o.weaker
    assert 1.01 <= o.witness <= 50.0


def test_chain_transitive():
    ws = chain_weights(2)
    for i in range(5):
        for j in range(i + 1, 5):
            assert is_weaker(ws[j], ws[i], TIME3, 2, (1.01, 50.0)).weaker


def test_chain_interval_must_avoid_one():
    with pytest.raises(DomainError):
        chain_check(2, (1.0, 5.0))


@pytest.mark.parametrize("f, h0, c, expected, iv", [
    (TIME3, 2.0, 0.5, COMPENSATED_WEAKER, (2.0, 100.0)),
    (CoordFn.sphere_height(SPoint(np.array([0.0, 0.0, 1.0]))), 0.5, 2.0, NATURAL_WEAKER, (0.5, 0.999)),
    (NULL3, 1.0, 1.0, COMPENSATED_WEAKER, (1.0, 100.0)),
])
def test_compensated_pairs(f, h0, c, expected, iv):
    pair = compensated_weights(f, h0)
    assert pair.expected == expected
    assert pair.compensated.c == pytest.approx(c)
    assert pair.natural.c == 1.0
    lo, hi = (pair.compensated, pair.natural) if expected == COMPENSATED_WEAKER else (pair.natural, pair.compensated)
    assert is_weaker(lo, hi, f, 2, iv).weaker


def test_compensated_out_of_range():
    with pytest.raises(DomainError):
        compensated_weights(CoordFn.sphere_height(SPoint(np.array([0.0, 0.0, 1.0]))), 1.5)
