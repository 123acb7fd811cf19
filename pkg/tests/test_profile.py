import math

import numpy as np
import pytest

from frozen import SWEEP_ANGLE
from oracles import sweep_angle as sweep_oracle

from hypermono import profile as prof
from hypermono.errors import DomainError


@pytest.mark.parametrize("C", [0.5, 1.0, 3.0, 10.0])
def test_waist_identity(C):
    p = prof.integrate_profile(C)
    assert np.min(p.xi0) == pytest.approx(math.sqrt(C + 1.0), abs=1e-6)
    assert p.psi[p.waist_index] == 0.5 * math.pi


@pytest.mark.parametrize("C, ambient", [(0.25, "hyperbolic"), (4.0, "hyperbolic"), (0.05, "spherical"),
                                        (0.9, "spherical"), (2.0, "euclidean")])
def test_profile_invariant(C, ambient):
    p = prof.integrate_profile(C, ambient)
    assert np.max(np.abs(p.invariant_residual())) <= 1e-8
    assert np.all(np.diff(p.s) > 0)


def test_hyperbolic_reaches_ball_edge():
    p = prof.integrate_profile(1.0)
    assert p.r[0] == pytest.approx(1 - 1e-6, abs=1e-12)
    assert p.r[-1] == pytest.approx(1 - 1e-6, abs=1e-12)


def test_euclidean_hyperbola():
    p = prof.integrate_profile(2.0, "euclidean", r_max=10.0)
    x, y = p.r * np.cos(p.alpha), p.r * np.sin(p.alpha)
    F = x * y
    assert np.ptp(F) <= 1e-8
    assert F[0] == pytest.approx(1.0, abs=1e-8)
    xs, ys = p.xy(np.linspace(p.s_min, p.s_max, 50))
    assert np.ptp(xs * ys) <= 1e-8


@pytest.mark.parametrize("C", sorted(SWEEP_ANGLE))
def test_sweep_angle_frozen(C):
    p = prof.integrate_profile(C, "spherical")
    assert prof.sweep_angle(p) == pytest.approx(SWEEP_ANGLE[C], abs=1e-8)
    assert prof.sweep_angle_integral(C) == pytest.approx(SWEEP_ANGLE[C], abs=1e-12)


def test_sweep_angle_limits():
    assert prof.sweep_angle(prof.integrate_profile(1e-4, "spherical")) == pytest.approx(0.5 * math.pi, abs=1e-2)
    assert prof.sweep_angle(prof.integrate_profile(1 - 1e-6, "spherical")) == pytest.approx(math.pi / math.sqrt(2), abs=1e-2)


def test_sweep_angle_increasing():
    th = [prof.sweep_angle_integral(C) for C in np.linspace(0.05, 0.95, 12)]
    assert np.all(np.diff(th) > 0)
    assert prof.sweep_angle_integral(0.3) < prof.sweep_angle_integral(0.7)


def test_sweep_oracle_at_random_C():
    for C in (0.123, 0.456, 0.889):
        assert prof.sweep_angle_integral(C) == pytest.approx(sweep_oracle(C), abs=1e-12)


@pytest.mark.parametrize("C, ambient", [(0.0, "hyperbolic"), (-1.0, "euclidean"), (1.0, "spherical"),
                                        (1.5, "spherical"), (1.0, "elliptic")])
def test_domain_errors(C, ambient):
    with pytest.raises(DomainError):
        prof.integrate_profile(C, ambient)


def test_sweep_angle_needs_spherical():
    with pytest.raises(DomainError):
        prof.sweep_angle(prof.integrate_profile(1.0))


def test_boundary_half_angle_limits():
    assert prof.boundary_half_angle(1e-8) == pytest.approx(math.pi / 4, abs=1e-3)
    assert prof.boundary_half_angle(1e4) < 0.05


def test_columns():
    cols = prof.integrate_profile(1.0).columns()
    assert set(cols) == {"s", "r", "alpha", "psi", "xi0"}
