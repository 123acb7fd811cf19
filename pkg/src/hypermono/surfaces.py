"""Catalog of minimal surfaces with product charts, and slicing by the
level sets of a coordinate function.

Every chart is a rectangle ``u in u_range``, ``v in [0, 2*pi)`` with an
orthogonal induced metric ``E(u) du**2 + G(u) dv**2`` whose coefficients
do not depend on v. Most catalog embeddings are affine in
``(cos v, sin v)`` at fixed u (``v_linear``); then any coordinate
function restricted to a u-line is a sinusoid ``A + R cos(v - v0)`` and
the v-integrals over sublevel sets are done in closed form.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from . import profile as prof
from .errors import DomainError
from .models import CoordFn, ball_to_hyperboloid, minkowski_dot
from .quadrature import fixed_gl, gauss_legendre, integrate
from .weights import Weight, boundary_term, is_critical, level_integral

TWO_PI = 2.0 * math.pi

DISC = "geodesic_disc"
SUBSPHERE = "great_subsphere"
CLIFFORD = "clifford_torus"
VERONESE = "veronese"
MC_ANNULUS = "mc_annulus"
CONE = "geodesic_cone"
TUBE_EXTENSION = "tube_extension"


@dataclass(frozen=True, eq=False)
class Surface:
    kind: str
    ambient: str
    n: int
    u_range: tuple[float, float]
    embed: Callable
    metric: Callable
    k: int = 2
    closed: bool = False
    v_linear: bool = True
    boundary_us: tuple = ()
    ideal_boundary: tuple = ()
    params: dict = field(default_factory=dict)
    u_bound_fn: Callable | None = None
    base: "Surface | None" = None
    coord: CoordFn | None = None

    def area_element(self, u) -> np.ndarray:
        e, g = self.metric(np.asarray(u, dtype=float))
        return np.sqrt(e * g)

    def h(self, f: CoordFn, u, v) -> np.ndarray:
        return f.value(self.embed(u, v))

    def sample_range(self) -> tuple[float, float]:
        lo, hi = self.u_range
        if math.isinf(hi):
            hi = lo + 6.0
        return lo, hi

    def u_bounds(self, f: CoordFn, t: float) -> tuple[float, float]:
        """Finite u-interval containing the part of the chart where h <= t."""
        if self.u_bound_fn is not None:
            return self.u_bound_fn(f, t)
        lo, hi = self.u_range
        if math.isinf(hi):
            raise DomainError("unbounded chart without a sublevel bound")
        return lo, hi

    @property
    def complete(self) -> bool:
        return bool(self.ideal_boundary)


def _check_pair(s: Surface, f: CoordFn) -> None:
    if s.ambient != f.ambient:
        raise TypeError("surface and coordinate live in different ambient spaces")
    if s.n != f.n:
        raise TypeError("surface and coordinate have different ambient dimensions")


# catalog

def _sinh_bound(a_coef: float, b_coef: float, t: float) -> float:
    # A cosh s - B sinh s <= t forces (A - B) cosh s <= t
    if not a_coef > b_coef + 1e-15:
        raise DomainError("sublevel sets of this coordinate are unbounded on the surface")
    return math.acosh(max(1.0, t / (a_coef - b_coef))) + 1e-9


def geodesic_disc(foot=None, ea=None, eb=None, radius: float = math.inf, n: int = 3) -> Surface:
    """Totally geodesic disc through ``foot`` spanned by tangent vectors ``ea``, ``eb``.

    The chart is geodesic polar coordinates (s, v) about the foot point.
    A finite ``radius`` caps the disc.
    """
    if n < 3:
        raise DomainError("a disc needs ambient dimension at least 3")
    if foot is None:
        foot = np.eye(n + 1)[0]
    foot = np.asarray(getattr(foot, "xi", foot), dtype=float)
    if ea is None:
        ea = np.eye(n + 1)[n - 1]
    if eb is None:
        eb = np.eye(n + 1)[n]
    ea = np.asarray(ea, dtype=float)
    eb = np.asarray(eb, dtype=float)
    gram = [[float(minkowski_dot(p, q)) for q in (foot, ea, eb)] for p in (foot, ea, eb)]
    if not np.allclose(gram, np.diag([-1.0, 1.0, 1.0]), atol=1e-12):
        raise DomainError("disc frame must be Minkowski-orthonormal with a timelike foot")
    if not radius > 0:
        raise DomainError("disc radius must be positive")

    def embed(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        ch, sh = np.cosh(u)[..., None], np.sinh(u)[..., None]
        return ch * foot + sh * (np.cos(v)[..., None] * ea + np.sin(v)[..., None] * eb)

    def metric(u):
        return np.ones_like(u), np.sinh(u) ** 2

    def u_bound(f: CoordFn, t: float):
        a_coef = float(f.linear(foot))
        b_coef = math.hypot(float(f.linear(ea)), float(f.linear(eb)))
        return 0.0, min(radius, _sinh_bound(a_coef, b_coef, t))

    ideal = ()
    if math.isinf(radius):
        def circle(v):
            v = np.asarray(v, dtype=float)[..., None]
            null = foot + np.cos(v) * ea + np.sin(v) * eb
            return null[..., 1:] / null[..., :1]
        ideal = (circle,)
    return Surface(DISC, "H", n, (0.0, float(radius)), embed, metric,
                   boundary_us=() if math.isinf(radius) else (float(radius),),
                   ideal_boundary=ideal, params={"foot": foot, "ea": ea, "eb": eb, "radius": radius},
                   u_bound_fn=u_bound)


def disc_at_distance(d: float, n: int = 3, radius: float = math.inf) -> Surface:
    """Totally geodesic disc orthogonal to the first axis at distance ``d`` from the origin."""
    foot = np.zeros(n + 1)
    foot[0], foot[1] = math.cosh(d), math.sinh(d)
    return geodesic_disc(foot, np.eye(n + 1)[2], np.eye(n + 1)[3], radius, n)


def great_subsphere(n: int = 3, radius: float = math.pi) -> Surface:
    """Totally geodesic 2-sphere {x_3 = ... = x_n = 0}, or a cap of it about (0, 0, 1, 0...)."""
    if n < 2:
        raise DomainError("need n >= 2")
    if not 0 < radius <= math.pi:
        raise DomainError("cap radius must lie in (0, pi]")

    def embed(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        out = np.zeros(u.shape + (n + 1,))
        out[..., 0] = np.sin(u) * np.cos(v)
        out[..., 1] = np.sin(u) * np.sin(v)
        out[..., 2] = np.cos(u)
        return out

    def metric(u):
        return np.ones_like(u), np.sin(u) ** 2

    closed = radius == math.pi
    return Surface(SUBSPHERE, "S", n, (0.0, float(radius)), embed, metric, closed=closed,
                   boundary_us=() if closed else (float(radius),), params={"radius": radius})


def clifford_torus() -> Surface:
    """The flat torus |z| = |w| = 1/sqrt(2) in S^3."""
    c = 1.0 / math.sqrt(2.0)

    def embed(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        return c * np.stack([np.cos(u), np.sin(u), np.cos(v), np.sin(v)], axis=-1)

    def metric(u):
        half = np.full_like(u, 0.5)
        return half, half

    return Surface(CLIFFORD, "S", 3, (0.0, TWO_PI), embed, metric, closed=True)


def veronese_map(p) -> np.ndarray:
    """Veronese embedding of the unit 2-sphere into S^4 (constant on antipodal pairs)."""
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    r3 = math.sqrt(3.0)
    return np.stack([r3 * x * y, r3 * y * z, r3 * z * x,
                     0.5 * r3 * (x * x - y * y), 0.5 * (x * x + y * y - 2.0 * z * z)], axis=-1)


def veronese() -> Surface:
    """Veronese surface, charted by polar coordinates on the upper hemisphere."""

    def embed(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        p = np.stack([np.sin(u) * np.cos(v), np.sin(u) * np.sin(v), np.cos(u)], axis=-1)
        return veronese_map(p)

    def metric(u):
        return np.full_like(u, 3.0), 3.0 * np.sin(u) ** 2

    return Surface(VERONESE, "S", 4, (0.0, 0.5 * math.pi), embed, metric, closed=True, v_linear=False)


def hopf_circle(beta: float) -> Callable:
    """Orbit of (cos beta, 0, sin beta, 0) under (z, w) -> (z e^{iv}, w e^{-iv})."""
    cb, sb = math.cos(beta), math.sin(beta)

    def circle(v):
        v = np.asarray(v, dtype=float)
        return np.stack([cb * np.cos(v), cb * np.sin(v), sb * np.cos(v), -sb * np.sin(v)], axis=-1)

    return circle


def mc_boundary(C: float) -> tuple[Callable, Callable]:
    """The two ideal boundary circles of the annulus with parameter C."""
    half = prof.boundary_half_angle(C)
    return hopf_circle(0.25 * math.pi - half), hopf_circle(0.25 * math.pi + half)


def mc_annulus(C: float, curve: prof.ProfileCurve | None = None) -> Surface:
    """Hopf-invariant minimal annulus in H^4 (Poincare ball) with parameter C.

    The chart is (Euclidean arclength along the profile) x (Hopf angle).
    """
    if curve is None:
        curve = prof.integrate_profile(C, prof.HYPERBOLIC)
    if curve.ambient != prof.HYPERBOLIC:
        raise DomainError("annulus needs a hyperbolic profile")

    def embed(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        r, a, _ = curve.state(u)
        x, y = r * np.cos(a), r * np.sin(a)
        cv, sv = np.cos(v), np.sin(v)
        q = np.stack([x * cv, x * sv, y * cv, -y * sv], axis=-1)
        return ball_to_hyperboloid(q)

    def metric(u):
        r, _, _ = curve.state(np.asarray(u, dtype=float))
        conf = 4.0 / (1.0 - r * r) ** 2
        return conf, conf * r * r

    return Surface(MC_ANNULUS, "H", 4, (curve.s_min, curve.s_max), embed, metric,
                   ideal_boundary=mc_boundary(C), params={"C": C, "profile": curve})


def geodesic_cone(beta: float, n: int = 3) -> Surface:
    """Geodesic cone from the origin over the circle of angular radius ``beta``
    about the last axis. The chart parameter u is the level of the time
    coordinate centred at the origin."""
    if n < 3:
        raise DomainError("need n >= 3")
    if not 0 < beta < math.pi:
        raise DomainError("beta must lie in (0, pi)")
    sb, cb = math.sin(beta), math.cos(beta)

    def embed(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        sh = np.sqrt(np.maximum(u * u - 1.0, 0.0))
        out = np.zeros(u.shape + (n + 1,))
        out[..., 0] = u
        out[..., n - 2] = sh * sb * np.cos(v)
        out[..., n - 1] = sh * sb * np.sin(v)
        out[..., n] = sh * cb
        return out

    def metric(u):
        w = u * u - 1.0
        with np.errstate(divide="ignore"):
            return 1.0 / w, w * sb * sb

    def u_bound(f: CoordFn, t: float):
        e = np.eye(n + 1)
        a_coef = float(f.linear(e[0]))
        b_coef = abs(cb * float(f.linear(e[n]))) + sb * math.hypot(float(f.linear(e[n - 2])), float(f.linear(e[n - 1])))
        return 1.0, math.cosh(_sinh_bound(a_coef, b_coef, t))

    def circle(v):
        v = np.asarray(v, dtype=float)
        out = np.zeros(v.shape + (n,))
        out[..., n - 3] = sb * np.cos(v)
        out[..., n - 2] = sb * np.sin(v)
        out[..., n - 1] = cb
        return out

    return Surface(CONE, "H", n, (1.0, math.inf), embed, metric, ideal_boundary=(circle,),
                   params={"beta": beta}, u_bound_fn=u_bound)


def tube_extension(base: Surface, f: CoordFn) -> Surface:
    """Base surface with the h-tube attached to each boundary circle, flowing up in h."""
    _check_pair(base, f)
    if not base.boundary_us:
        raise DomainError("tube extension needs a surface with boundary")
    return Surface(TUBE_EXTENSION, base.ambient, base.n, base.u_range, base.embed, base.metric,
                   base.k, False, base.v_linear, (), (), {"base_kind": base.kind}, base.u_bound_fn,
                   base=base, coord=f)


def cap(s: Surface, f: CoordFn, t: float) -> Surface:
    """Restrict a surface to the sublevel set {h <= t}, which must be one u-interval
    of a radially symmetric pair (surface, coordinate)."""
    _check_pair(s, f)
    if not is_radial(s, f):
        raise DomainError("capping needs a coordinate that is constant on the v-circles")
    lo, hi = s.u_bounds(f, t)
    hfun = _radial_h(s, f)
    hu = lambda u: float(hfun(np.array(u))) - t
    breaks = [lo] + _roots(lambda u: hfun(u) - t, lo, hi) + [hi]
    inside = [(a, b) for a, b in zip(breaks, breaks[1:]) if b > a and hu(0.5 * (a + b)) <= 0]
    if len(inside) != 1:
        raise DomainError("sublevel set is not a single band of the chart")
    a, b = inside[0]
    ends = tuple(x for x in (a, b) if abs(hu(x)) < 1e-9 * max(1.0, abs(t)))
    old = tuple(x for x in s.boundary_us if a <= x <= b)
    params = dict(s.params, cap_level=t)
    return replace(s, u_range=(a, b), boundary_us=tuple(sorted(set(ends + old))), ideal_boundary=(),
                   closed=False, params=params, u_bound_fn=None)


# chart utilities

def fd_metric(s: Surface, u, v, step: float = 1e-5) -> np.ndarray:
    """Induced metric matrix by central differences of the embedding."""
    xu = (s.embed(u + step, v) - s.embed(u - step, v)) / (2 * step)
    xv = (s.embed(u, v + step) - s.embed(u, v - step)) / (2 * step)
    if s.ambient == "H":
        dot = minkowski_dot
    else:
        dot = lambda a, b: np.sum(a * b, axis=-1)
    return np.stack([np.stack([dot(xu, xu), dot(xu, xv)], -1), np.stack([dot(xv, xu), dot(xv, xv)], -1)], -2)


def _deriv_step(u) -> np.ndarray:
    return 1e-6 * np.maximum(1.0, np.abs(u))


def h_derivs(s: Surface, f: CoordFn, u, v) -> tuple[np.ndarray, np.ndarray]:
    """Chart partial derivatives of h by central differences."""
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    du = _deriv_step(u)
    lo, hi = s.u_range
    up = np.minimum(u + du, hi) if math.isfinite(hi) else u + du
    dn = np.maximum(u - du, lo)
    hu = (s.h(f, up, v) - s.h(f, dn, v)) / (up - dn)
    dv = 1e-6
    hv = (s.h(f, u, v + dv) - s.h(f, u, v - dv)) / (2 * dv)
    return hu, hv


def _roots(fun, lo: float, hi: float, samples: int = 257) -> list[float]:
    """Sign changes of a vectorised function on a sampled interval, refined by brentq."""
    if not hi > lo:
        return []
    xs = np.linspace(lo, hi, samples)
    ys = np.asarray(fun(xs), dtype=float)
    scalar = lambda x: float(fun(np.array([x]))[0])
    out = [float(x) for x in xs[1:-1][ys[1:-1] == 0.0]]
    for i in np.flatnonzero(ys[:-1] * ys[1:] < 0):
        out.append(brentq(scalar, xs[i], xs[i + 1], xtol=1e-14, rtol=1e-15))
    return sorted(out)


def _sinusoid(s: Surface, f: CoordFn, u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coefficients (A, R, v0) with h(u, v) = A + R cos(v - v0) on v-linear charts."""
    vals = s.h(f, np.asarray(u)[..., None], np.array([0.0, 0.5 * math.pi, math.pi]))
    a = 0.5 * (vals[..., 0] + vals[..., 2])
    b1 = 0.5 * (vals[..., 0] - vals[..., 2])
    b2 = vals[..., 1] - a
    return a, np.hypot(b1, b2), np.arctan2(b2, b1)


def is_radial(s: Surface, f: CoordFn, tol: float = 1e-11) -> bool:
    """Whether h is constant on every v-circle of the chart (sampled)."""
    _check_pair(s, f)
    lo, hi = s.sample_range()
    u = np.linspace(lo, hi, 33)
    if s.v_linear:
        a, r, _ = _sinusoid(s, f, u)
        return bool(np.all(r <= tol * np.maximum(1.0, np.abs(a))))
    v = np.linspace(0.0, TWO_PI, 17)
    h = s.h(f, u[:, None], v[None, :])
    return bool(np.all(np.ptp(h, axis=1) <= tol * np.maximum(1.0, np.abs(h[:, 0]))))


def _radial_h(s: Surface, f: CoordFn):
    return lambda u: s.h(f, u, np.zeros_like(np.asarray(u, dtype=float)))


def _check_truncation(s: Surface, f: CoordFn, t: float) -> None:
    # complete surfaces are stored on a truncated chart; h must exceed t at the cut
    if not s.complete or math.isinf(s.u_range[1]):
        return
    v = np.linspace(0.0, TWO_PI, 64, endpoint=False)
    for u_end in s.u_range:
        if np.min(s.h(f, u_end, v)) <= t:
            raise DomainError(f"level {t} reaches the edge of the truncated chart")


# sublevel integrals

def _scaled(g, a: float, b: float, rtol: float, initial_panels: int = 1) -> float:
    """Adaptive integral with an absolute floor of rtol times a sampled
    estimate of the integral of |g|, so that signed integrands that cancel
    to zero do not force refinement to the depth limit."""
    x, w = gauss_legendre(16)
    nodes = 0.5 * (a + b) + 0.5 * (b - a) * x
    scale = 0.5 * (b - a) * float(np.abs(np.asarray(g(nodes), dtype=float)) @ w)
    return integrate(g, a, b, rtol=rtol, atol=rtol * scale, initial_panels=initial_panels)


def _radial_body(s, f, density, lo, hi, rtol):
    u0, u1 = s.u_bounds(f, hi)
    hfun = _radial_h(s, f)
    scalar = lambda x: float(hfun(np.array(x)))
    breaks = sorted(set([u0, u1] + _roots(lambda x: hfun(x) - lo, u0, u1) + _roots(lambda x: hfun(x) - hi, u0, u1)))
    total = []
    for a, b in zip(breaks, breaks[1:]):
        if b <= a:
            continue
        hm = scalar(0.5 * (a + b))
        if lo <= hm <= hi:
            g = lambda u: TWO_PI * s.area_element(u) * density(hfun(u))
            total.append(_scaled(g, a, b, rtol))
    return math.fsum(total)


def _arc_inner(a, r, density, lo, hi, constant: bool):
    """Integral over v in [0, 2 pi) of density(h) on {lo <= h <= hi},
    with h = a + r cos(v - v0)."""
    flat = r <= 1e-14 * np.maximum(1.0, np.abs(a))
    safe_r = np.where(flat, 1.0, r)
    phi_hi = np.arccos(np.clip((hi - a) / safe_r, -1.0, 1.0))
    phi_lo = np.arccos(np.clip((lo - a) / safe_r, -1.0, 1.0))
    width = np.maximum(phi_lo - phi_hi, 0.0)
    if constant:
        arcs = 2.0 * width * density(a)
    else:
        arcs = 2.0 * fixed_gl(lambda phi: density(a[..., None] + r[..., None] * np.cos(phi)),
                              phi_hi, phi_hi + width, order=24)
    inside = (a >= lo) & (a <= hi)
    full = TWO_PI * density(np.where(inside, a, lo))
    return np.where(flat, np.where(inside, full, 0.0), arcs)


def _sinusoid_body(s, f, density, lo, hi, rtol, constant):
    u0, u1 = s.u_bounds(f, hi)

    def inner(u):
        a, r, _ = _sinusoid(s, f, u)
        return s.area_element(u) * _arc_inner(a, r, density, lo, hi, constant)

    def edge(level, sign):
        def fn(x):
            a, r, _ = _sinusoid(s, f, x)
            return a + sign * r - level
        return fn

    cuts = []
    for level in (lo, hi):
        for sign in (1.0, -1.0):
            cuts += _roots(edge(level, sign), u0, u1)
    breaks = sorted(set([u0, u1] + cuts))
    parts = [_scaled(inner, a, b, rtol) for a, b in zip(breaks, breaks[1:]) if b > a]
    return math.fsum(parts)


def _generic_inner(s, f, density, lo, hi, u, nv: int = 96, chunk: int = 256):
    u = np.asarray(u, dtype=float)
    if u.size > chunk:
        return np.concatenate([_generic_inner(s, f, density, lo, hi, u[i:i + chunk], nv, chunk)
                               for i in range(0, u.size, chunk)])
    v = np.linspace(0.0, TWO_PI, nv + 1)
    U = np.broadcast_to(u[:, None], (u.size, nv + 1))
    H = s.h(f, U, v[None, :])
    va = np.broadcast_to(v[None, :-1], (u.size, nv))
    vb = np.broadcast_to(v[None, 1:], (u.size, nv))
    Ucell = U[:, :-1]
    cuts = []
    for level in (lo, hi):
        ga, gb = H[:, :-1] - level, H[:, 1:] - level
        change = ga * gb < 0
        left, right, gl = va.copy(), vb.copy(), ga.copy()
        for _ in range(55):
            mid = 0.5 * (left + right)
            gm = s.h(f, Ucell, mid) - level
            go_right = gm * gl > 0
            left = np.where(go_right, mid, left)
            gl = np.where(go_right, gm, gl)
            right = np.where(go_right, right, mid)
        cuts.append(np.where(change, 0.5 * (left + right), vb))
    pts = np.sort(np.stack([va, cuts[0], cuts[1], vb], axis=-1), axis=-1)
    pa, pb = pts[..., :-1], pts[..., 1:]
    hm = s.h(f, Ucell[..., None], 0.5 * (pa + pb))
    ind = (hm >= lo) & (hm <= hi)
    vals = fixed_gl(lambda vv: density(s.h(f, Ucell[..., None, None], vv)), pa, pb, order=6)
    return np.sum(np.where(ind, vals, 0.0), axis=(-1, -2))


def _generic_body(s, f, density, lo, hi, rtol):
    u0, u1 = s.u_bounds(f, hi)
    g = lambda u: s.area_element(u) * _generic_inner(s, f, density, lo, hi, u)
    return _scaled(g, u0, u1, rtol, initial_panels=8)


def sublevel_integral(s: Surface, f: CoordFn, density, lo: float, hi: float,
                      rtol: float = 1e-9, constant: bool = False) -> float:
    """Integral of density(h) over the part of the chart where lo <= h <= hi.

    ``constant`` declares that ``density`` is constant, which lets the
    v-integrals be taken as arc lengths.
    """
    _check_pair(s, f)
    if hi <= lo:
        return 0.0
    _check_truncation(s, f, hi)
    if is_radial(s, f):
        return _radial_body(s, f, density, lo, hi, rtol)
    if s.v_linear:
        return _sinusoid_body(s, f, density, lo, hi, rtol, constant)
    return _generic_body(s, f, density, lo, hi, rtol)


@dataclass(frozen=True)
class BoundarySlice:
    length_g: float
    length: float
    parallel: float
    flux: float
    regular: bool


def boundary_slice(s: Surface, f: CoordFn, t: float, nv: int = 256) -> BoundarySlice:
    """Length of the level curve {h = t} in the normalised metric g/V(t) and its
    parallel volume, the integral of cos(angle(grad h, T Sigma)) over it.

    ``flux`` is the integral of |grad^Sigma h| against the induced length.
    """
    _check_pair(s, f)
    if s.kind == TUBE_EXTENSION:
        raise DomainError("level curves of tube extensions are not supported")
    if s.k != 2:
        raise DomainError("boundary slices are implemented for surfaces")
    vt = float(f.V(t))
    if vt <= 0:
        raise DomainError("level is critical for this coordinate")
    _check_truncation(s, f, t)
    regular = True
    if is_radial(s, f):
        u0, u1 = s.u_bounds(f, t)
        hfun = _radial_h(s, f)
        roots = _roots(lambda x: hfun(x) - t, u0, u1)
        length_g = flux = 0.0
        for ur in roots:
            e, g = s.metric(np.array(ur))
            hu, _ = h_derivs(s, f, ur, 0.0)
            if abs(float(hu)) < 1e-9:
                regular = False
            length_g += TWO_PI * math.sqrt(float(g))
            flux += TWO_PI * math.sqrt(float(g)) * abs(float(hu)) / math.sqrt(float(e))
    else:
        v = np.linspace(0.0, TWO_PI, nv, endpoint=False)
        u0, u1 = s.u_bounds(f, t)
        us = np.linspace(u0, u1, 401)
        H = s.h(f, us[:, None], v[None, :]) - t
        length_g = flux = 0.0
        for j in range(nv):
            col = H[:, j]
            for i in np.flatnonzero(col[:-1] * col[1:] < 0):
                ur = brentq(lambda x: float(s.h(f, x, v[j])) - t, us[i], us[i + 1], xtol=1e-14)
                e, g = (float(x) for x in s.metric(np.array(ur)))
                hu, hv = (float(x) for x in h_derivs(s, f, ur, v[j]))
                if abs(hu) < 1e-9:
                    regular = False
                    continue
                length_g += math.sqrt(e * hv * hv / (hu * hu) + g)
                flux += (g * hu * hu + e * hv * hv) / (math.sqrt(e * g) * abs(hu))
        length_g *= TWO_PI / nv
        flux *= TWO_PI / nv
    if not regular:
        warnings.warn(f"level {t} is tangent to the surface somewhere; value is not regular", RuntimeWarning)
    return BoundarySlice(length_g, length_g / math.sqrt(vt), flux / vt, flux, regular)


def _tube_part(ext: Surface, f: CoordFn, w: Weight, t: float, nv: int = 256) -> float:
    base = ext.base
    g_f = ext.coord
    if g_f is not f:
        if not (g_f.kind == f.kind and np.allclose(g_f.vector, f.vector)):
            raise DomainError("tube extensions are sliced by the coordinate that built them")
    v = np.linspace(0.0, TWO_PI, nv, endpoint=False)
    total = []
    for ub in base.boundary_us:
        hb = base.h(f, ub, v)
        _, hv = h_derivs(base, f, np.full_like(v, ub), v)
        e, g = base.metric(np.array(ub))
        vb = f.V(hb)
        jac = np.sqrt(np.maximum(float(g) - hv * hv / vb, 0.0) / vb)
        start = np.maximum(hb, w.h0)
        dens = lambda h: w.P(f, h)
        if np.ptp(hb) <= 1e-12 * max(1.0, abs(float(hb[0]))):
            inner = np.full_like(v, level_integral(dens, f, ext.k, float(start[0]), max(t, float(start[0]))))
        else:
            inner = np.array([level_integral(dens, f, ext.k, a, max(t, a)) for a in start])
        total.append(TWO_PI * float(np.mean(jac * inner)))
    return math.fsum(total)


def slice_volume(s: Surface, f: CoordFn, w: Weight, t: float, rtol: float = 1e-9) -> float:
    """Weighted volume of the part of the surface with h0 <= h <= t plus the
    boundary term (c/k) |gamma_0^{T Sigma}| V(h0)^{k/2}."""
    _check_pair(s, f)
    if t < w.h0:
        raise DomainError(f"t = {t} lies below the starting level {w.h0}")
    body_surface = s.base if s.kind == TUBE_EXTENSION else s
    constant = w.kind == "uniform"
    density = lambda h: w.P(f, h)
    body = sublevel_integral(body_surface, f, density, w.h0, t, rtol, constant)
    bterm = 0.0
    if w.c > 0 and not is_critical(f, w.h0) and boundary_term(w, f, s.k) > 0:
        bterm = w.c / s.k * _level_flux(body_surface, f, w.h0)
    if s.kind == TUBE_EXTENSION:
        body += _tube_part(s, f, w, t)
    return body + bterm


def _level_flux(s: Surface, f: CoordFn, h0: float) -> float:
    # an empty or degenerate level contributes nothing
    lo, hi = s.u_bounds(f, h0)
    if s.v_linear:
        u = np.linspace(lo, hi, 257)
        a, r, _ = _sinusoid(s, f, u)
        if np.all(a - r >= h0) or np.all(a + r <= h0):
            return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        return boundary_slice(s, f, h0).flux


def integrate_over(s: Surface, F=None, rtol: float = 1e-11, nv: int = 256) -> np.ndarray | float:
    """Integral of F(points) over the chart (area when F is None).

    The v-direction uses the periodic trapezoid rule.
    """
    lo, hi = s.u_range
    if math.isinf(hi):
        raise DomainError("cannot integrate over an unbounded chart")
    v = np.linspace(0.0, TWO_PI, nv, endpoint=False)
    if F is None:
        return TWO_PI * integrate(s.area_element, lo, hi, rtol=rtol, initial_panels=4)
    sample = np.asarray(F(s.embed(np.array([[lo + 0.5 * (hi - lo)]]), v[None, :1])), dtype=float)
    comps = sample.shape[2:] if sample.ndim > 2 else ()
    size = int(np.prod(comps)) if comps else 1
    out = []
    for c in range(size):
        def g(u, c=c):
            vals = np.asarray(F(s.embed(u[:, None], v[None, :])), dtype=float)
            vals = vals.reshape(u.size, nv, size)[..., c]
            return s.area_element(u) * vals.mean(axis=1) * TWO_PI
        out.append(integrate(g, lo, hi, rtol=rtol, atol=1e-14, initial_panels=4))
    return np.array(out).reshape(comps) if comps else out[0]


def make_surface(kind: str, **params) -> Surface:
    """Build a catalog surface by name."""
    builders = {
        DISC: geodesic_disc,
        "disc": disc_at_distance,
        SUBSPHERE: great_subsphere,
        "sphere": great_subsphere,
        CLIFFORD: clifford_torus,
        "clifford": clifford_torus,
        VERONESE: veronese,
        MC_ANNULUS: mc_annulus,
        "mc": mc_annulus,
        CONE: geodesic_cone,
        "cone": geodesic_cone,
    }
    if kind not in builders:
        raise DomainError(f"unknown surface kind {kind!r}")
    try:
        return builders[kind](**params)
    except TypeError as exc:
        raise DomainError(f"invalid parameters for {kind}: {exc}") from None
