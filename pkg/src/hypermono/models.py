"""Points of hyperbolic space and the sphere, model conversions and
coordinate functions with their warp data.

Hyperbolic points live on the hyperboloid
``{xi : -xi_0**2 + xi_1**2 + ... + xi_n**2 = -1, xi_0 > 0}`` in Minkowski
space R^{n,1}. The Poincare ball and the upper half-space are views.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

_TOL = 1e-12


def minkowski_dot(u, v) -> np.ndarray:
    """Minkowski pairing along the last axis, signature (-, +, ..., +)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return -u[..., 0] * v[..., 0] + np.sum(u[..., 1:] * v[..., 1:], axis=-1)


def _check_dim(n: int) -> None:
    if not 2 <= n <= 4:
        raise DomainError(f"ambient dimension {n} not supported")


@dataclass(frozen=True, eq=False)
class HPoint:
    """A point of H^n in hyperboloid coordinates."""

    xi: np.ndarray

    def __post_init__(self):
        xi = np.array(self.xi, dtype=float)
        if xi.ndim != 1 or xi.size < 2:
            raise DomainError("hyperboloid point needs a vector of length n+1")
        _check_dim(xi.size - 1)
        q = -float(minkowski_dot(xi, xi))
        if xi[0] <= 0 or abs(q - 1.0) > _TOL * max(1.0, xi[0] ** 2):
            raise DomainError(f"not on the upper hyperboloid: <xi,xi> = {-q!r}")
        xi.setflags(write=False)
        object.__setattr__(self, "xi", xi)

    @property
    def n(self) -> int:
        return self.xi.size - 1

    @classmethod
    def origin(cls, n: int) -> "HPoint":
        _check_dim(n)
        xi = np.zeros(n + 1)
        xi[0] = 1.0
        return cls(xi)

    @classmethod
    def from_spatial(cls, spatial) -> "HPoint":
        """Point with the given spatial part; xi_0 is solved for."""
        s = np.asarray(spatial, dtype=float)
        return cls(np.concatenate([[math.sqrt(1.0 + float(s @ s))], s]))

    @classmethod
    def from_ball(cls, p) -> "HPoint":
        return cls(ball_to_hyperboloid(p))

    def to_ball(self) -> np.ndarray:
        return hyperboloid_to_ball(self.xi)


@dataclass(frozen=True, eq=False)
class SPoint:
    """A point of the unit sphere S^n in R^{n+1}."""

    x: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float)
        if x.ndim != 1 or x.size < 2:
            raise DomainError("sphere point needs a vector of length n+1")
        _check_dim(x.size - 1)
        if abs(float(x @ x) - 1.0) > _TOL:
            raise DomainError("not a unit vector")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return self.x.size - 1

    @classmethod
    def normalized(cls, v) -> "SPoint":
        v = np.asarray(v, dtype=float)
        return cls(v / np.linalg.norm(v))

    def antipode(self) -> "SPoint":
        return SPoint(-self.x)


def ball_to_hyperboloid(p) -> np.ndarray:
    """Map points of the open unit ball (last axis) to the hyperboloid."""
    p = np.asarray(p, dtype=float)
    r2 = np.sum(p * p, axis=-1)
    if np.any(r2 >= 1.0):
        raise DomainError("point not inside the open unit ball")
    den = 1.0 - r2
    xi0 = (1.0 + r2) / den
    return np.concatenate([xi0[..., None], 2.0 * p / den[..., None]], axis=-1)


def hyperboloid_to_ball(xi) -> np.ndarray:
    xi = np.asarray(xi, dtype=float)
    return xi[..., 1:] / (1.0 + xi[..., :1])


def _frame(b: np.ndarray) -> np.ndarray:
    """Orthogonal matrix whose last row is the unit vector ``b``."""
    n = b.size
    if np.allclose(b, np.eye(n)[-1], rtol=0, atol=1e-15):
        return np.eye(n)
    m = np.eye(n)
    m[:, [0, n - 1]] = m[:, [n - 1, 0]]
    m[:, 0] = b
    q, _ = np.linalg.qr(m)
    if q[:, 0] @ b < 0:
        q = -q
    return np.roll(q, -1, axis=1).T


def to_halfspace(xi, b=None) -> tuple[np.ndarray, np.ndarray]:
    """Half-space coordinates ``(y, x)`` with the ideal point ``b`` at infinity.

    ``x = 1 / (xi_0 - b . xi_vec)`` is the height, ``y`` the horizontal part.
    """
    xi = np.asarray(xi, dtype=float)
    n = xi.shape[-1] - 1
    if b is None:
        b = np.zeros(n)
        b[-1] = 1.0
    b = np.asarray(b, dtype=float)
    rot = _frame(b)
    spatial = xi[..., 1:] @ rot.T
    x = 1.0 / (xi[..., 0] - spatial[..., -1])
    y = spatial[..., :-1] * x[..., None]
    return y, x


def halfspace_to_hyperboloid(y, x, b=None) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("half-space height must be positive")
    n = y.shape[-1] + 1
    if b is None:
        b = np.zeros(n)
        b[-1] = 1.0
    rot = _frame(np.asarray(b, dtype=float))
    y2 = np.sum(y * y, axis=-1)
    xi0 = (1.0 + y2 + x * x) / (2.0 * x)
    last = (x * x + y2 - 1.0) / (2.0 * x)
    spatial = np.concatenate([y / x[..., None], last[..., None]], axis=-1)
    return np.concatenate([xi0[..., None], spatial @ rot], axis=-1)


def boost(to: HPoint) -> np.ndarray:
    """Lorentz transformation taking the hyperboloid origin to ``to``.

    It acts on column vectors and fixes the directions orthogonal to
    the spatial part of ``to``.
    """
    g = to.xi[0]
    u = to.xi[1:]
    n = u.size
    m = np.empty((n + 1, n + 1))
    m[0, 0] = g
    m[0, 1:] = u
    m[1:, 0] = u
    m[1:, 1:] = np.eye(n) + np.outer(u, u) / (1.0 + g)
    return m


def distance(p, q) -> float:
    """Geodesic distance in H^n or S^n."""
    if isinstance(p, HPoint) and isinstance(q, HPoint):
        if p.n != q.n:
            raise TypeError("points live in different dimensions")
        c = -float(minkowski_dot(p.xi, q.xi))
        return math.acosh(max(c, 1.0))
    if isinstance(p, SPoint) and isinstance(q, SPoint):
        if p.n != q.n:
            raise TypeError("points live in different dimensions")
        c = float(p.x @ q.x)
        return math.acos(min(1.0, max(-1.0, c)))
    raise TypeError("distance needs two points of the same ambient space")


TIME = "time"
SPACE = "space"
NULL = "null"
SPHERE = "sphere"

_DELTA = {TIME: -1, SPACE: 1, NULL: 0}


@dataclass(frozen=True, eq=False)
class CoordFn:
    """A coordinate function h together with its warp data (U, V).

    Minkowskian kinds are ``h(p) = sign * <w, p>`` for a fixed vector
    ``w`` of R^{n,1}: ``sign = -1`` for the time and null kinds, ``+1``
    for the space kind. The sphere kind is ``h(x) = 1 - <x, pole>``.
    """

    kind: str
    vector: np.ndarray
    lam: float = 1.0
    label: str = field(default="")

    def __post_init__(self):
        v = np.array(self.vector, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "vector", v)
        if self.kind not in (TIME, SPACE, NULL, SPHERE):
            raise DomainError(f"unknown coordinate kind {self.kind!r}")
        if v.ndim != 1:
            raise DomainError("coordinate vector must be one-dimensional")
        _check_dim(v.size - 1)

    # constructors
    @classmethod
    def time(cls, center: HPoint | None = None, n: int = 3) -> "CoordFn":
        if center is None:
            center = HPoint.origin(n)
        return cls(TIME, center.xi)

    @classmethod
    def space(cls, normal) -> "CoordFn":
        m = np.asarray(normal, dtype=float)
        q = float(minkowski_dot(m, m))
        if abs(q - 1.0) > 1e-12 * max(1.0, float(m @ m)):
            raise DomainError("space coordinate needs a unit spacelike vector")
        return cls(SPACE, m)

    @classmethod
    def space_from_plane(cls, distance_from_origin: float, direction) -> "CoordFn":
        """Signed-distance coordinate of the hyperplane at the given
        distance from the origin, perpendicular to ``direction`` and
        positive on the side containing the origin."""
        d = float(distance_from_origin)
        nu = np.asarray(direction, dtype=float)
        nu = nu / np.linalg.norm(nu)
        m = np.concatenate([[-math.sinh(d)], -math.cosh(d) * nu])
        return cls.space(m)

    @classmethod
    def null(cls, b=None, lam: float = 1.0, n: int = 3) -> "CoordFn":
        if b is None:
            b = np.zeros(n)
            b[-1] = 1.0
        b = np.asarray(b, dtype=float)
        if abs(float(b @ b) - 1.0) > 1e-12:
            raise DomainError("ideal point must be a unit vector")
        if lam <= 0:
            raise DomainError("null scale must be positive")
        return cls(NULL, lam * np.concatenate([[1.0], b]), lam=lam)

    @classmethod
    def sphere_height(cls, pole: SPoint) -> "CoordFn":
        return cls(SPHERE, pole.x)

    # metadata
    @property
    def ambient(self) -> str:
        return "S" if self.kind == SPHERE else "H"

    @property
    def n(self) -> int:
        return self.vector.size - 1

    @property
    def delta(self) -> int | None:
        return _DELTA.get(self.kind)

    @property
    def ideal_point(self) -> np.ndarray:
        if self.kind != NULL:
            raise DomainError("only null coordinates have an ideal point")
        return self.vector[1:] / self.vector[0]

    @property
    def range(self) -> tuple[float, float]:
        """Closed range of values taken on the ambient space."""
        if self.kind == TIME:
            return (1.0, math.inf)
        if self.kind == SPACE:
            return (-math.inf, math.inf)
        if self.kind == NULL:
            return (0.0, math.inf)
        return (0.0, 2.0)

    # evaluation
    def linear(self, vec) -> np.ndarray:
        """Linear part of h applied to ambient vectors (last axis)."""
        vec = np.asarray(vec, dtype=float)
        if self.kind == SPHERE:
            return -(vec @ self.vector)
        if self.kind == SPACE:
            return minkowski_dot(self.vector, vec)
        return -minkowski_dot(self.vector, vec)

    def value(self, points) -> np.ndarray:
        """Evaluate h on an array of ambient points (last axis)."""
        if self.kind == SPHERE:
            return 1.0 + self.linear(points)
        return self.linear(points)

    def U(self, h):
        h = np.asarray(h, dtype=float)
        return 1.0 - h if self.kind == SPHERE else h

    def V(self, h):
        h = np.asarray(h, dtype=float)
        if self.kind == TIME:
            return h * h - 1.0
        if self.kind == SPACE:
            return h * h + 1.0
        if self.kind == NULL:
            return h * h
        return 2.0 * h - h * h

    def boundary_factor(self, theta) -> np.ndarray:
        """Limit of h / xi_0 at ideal points ``theta`` of S^{n-1}."""
        if self.kind == SPHERE:
            raise DomainError("sphere coordinates have no ideal boundary")
        theta = np.asarray(theta, dtype=float)
        ideal = np.concatenate([np.ones(theta.shape[:-1] + (1,)), theta], axis=-1)
        return self.linear(ideal)

    def describe(self) -> dict:
        return {"kind": self.kind, "vector": [float(x) for x in self.vector], "lam": self.lam}


def coord_value(f: CoordFn, p) -> float:
    """Value of the coordinate function at a single point."""
    if isinstance(p, HPoint):
        if f.ambient != "H":
            raise TypeError("sphere coordinate evaluated at a hyperbolic point")
        if p.n != f.n:
            raise TypeError("dimension mismatch")
        return float(f.value(p.xi))
    if isinstance(p, SPoint):
        if f.ambient != "S":
            raise TypeError("hyperbolic coordinate evaluated at a sphere point")
        if p.n != f.n:
            raise TypeError("dimension mismatch")
        return float(f.value(p.x))
    raise TypeError("expected an HPoint or an SPoint")


def warp_data(f: CoordFn, h: float) -> tuple[float, float]:
    """The pair (U(h), V(h)); U is half the derivative of V."""
    lo, hi = f.range
    if not (lo - 1e-14 <= h <= hi + 1e-14):
        raise DomainError(f"h = {h} outside the range [{lo}, {hi}] of a {f.kind} coordinate")
    return float(f.U(h)), float(f.V(h))
