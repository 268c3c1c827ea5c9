"""Superposition rules: Riccati from linear systems, Burgers from heat flow."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ConfigError, DomainError, SingularityError

POLE = math.inf
POLE_THRESHOLD = 1e-300


def is_pole(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


# ----------------------------------------------------------------------------
# Riccati equation from a linear 2x2 system


@dataclass(frozen=True)
class LinearSystem2:
    A: Callable[[float], np.ndarray]

    @classmethod
    def constant(cls, A) -> "LinearSystem2":
        M = np.array(A, dtype=float)
        return cls(lambda t: M)

    def field(self, t, x):
        """A(t) x; a stack of matrices acts on a matching batch of vectors."""
        return np.einsum("...ij,...j->...i", np.asarray(self.A(t)), np.asarray(x))


@dataclass(frozen=True)
class RiccatiCoeffs:
    b0: Callable[[float], float]
    b1: Callable[[float], float]
    b2: Callable[[float], float]

    def at(self, t):
        return self.b0(t), self.b1(t), self.b2(t)

    def rhs(self, t, xi):
        b0, b1, b2 = self.at(t)
        return b0 + b1 * xi + b2 * xi * xi


def riccati_from_linear(sys: LinearSystem2) -> RiccatiCoeffs:
    """xi = x1/x2 obeys xi' = b0 + b1 xi + b2 xi^2 with
    b0 = a12, b1 = a11 - a22, b2 = -a21."""
    A = sys.A
    return RiccatiCoeffs(
        lambda t: np.asarray(A(t))[..., 0, 1],
        lambda t: np.asarray(A(t))[..., 0, 0] - np.asarray(A(t))[..., 1, 1],
        lambda t: -np.asarray(A(t))[..., 1, 0],
    )


def ratio_project(x) -> float:
    x1, x2 = float(x[0]), float(x[1])
    if abs(x2) < POLE_THRESHOLD:
        return POLE
    return x1 / x2


def chordal_distance(a: float, b: float) -> float:
    """Distance on the projective line, finite at the pole."""
    if is_pole(a) and is_pole(b):
        return 0.0
    if is_pole(a):
        return 1.0 / math.sqrt(1.0 + b * b)
    if is_pole(b):
        return 1.0 / math.sqrt(1.0 + a * a)
    return abs(a - b) / math.sqrt((1.0 + a * a) * (1.0 + b * b))


def cross_ratio(x: float, x1: float, x2: float, x3: float) -> float:
    """K = (x - x1)(x2 - x3) / ((x - x2)(x1 - x3))."""
    den = (x - x2) * (x1 - x3)
    if den == 0:
        raise SingularityError("degenerate cross-ratio configuration")
    return (x - x1) * (x2 - x3) / den


def _homogeneous(x: float) -> np.ndarray:
    if is_pole(x):
        return np.array([1.0, 0.0])
    if abs(x) > 1.0:
        return np.array([1.0, 1.0 / x])
    return np.array([x, 1.0])


def projective_cross_ratio(x: float, x1: float, x2: float, x3: float) -> float:
    """cross_ratio evaluated in homogeneous coordinates, finite through poles."""
    h = [_homogeneous(v) for v in (x, x1, x2, x3)]
    det = lambda a, b: a[0] * b[1] - a[1] * b[0]
    den = det(h[0], h[2]) * det(h[1], h[3])
    if den == 0:
        raise SingularityError("degenerate cross-ratio configuration")
    return det(h[0], h[1]) * det(h[2], h[3]) / den


def riccati_superpose(K: float, x1: float, x2: float, x3: float) -> float:
    """The unique x with cross_ratio(x, x1, x2, x3) = K."""
    a = x2 - x3
    b = K * (x1 - x3)
    den = a - b
    if den == 0 or a == 0:
        raise SingularityError("degenerate superposition configuration")
    return (x1 * a - b * x2) / den


def integrate_riccati(coeffs: RiccatiCoeffs, xi0, t0: float, t1: float, dt: float,
                      switch: float = 1.0):
    """RK4 on the projective line.

    Integrates xi while |xi| <= switch and eta = 1/xi otherwise, with
    eta' = -(b2 + b1 eta + b0 eta^2). Returns (times, values) where values
    are xi in the affine chart, POLE where eta = 0 exactly. ``xi0`` may be an
    array, in which case the coefficients may return matching arrays.
    """
    if not dt > 0 or not t1 > t0:
        raise DomainError("need dt > 0 and t1 > t0")
    n = max(1, int(round((t1 - t0) / dt)))
    h = (t1 - t0) / n
    scalar = np.ndim(xi0) == 0
    xi = np.atleast_1d(np.asarray(xi0, dtype=float))
    eta_chart = np.isinf(xi) | (np.abs(xi) > switch)
    with np.errstate(divide="ignore"):
        v = np.where(eta_chart, np.where(np.isinf(xi), 0.0, 1.0 / xi), xi)

    def f(t, v):
        b0, b1, b2 = coeffs.at(t)
        return np.where(eta_chart, -(b2 + b1 * v + b0 * v * v), b0 + b1 * v + b2 * v * v)

    def to_xi(v):
        with np.errstate(divide="ignore"):
            return np.where(eta_chart, np.where(v == 0, POLE, 1.0 / np.where(v == 0, 1.0, v)), v)

    times = t0 + h * np.arange(n + 1)
    vals = np.empty((n + 1, xi.size))
    vals[0] = to_xi(v)
    for i in range(n):
        t = t0 + i * h
        k1 = f(t, v)
        k2 = f(t + 0.5 * h, v + 0.5 * h * k1)
        k3 = f(t + 0.5 * h, v + 0.5 * h * k2)
        k4 = f(t + h, v + h * k3)
        v = v + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
        flip = np.abs(v) > switch
        if np.any(flip):
            v = np.where(flip, 1.0 / np.where(flip, v, 1.0), v)
            eta_chart = eta_chart ^ flip
        vals[i + 1] = to_xi(v)
    times[-1] = t1
    return times, (vals[:, 0] if scalar else vals)


def chordal_distance_vec(x, xi) -> np.ndarray:
    """Chordal distance between homogeneous points x (..., 2) and affine values xi."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    pole = np.isinf(xi)
    xs = np.where(pole, 0.0, xi)
    num = np.where(pole, np.abs(x[..., 1]), np.abs(x[..., 0] - xs * x[..., 1]))
    den = np.where(pole, 1.0, np.sqrt(1.0 + xs * xs)) * np.linalg.norm(x, axis=-1)
    return num / den


# ----------------------------------------------------------------------------
# heat equation, Cole-Hopf and the Burgers variant


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or len(vals) < 3:
            raise DomainError("grid needs at least 3 points")
        if not self.x_max > self.x_min:
            raise DomainError("x_max must exceed x_min")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, f: Callable, x_min: float, x_max: float, n: int) -> "Grid1D":
        x = np.linspace(x_min, x_max, n)
        return cls(x_min, x_max, f(x))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)

    def with_values(self, values) -> "Grid1D":
        return Grid1D(self.x_min, self.x_max, values)

    def same_grid(self, other: "Grid1D") -> bool:
        return self.n == other.n and self.x_min == other.x_min and self.x_max == other.x_max


def _require_same(a: Grid1D, b: Grid1D):
    if not a.same_grid(b):
        raise DomainError("grid mismatch")


def heat_kernel(x, t, k):
    """Fundamental solution of u_t = (k/2) u_xx."""
    x = np.asarray(x, dtype=float)
    return np.exp(-x * x / (2.0 * k * t)) / np.sqrt(2.0 * np.pi * k * t)


def heat_evolve(u0: Grid1D, k: float, dt: float, steps: int) -> Grid1D:
    """Explicit scheme for u_t = (k/2) u_xx with fixed boundary values."""
    if not k > 0:
        raise ConfigError("diffusion constant must be positive")
    if dt > u0.dx**2 / k:
        raise ConfigError(f"unstable step: dt={dt} exceeds dx^2/k={u0.dx**2 / k}")
    u = u0.values.copy()
    c = 0.5 * k * dt / u0.dx**2
    for _ in range(int(steps)):
        u[1:-1] = u[1:-1] + c * (u[2:] - 2.0 * u[1:-1] + u[:-2])
    return u0.with_values(u)


def cole_hopf(u: Grid1D, k: float) -> Grid1D:
    """w = -k log u."""
    if np.any(u.values <= 0):
        raise DomainError("Cole-Hopf needs u > 0")
    return u.with_values(-k * np.log(u.values))


def inverse_cole_hopf(w: Grid1D, k: float) -> Grid1D:
    return w.with_values(np.exp(-w.values / k))


def burgers_residual(w_t0: Grid1D, w_t1: Grid1D, k: float, dt: float) -> float:
    """Max-norm of w_t + (1/2) w_x^2 - (k/2) w_xx on interior points.

    Forward difference in time, central differences in space at t0.
    """
    _require_same(w_t0, w_t1)
    w = w_t0.values
    h = w_t0.dx
    wt = (w_t1.values[1:-1] - w[1:-1]) / dt
    wx = (w[2:] - w[:-2]) / (2.0 * h)
    wxx = (w[2:] - 2.0 * w[1:-1] + w[:-2]) / (h * h)
    return float(np.max(np.abs(wt + 0.5 * wx * wx - 0.5 * k * wxx)))


def burgers_superpose(w1: Grid1D, w2: Grid1D, l1: float, l2: float, k: float) -> Grid1D:
    """w = -k log(exp(-(w1 + l1)/k) + exp(-(w2 + l2)/k)), overflow safe."""
    _require_same(w1, w2)
    if not k > 0:
        raise DomainError("k must be positive")
    a = (w1.values + l1) / k
    b = (w2.values + l2) / k
    m = np.minimum(a, b)
    return w1.with_values(k * (m - np.log(np.exp(m - a) + np.exp(m - b))))
