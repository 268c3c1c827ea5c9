"""Classical reductions of free and constrained motion.

Radial reductions of the free particle, the sl(2,R) function group, the
symmetric-matrix to Calogero reduction, the Hamilton-Jacobi action, the
charge-monopole system, tangency on TS^2 and the TS^3 -> TS^2 spherical
pendulum reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import ConstraintViolation, DomainError, SingularityError
from .numerics import eig_sym2_continuous, rotation

# Phase-space conventions: canonical coordinates on T*R^n are (x, p) with
# {p_a, x_b} = delta_ab.

ZERO_RADIUS = 1e-300
COLLISION_GAP = 1e-12


def _norm(v):
    return np.sqrt(np.sum(np.asarray(v, dtype=float) ** 2, axis=-1))


# ----------------------------------------------------------------------------
# radial reductions of the free particle


@dataclass(frozen=True)
class FreeState3:
    r: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float))


@dataclass(frozen=True)
class RadialData:
    r: float
    rdot: float
    l2: float
    E: float

    def __iter__(self):
        return iter((self.r, self.rdot, self.l2, self.E))


def reduce_free_to_radial(s: FreeState3) -> RadialData:
    """Radial coordinate, radial velocity, squared angular momentum, energy."""
    r = float(_norm(s.r))
    if r <= ZERO_RADIUS:
        raise DomainError("zero radius")
    rdot = float(np.dot(s.r, s.v)) / r
    l2 = float(np.sum(np.cross(s.r, s.v) ** 2))
    E = 0.5 * float(np.dot(s.v, s.v))
    return RadialData(r, rdot, l2, E)


def _check_radius(r):
    if np.any(np.asarray(r) <= 0):
        raise DomainError("radial field needs r > 0")


def radial_reduced_field(kind: str, **params) -> Callable:
    """Right-hand side f(t, y) for y = (..., [r, rdot]).

    kinds:
      fixed_l(l2)            rddot = l2 / r^3
      fixed_E(E)             rddot = (2E - rdot^2) / r
      convex(alpha, l2, E)   alpha * fixed_l + (1 - alpha) * fixed_E
      timedep(k)             rddot = k^2/(r t^2) + 2 rdot/t - r/t^2 - rdot^2/r
      timedep_printed(k)     as timedep but with the last t^-2 term read as
                             -1/(r t^2); kept for comparison, it is not
                             consistent with free flight

    Parameters may be arrays broadcasting against the batch axis of y.
    """

    def fixed_l(t, y, l2):
        r, rd = y[..., 0], y[..., 1]
        _check_radius(r)
        return np.stack([rd, l2 / r**3], axis=-1)

    def fixed_E(t, y, E):
        r, rd = y[..., 0], y[..., 1]
        _check_radius(r)
        return np.stack([rd, (2.0 * E - rd * rd) / r], axis=-1)

    if kind == "fixed_l":
        l2 = np.asarray(params["l2"], dtype=float)
        return lambda t, y: fixed_l(t, y, l2)
    if kind == "fixed_E":
        E = np.asarray(params["E"], dtype=float)
        return lambda t, y: fixed_E(t, y, E)
    if kind == "convex":
        alpha = float(params["alpha"])
        l2 = np.asarray(params["l2"], dtype=float)
        E = np.asarray(params["E"], dtype=float)

        def convex(t, y):
            r, rd = y[..., 0], y[..., 1]
            _check_radius(r)
            acc = (alpha * l2 + (1.0 - alpha) * (2.0 * E - rd * rd) * r * r) / r**3
            return np.stack([rd, acc], axis=-1)

        return convex
    if kind in ("timedep", "timedep_printed"):
        k2 = np.asarray(params["k"], dtype=float) ** 2
        printed = kind == "timedep_printed"

        def timedep(t, y):
            if t <= 0:
                raise DomainError("time-dependent field needs t > 0")
            r, rd = y[..., 0], y[..., 1]
            _check_radius(r)
            third = 1.0 / (r * t * t) if printed else r / (t * t)
            acc = k2 / (r * t * t) + 2.0 * rd / t - third - rd * rd / r
            return np.stack([rd, acc], axis=-1)

        return timedep
    raise DomainError(f"unknown radial field kind {kind!r}")


def free_flight_radius(r0, v0, t):
    """|r0 + v0 t| for a batch of initial data, evaluated at times t."""
    r0 = np.asarray(r0, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    t = np.asarray(t, dtype=float)
    pos = r0[None, ...] + t.reshape((-1,) + (1,) * r0.ndim) * v0[None, ...]
    return _norm(pos)


# ----------------------------------------------------------------------------
# sl(2,R) function group


@dataclass(frozen=True)
class SL2Point:
    xi1: float
    xi2: float
    xi3: float

    def __iter__(self):
        return iter((self.xi1, self.xi2, self.xi3))

    def casimir(self) -> float:
        return 2.0 * self.xi1 * self.xi2 - self.xi3**2


def sl2_lift(r, p) -> SL2Point:
    r = np.asarray(r, dtype=float)
    p = np.asarray(p, dtype=float)
    return SL2Point(0.5 * float(r @ r), float(p @ p), float(r @ p))


class PhaseFunction:
    """A function on T*R^n with analytic gradients in x and p."""

    def __init__(self, value, grad_x, grad_p, name: str = ""):
        self.value = value
        self.grad_x = grad_x
        self.grad_p = grad_p
        self.name = name

    def __call__(self, x, p):
        return self.value(x, p)


XI1 = PhaseFunction(lambda x, p: 0.5 * np.dot(x, x), lambda x, p: np.asarray(x, float),
                    lambda x, p: np.zeros_like(np.asarray(p, float)), "xi1")
XI2 = PhaseFunction(lambda x, p: np.dot(p, p), lambda x, p: np.zeros_like(np.asarray(x, float)),
                    lambda x, p: 2.0 * np.asarray(p, float), "xi2")
XI3 = PhaseFunction(lambda x, p: np.dot(x, p), lambda x, p: np.asarray(p, float),
                    lambda x, p: np.asarray(x, float), "xi3")


def canonical_poisson(f: PhaseFunction, g: PhaseFunction, x, p) -> float:
    """Canonical bracket with {p_a, x_b} = delta_ab.

    {f, g} = sum_a (df/dp_a dg/dx_a - df/dx_a dg/dp_a).
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    return float(np.dot(f.grad_p(x, p), g.grad_x(x, p)) - np.dot(f.grad_x(x, p), g.grad_p(x, p)))


def sl2_flow(p0: SL2Point, t: float) -> SL2Point:
    """Closed-form flow xi1' = xi3, xi3' = xi2, xi2' = 0."""
    x1, x2, x3 = p0
    return SL2Point(x1 + x3 * t + 0.5 * x2 * t * t, x2, x3 + x2 * t)


def oscillator_reduced_flow(eta1: float, xi3: float, t: float):
    """Rotation (eta1', xi3') = (2 xi3, -2 eta1)."""
    c, s = math.cos(2.0 * t), math.sin(2.0 * t)
    return eta1 * c + xi3 * s, -eta1 * s + xi3 * c


# ----------------------------------------------------------------------------
# symmetric 2x2 matrices and the Calogero system


def sym_from_coords(x1: float, x2: float, x3: float) -> np.ndarray:
    """Symmetric matrix with diagonal (x1, x3) and off-diagonal x2/sqrt(2)."""
    off = x2 / math.sqrt(2.0)
    return np.array([[x1, off], [off, x3]])


@dataclass(frozen=True)
class MatFreeState:
    X: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        V = np.asarray(self.V, dtype=float)
        # stored symmetrized so symmetry is exact
        object.__setattr__(self, "X", 0.5 * (X + X.T))
        object.__setattr__(self, "V", 0.5 * (V + V.T))

    def at(self, t: float) -> "MatFreeState":
        return MatFreeState(self.X + t * self.V, self.V)

    def M(self) -> np.ndarray:
        return self.X @ self.V - self.V @ self.X


@dataclass(frozen=True)
class CalogeroState:
    q1: float
    q2: float
    p1: float
    p2: float
    l: float
    phi: float = 0.0

    def vector(self) -> np.ndarray:
        return np.array([self.q1, self.q2, self.p1, self.p2])


def calogero_reduce(s: MatFreeState, prev: Optional[tuple] = None) -> CalogeroState:
    """Radial data of X = G Q G^T and the coupling l = phidot (q2 - q1)^2.

    G^T Xdot G = Qdot + phidot (q2 - q1) sigma_1, so the velocities are the
    diagonal and phidot comes from the off-diagonal entry.
    """
    eig = eig_sym2_continuous(s.X, prev)
    if eig.degenerate:
        raise SingularityError("degenerate eigenvalues: no rotation frame")
    G = rotation(eig.phi)
    W = G.T @ s.V @ G
    q1, q2 = eig.Q[0, 0], eig.Q[1, 1]
    gap = q2 - q1
    phidot = W[0, 1] / gap
    return CalogeroState(q1, q2, W[0, 0], W[1, 1], phidot * gap * gap, eig.phi)


def calogero_field(l: float) -> Callable:
    """Right-hand side on (q1, q2, p1, p2); l may be an array over the batch axis."""
    l2 = np.asarray(l, dtype=float) ** 2

    def field(t, y):
        q1, q2, p1, p2 = y[..., 0], y[..., 1], y[..., 2], y[..., 3]
        gap = q2 - q1
        if np.any(np.abs(gap) < COLLISION_GAP):
            raise SingularityError("particle collision")
        f = 2.0 * l2 / gap**3
        return np.stack([p1, p2, -f, f], axis=-1)

    return field


def matrix_eigenvalues(X) -> np.ndarray:
    """Ascending eigenvalues of a symmetric 2x2 matrix in closed form."""
    X = np.asarray(X, dtype=float)
    a, b, d = X[..., 0, 0], X[..., 0, 1], X[..., 1, 1]
    mean = 0.5 * (a + d)
    half = 0.5 * np.hypot(a - d, 2.0 * b)
    return np.stack([mean - half, mean + half], axis=-1)


def hj_action(Xt, X0, t: float) -> float:
    """Hamilton-Jacobi principal function Tr((Xt - X0)^2) / (2t)."""
    if t == 0:
        raise DomainError("t must be nonzero")
    D = np.asarray(Xt, dtype=float) - np.asarray(X0, dtype=float)
    return float(np.trace(D @ D)) / (2.0 * t)


# ----------------------------------------------------------------------------
# charge-monopole system


@dataclass(frozen=True)
class MonopoleState:
    r: np.ndarray
    v: np.ndarray
    k: float
    m: float = 1.0


def monopole_field(k: float, m: float = 1.0) -> Callable:
    """Lorentz force of a monopole, rddot = (k/m) (r x v) / |r|^3.

    This orientation is the one for which m r x v + k r/|r| is conserved.
    State layout: y = (..., [r, v]) with six components; k may be an array
    over the batch axis.
    """
    c = np.asarray(k, dtype=float)[..., None] / float(m)

    def field(t, y):
        r, v = y[..., :3], y[..., 3:]
        rr = _norm(r)
        if np.any(rr <= ZERO_RADIUS):
            raise DomainError("zero radius")
        acc = c * np.cross(r, v) / rr[..., None] ** 3
        return np.concatenate([v, acc], axis=-1)

    return field


def monopole_invariant(r, v, k: float, m: float = 1.0) -> np.ndarray:
    """J = m r x v + k r/|r|."""
    r = np.asarray(r, dtype=float)
    v = np.asarray(v, dtype=float)
    rr = _norm(r)
    if np.any(rr <= ZERO_RADIUS):
        raise DomainError("zero radius")
    return m * np.cross(r, v) + np.asarray(k, dtype=float)[..., None] * r / rr[..., None]


# ----------------------------------------------------------------------------
# TS^2 tangency


class Constraint:
    """A function on T R^3 with analytic gradient, coordinates (x, v)."""

    def __init__(self, value, grad, name=""):
        self.value = value
        self.grad = grad
        self.name = name


TS2_CONSTRAINTS = (
    Constraint(lambda z: z[:3] @ z[:3] - 1.0,
               lambda z: np.concatenate([2.0 * z[:3], np.zeros(3)]), "r.r-1"),
    Constraint(lambda z: z[:3] @ z[3:],
               lambda z: np.concatenate([z[3:], z[:3]]), "r.v"),
)

_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k] = 1.0
    _EPS[_i, _k, _j] = -1.0


def rotation_generator(l: int) -> Callable:
    """R_l = eps_{jkl} (x_j d/dx_k + v_j d/dv_k) as a map z -> Xz (l = 0, 1, 2)."""

    def field(z):
        x, v = z[:3], z[3:]
        return np.concatenate([_EPS[:, :, l].T @ x, _EPS[:, :, l].T @ v])

    return field


def boost_generator(l: int) -> Callable:
    """V_l = eps_{lij} x_j d/dv_i."""

    def field(z):
        x = z[:3]
        return np.concatenate([np.zeros(3), _EPS[l] @ x])

    return field


def non_tangent_field(z):
    """x_1 d/dv_1, whose Lie derivative of r.v is x_1^2."""
    out = np.zeros(6)
    out[3] = z[0]
    return out


def tangency_check(field: Callable, constraints: Sequence[Constraint], sample) -> float:
    """Max |L_X f| over sample points and constraints."""
    worst = 0.0
    for z in np.asarray(sample, dtype=float):
        X = np.asarray(field(z), dtype=float)
        for c in constraints:
            worst = max(worst, abs(float(c.grad(z) @ X)))
    return worst


def sample_ts2(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random points of TS^2 embedded in T R^3, shape (n, 6)."""
    x = rng.normal(size=(n, 3))
    x /= _norm(x)[:, None]
    v = rng.normal(size=(n, 3))
    v -= np.sum(v * x, axis=1)[:, None] * x
    return np.concatenate([x, v], axis=1)


# ----------------------------------------------------------------------------
# TS^3 Hamiltonian system and Hopf reduction to the spherical pendulum


@dataclass(frozen=True)
class TS3Point:
    y: np.ndarray
    p: np.ndarray


@dataclass(frozen=True)
class TS2State:
    x: np.ndarray
    v: np.ndarray


def ts3_potential(y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    s = np.sum(y * y, axis=-1)
    if np.any(s <= 0):
        raise DomainError("y = 0")
    return 0.5 * (y[..., 0] ** 2 + y[..., 3] ** 2 - y[..., 1] ** 2 - y[..., 2] ** 2) / s


def ts3_potential_grad(y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    s = np.sum(y * y, axis=-1)[..., None]
    num = 0.5 * (y[..., 0] ** 2 + y[..., 3] ** 2 - y[..., 1] ** 2 - y[..., 2] ** 2)[..., None]
    signed = y * np.array([1.0, -1.0, -1.0, 1.0])
    return signed / s - 2.0 * num * y / s**2


def ts3_hamiltonian(z) -> np.ndarray:
    """H = (1/2)(p.p)(y.y) + V(y) on T*R^4, z = (..., [y, p])."""
    z = np.asarray(z, dtype=float)
    y, p = z[..., :4], z[..., 4:]
    return 0.5 * np.sum(p * p, axis=-1) * np.sum(y * y, axis=-1) + ts3_potential(y)


def ts3_hamiltonian_field() -> Callable:
    """Hamilton's equations ydot = (y.y) p, pdot = -(p.p) y - grad V."""

    def field(t, z):
        y, p = z[..., :4], z[..., 4:]
        yy = np.sum(y * y, axis=-1)
        if np.any(yy <= 0):
            raise DomainError("y = 0")
        pp = np.sum(p * p, axis=-1)
        return np.concatenate([yy[..., None] * p, -pp[..., None] * y - ts3_potential_grad(y)], axis=-1)

    return field


def sigma_k(z) -> np.ndarray:
    """Momentum y0 p3 - p0 y3 + y1 p2 - y2 p1 of the fiber rotation."""
    z = np.asarray(z, dtype=float)
    y, p = z[..., :4], z[..., 4:]
    return y[..., 0] * p[..., 3] - p[..., 0] * y[..., 3] + y[..., 1] * p[..., 2] - y[..., 2] * p[..., 1]


def fiber_generator(y) -> np.ndarray:
    """X = y0 d/dy3 - y3 d/dy0 + y1 d/dy2 - y2 d/dy1 evaluated at y."""
    y = np.asarray(y, dtype=float)
    return np.stack([-y[..., 3], -y[..., 2], y[..., 1], y[..., 0]], axis=-1)


def fiber_rotate(y, s: float) -> np.ndarray:
    """Flow of the fiber generator for parameter s (acts on y or p alike)."""
    y = np.asarray(y, dtype=float)
    c, sn = math.cos(s), math.sin(s)
    out = np.empty_like(y)
    out[..., 0] = c * y[..., 0] - sn * y[..., 3]
    out[..., 3] = c * y[..., 3] + sn * y[..., 0]
    out[..., 1] = c * y[..., 1] - sn * y[..., 2]
    out[..., 2] = c * y[..., 2] + sn * y[..., 1]
    return out


def project_ts3(z) -> np.ndarray:
    """Renormalize y and remove the normal component of p."""
    z = np.array(z, dtype=float)
    y = z[..., :4]
    y /= _norm(y)[..., None]
    p = z[..., 4:]
    p -= np.sum(p * y, axis=-1)[..., None] * y
    return z


def hopf_map(y) -> np.ndarray:
    """Hopf fibration S^3 -> S^2 for the fiber generator above.

    x1 = 2(y1 y3 - y0 y2), x2 = 2(y2 y3 + y0 y1), x3 = y0^2 + y3^2 - y1^2 - y2^2.
    """
    y = np.asarray(y, dtype=float)
    y0, y1, y2, y3 = y[..., 0], y[..., 1], y[..., 2], y[..., 3]
    return np.stack([
        2.0 * (y1 * y3 - y0 * y2),
        2.0 * (y2 * y3 + y0 * y1),
        y0**2 + y3**2 - y1**2 - y2**2,
    ], axis=-1)


def hopf_jacobian(y) -> np.ndarray:
    y0, y1, y2, y3 = np.asarray(y, dtype=float)
    return 2.0 * np.array([
        [-y2, y3, -y0, y1],
        [y1, y0, y3, y2],
        [y0, -y1, -y2, y3],
    ])


def hopf_project(pt: TS3Point, tol: float = 1e-6) -> TS2State:
    """Project a point of TS^3 with the tangent map of the Hopf fibration.

    The velocity upstairs is ydot = (y.y) p from the TS^3 Hamiltonian field.
    """
    y = np.asarray(pt.y, dtype=float)
    p = np.asarray(pt.p, dtype=float)
    if abs(y @ y - 1.0) > tol or abs(y @ p) > tol:
        raise ConstraintViolation("point is not on TS^3")
    ydot = (y @ y) * p
    return TS2State(hopf_map(y), hopf_jacobian(y) @ ydot)


def random_ts3(rng: np.random.Generator, K: Optional[float] = None, scale: float = 1.0):
    """Random point of TS^3; with K = 0 the fiber component of p is removed."""
    y = rng.normal(size=4)
    y /= np.linalg.norm(y)
    p = scale * rng.normal(size=4)
    p -= (p @ y) * y
    if K is not None:
        X = fiber_generator(y)
        p -= (p @ X) * X
        p += K * X
    return np.concatenate([y, p])


# the K = 0 sector of the TS^3 system projects to a pendulum with this gravity
HOPF_GRAVITY = 2.0


def pendulum_field(gravity: float = 1.0, tol: Optional[float] = None) -> Callable:
    """Spherical pendulum on TS^2: xddot = -g (e3 - x3 x) - |v|^2 x."""
    g = float(gravity)

    def field(t, z):
        x, v = z[..., :3], z[..., 3:]
        if tol is not None:
            if np.any(np.abs(np.sum(x * x, axis=-1) - 1.0) > tol) or np.any(
                np.abs(np.sum(x * v, axis=-1)) > tol
            ):
                raise ConstraintViolation("state left TS^2")
        e3 = np.zeros_like(x)
        e3[..., 2] = 1.0
        acc = -g * (e3 - x[..., 2:3] * x) - np.sum(v * v, axis=-1)[..., None] * x
        return np.concatenate([v, acc], axis=-1)

    return field


def project_ts2(z) -> np.ndarray:
    z = np.array(z, dtype=float)
    x = z[..., :3]
    x /= _norm(x)[..., None]
    v = z[..., 3:]
    v -= np.sum(v * x, axis=-1)[..., None] * x
    return z


def energy_momentum_map(z, gravity: float = 1.0):
    """(E, L) = (|v|^2/2 + g x3, x1 v2 - x2 v1)."""
    z = np.asarray(z, dtype=float)
    x, v = z[..., :3], z[..., 3:]
    E = 0.5 * np.sum(v * v, axis=-1) + gravity * x[..., 2]
    L = x[..., 0] * v[..., 1] - x[..., 1] * v[..., 0]
    return E, L
