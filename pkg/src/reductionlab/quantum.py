"""Geometric quantum mechanics on a finite-dimensional Hilbert space.

States live in C^n, realified as (q_1..q_n, p_1..p_n) with psi_k = q_k + i p_k.
The Kahler triple is J(q, p) = (-p, q), g the Euclidean metric and
omega = dq ^ dp. Observables A give quadratic functions f_A = <psi, A psi>/2.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Dict, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .numerics import bessel_j, finite_diff, quad_periodic

HERMITIAN_TOL = 1e-12

# bracket_omega(A, B) = OMEGA_SIGN * f_{-i[A,B]}; measured by measure_epsilon()
OMEGA_SIGN = 1.0
# d d_J log<psi,psi> = KAHLER_SCALE * Im(fubini_study)
KAHLER_SCALE = -4.0


# ----------------------------------------------------------------------------
# basic types and Kahler structure


def as_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size == 0:
        raise DomainError("empty state")
    return psi


def _nonzero(psi) -> Tuple[np.ndarray, float]:
    psi = as_state(psi)
    nrm = float(np.vdot(psi, psi).real)
    if nrm == 0.0:
        raise DomainError("zero vector")
    return psi, nrm


def as_hermitian(A, tol: float = HERMITIAN_TOL) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError("matrix must be square")
    if np.max(np.abs(A - A.conj().T), initial=0.0) > tol:
        raise DomainError("matrix is not Hermitian")
    return A


def as_density(rho, tol: float = 1e-10) -> np.ndarray:
    rho = as_hermitian(rho)
    if abs(np.trace(rho).real - 1.0) > tol:
        raise DomainError("density matrix must have unit trace")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise DomainError("density matrix must be positive semidefinite")
    return rho


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    M = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (M + M.conj().T)


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def realify(psi) -> np.ndarray:
    psi = as_state(psi)
    return np.concatenate([psi.real, psi.imag])


def complexify(x) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size % 2:
        raise DomainError("real point must have even dimension")
    n = x.size // 2
    return x[:n] + 1j * x[n:]


def _split(X) -> Tuple[np.ndarray, np.ndarray]:
    X = np.asarray(X, dtype=float).ravel()
    if X.size % 2:
        raise DomainError("tangent vector must have even dimension")
    n = X.size // 2
    return X[:n], X[n:]


def J_apply(X) -> np.ndarray:
    q, p = _split(X)
    return np.concatenate([-p, q])


def g_apply(X, Y) -> float:
    X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
    if X.shape != Y.shape:
        raise DomainError("dimension mismatch")
    return float(X @ Y)


def omega_apply(X, Y) -> float:
    xq, xp = _split(X)
    yq, yp = _split(Y)
    if xq.shape != yq.shape:
        raise DomainError("dimension mismatch")
    return float(xq @ yp - xp @ yq)


def kahler_apply(kind: str, X, Y=None):
    """Evaluate J (vector), g or omega (numbers) in realified coordinates."""
    if kind == "J":
        return J_apply(X)
    if kind == "g":
        return g_apply(X, Y)
    if kind == "omega":
        return omega_apply(X, Y)
    raise DomainError(f"unknown tensor {kind!r}")


# ----------------------------------------------------------------------------
# quadratic functions and brackets


def f_A(A, psi) -> float:
    psi = as_state(psi)
    return 0.5 * float(np.vdot(psi, np.asarray(A) @ psi).real)


def e_A(A, psi) -> float:
    psi, nrm = _nonzero(psi)
    return float(np.vdot(psi, np.asarray(A) @ psi).real) / nrm


def grad_f(A, psi) -> np.ndarray:
    """Analytic gradient of f_A in realified coordinates."""
    v = np.asarray(A) @ as_state(psi)
    return np.concatenate([v.real, v.imag])


def _contravariant(da: np.ndarray, db: np.ndarray) -> Tuple[float, float]:
    aq, ap = _split(da)
    bq, bp = _split(db)
    omega = float(aq @ bp - ap @ bq)
    g = float(aq @ bq + ap @ bp)
    return omega, g


def bracket_omega(A, B, psi) -> float:
    """Omega(df_A, df_B) with Omega = sum d/dq ^ d/dp."""
    return _contravariant(grad_f(A, psi), grad_f(B, psi))[0]


def bracket_g(A, B, psi) -> float:
    """G(df_A, df_B) with G = sum d/dq x d/dq + d/dp x d/dp."""
    return _contravariant(grad_f(A, psi), grad_f(B, psi))[1]


def commutator(A, B) -> np.ndarray:
    A, B = np.asarray(A), np.asarray(B)
    return A @ B - B @ A


def measure_epsilon() -> float:
    """Sign relating bracket_omega to f_{-i[A,B]}, fixed on sigma_x, sigma_y at (1, 0)."""
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    psi = np.array([1.0, 0.0], dtype=complex)
    ref = f_A(-1j * commutator(sx, sy), psi)
    return float(np.sign(bracket_omega(sx, sy, psi) / ref))


def star_func(A, B, psi) -> complex:
    """(f_A * f_B)(psi) = f_{AB}(psi) = <psi, AB psi>/2."""
    psi = as_state(psi)
    return 0.5 * complex(np.vdot(psi, np.asarray(A) @ np.asarray(B) @ psi))


def leibniz_check(A, B, C, psi) -> float:
    """|{f_A, f_B * f_C} - {f_A, f_B} * f_C - f_B * {f_A, f_C}| with {f_A, f_B} = f_{-i[A,B]}."""
    A, B, C = (np.asarray(M) for M in (A, B, C))
    lhs = star_func(-1j * commutator(A, B @ C), np.eye(len(A)), psi)
    rhs = star_func(-1j * commutator(A, B), C, psi) + star_func(B, -1j * commutator(A, C), psi)
    return abs(lhs - rhs)


# ----------------------------------------------------------------------------
# momentum map


def momentum_map(psi, normalized: bool = False) -> np.ndarray:
    psi, nrm = _nonzero(psi)
    mu = np.outer(psi, psi.conj())
    return mu / nrm if normalized else mu


def pairing(A, B) -> complex:
    """<A, B> = Tr(AB)/2."""
    return 0.5 * complex(np.trace(np.asarray(A) @ np.asarray(B)))


def RLambda(xi, A, B) -> Tuple[float, float]:
    """R = <xi, AB + BA> and Lambda = <xi, -i[A, B]>, so R + i Lambda = Tr(xi A B)."""
    A, B = np.asarray(A), np.asarray(B)
    R = pairing(xi, A @ B + B @ A).real
    Lam = OMEGA_SIGN * pairing(xi, -1j * commutator(A, B)).real
    return float(R), float(Lam)


def momentum_pullback_residual(A, B, psi) -> float:
    """|G(df_A, df_B) + i Omega(df_A, df_B) - (R + i Lambda)(mu(psi))(A, B)|."""
    R, Lam = RLambda(momentum_map(psi), A, B)
    lhs = complex(bracket_g(A, B, psi), bracket_omega(A, B, psi))
    return abs(lhs - complex(R, Lam))


# ----------------------------------------------------------------------------
# dynamics


def propagator(H, t: float, hbar: float = 1.0) -> np.ndarray:
    """exp(-i H t / hbar) by spectral decomposition."""
    H = as_hermitian(H, tol=1e-10)
    lam, V = np.linalg.eigh(H)
    return (V * np.exp(-1j * lam * t / hbar)) @ V.conj().T


def evolve_schrodinger(H, psi0, t: float, hbar: float = 1.0) -> np.ndarray:
    return propagator(H, t, hbar) @ as_state(psi0)


def evolve_heisenberg(H, A, t: float, hbar: float = 1.0) -> np.ndarray:
    """Solution of i hbar dA/dt = [A, H]: A(t) = U^+ A U."""
    U = propagator(H, t, hbar)
    return U.conj().T @ np.asarray(A, dtype=complex) @ U


def evolve_vonneumann(H, rho0, t: float, hbar: float = 1.0) -> np.ndarray:
    """Solution of i hbar drho/dt = [H, rho]: rho(t) = U rho U^+."""
    U = propagator(H, t, hbar)
    return U @ np.asarray(rho0, dtype=complex) @ U.conj().T


def picture_equivalence(H, A, psi0, times: Sequence[float], hbar: float = 1.0) -> float:
    """Largest pairwise gap between Schrodinger, Heisenberg and von Neumann expectations."""
    psi0, nrm = _nonzero(psi0)
    rho0 = momentum_map(psi0, normalized=True)
    worst = 0.0
    for t in times:
        psi = evolve_schrodinger(H, psi0, t, hbar)
        a = e_A(A, psi)
        b = float(np.vdot(psi0, evolve_heisenberg(H, A, t, hbar) @ psi0).real) / nrm
        c = float(np.trace(evolve_vonneumann(H, rho0, t, hbar) @ np.asarray(A)).real)
        worst = max(worst, abs(a - b), abs(a - c), abs(b - c))
    return worst


def ehrenfest_residual(H, A, psi0, t: float, dt: float = 1e-4, hbar: float = 1.0) -> float:
    """|d/dt f_A(psi(t)) - bracket_omega(A, H)(psi(t)) / hbar| by central differences."""
    deriv = finite_diff(lambda s: f_A(A, evolve_schrodinger(H, psi0, float(s[0]), hbar)),
                        np.array([t]), h=dt)
    psi = evolve_schrodinger(H, psi0, t, hbar)
    return abs(deriv - OMEGA_SIGN * bracket_omega(A, H, psi) / hbar)


# ----------------------------------------------------------------------------
# projective geometry


def theta_eval(psi, X) -> complex:
    """<psi, dpsi(X)> / <psi, psi> with dpsi(X) the complex form of X."""
    psi, nrm = _nonzero(psi)
    return complex(np.vdot(psi, complexify(X))) / nrm


def dilation(psi) -> np.ndarray:
    """Delta at psi, as a realified tangent vector."""
    return realify(psi)


def phase_generator(psi) -> np.ndarray:
    """J(Delta) at psi."""
    return J_apply(realify(psi))


def fubini_study(psi, X, Y) -> complex:
    """<X, Y>/<psi,psi> - <X, psi><psi, Y>/<psi,psi>^2 (antilinear in X)."""
    psi, nrm = _nonzero(psi)
    x, y = complexify(X), complexify(Y)
    return complex(np.vdot(x, y)) / nrm - complex(np.vdot(x, psi) * np.vdot(psi, y)) / nrm**2


def _log_norm(x) -> float:
    return math.log(float(np.dot(x, x)))


def kahler_two_form_fd(psi, X, Y, h: float = 1e-4) -> float:
    """d(d_J log<psi,psi>)(X, Y) by central differences, with (d_J f)(Z) = df(JZ)."""
    x0 = realify(psi)
    X, Y = np.asarray(X, dtype=float), np.asarray(Y, dtype=float)
    if not np.any(x0):
        raise DomainError("zero vector")

    def dJ(point, Z):
        return finite_diff(_log_norm, point, J_apply(Z), h=h)

    dx = (dJ(x0 + h * X, Y) - dJ(x0 - h * X, Y)) / (2 * h)
    dy = (dJ(x0 + h * Y, X) - dJ(x0 - h * Y, X)) / (2 * h)
    return dx - dy


def kahler_potential_check(psi, X, Y, h: float = 1e-4) -> float:
    """|d d_J log<psi,psi> (X,Y) - KAHLER_SCALE * Im fubini_study(psi, X, Y)|."""
    return abs(kahler_two_form_fd(psi, X, Y, h) - KAHLER_SCALE * fubini_study(psi, X, Y).imag)


def e_A_invariance(A, psi, h: float = 1e-5) -> Tuple[float, float]:
    """Directional derivatives of e_A along Delta and J(Delta)."""
    x0 = realify(psi)
    f = lambda x: e_A(A, complexify(x))
    return (finite_diff(f, x0, dilation(psi), h=h), finite_diff(f, x0, phase_generator(psi), h=h))


# ----------------------------------------------------------------------------
# radial sector of free motion in the plane


def bessel_sector_identity(m: int, P: float, Q: float, n: int = 256, printed: bool = False) -> float:
    """|int_0^2pi e^{im phi} e^{iPQ cos phi} dphi - 2 pi i^m J_m(PQ)|.

    ``printed`` drops the i^m phase, which is only correct for m divisible by 4.
    """
    x = P * Q
    lhs = quad_periodic(lambda phi: np.exp(1j * m * phi) * np.exp(1j * x * np.cos(phi)), n)
    phase = 1.0 if printed else 1j ** m
    return abs(lhs - 2 * math.pi * phase * bessel_j(m, x))


def free_propagator_2d(x, x0, t: float) -> complex:
    if t == 0:
        raise DomainError("propagator needs t != 0")
    d = np.asarray(x, dtype=float) - np.asarray(x0, dtype=float)
    return cmath.exp(1j * float(d @ d) / (2 * t)) / (2j * math.pi * t)


def sector_propagator(m: int, Qt: float, Q0: float, t: float, printed: bool = False) -> complex:
    """sqrt(Qt Q0) int e^{im phi} K dphi in closed form.

    The exact value carries 2 pi (-i)^m J_m(Qt Q0 / t); ``printed`` returns the
    expression without that factor.
    """
    if t == 0:
        raise DomainError("propagator needs t != 0")
    pref = math.sqrt(Qt * Q0) * cmath.exp(1j * (Qt**2 + Q0**2) / (2 * t)) / (2j * math.pi * t)
    j = bessel_j(m, Qt * Q0 / t)
    if printed:
        return pref * j
    return pref * 2 * math.pi * (-1j) ** m * j


def sector_propagator_oracle(m: int, Qt: float, Q0: float, t: float, n: int = 512) -> complex:
    """sqrt(Qt Q0) int_0^2pi e^{im phi} K(X_t, X_0; t) dphi by quadrature."""
    x0 = np.array([Q0, 0.0])
    val = quad_periodic(
        lambda phi: np.exp(1j * m * phi) * np.array(
            [free_propagator_2d((Qt * math.cos(a), Qt * math.sin(a)), x0, t) for a in np.atleast_1d(phi)]),
        n,
    )
    return math.sqrt(Qt * Q0) * val
