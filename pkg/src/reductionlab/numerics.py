"""Numerical substrate shared by every scenario.

Fixed-step RK4, trapezoid quadrature for periodic integrands, integer-order
Bessel functions, a branch-continuous 2x2 symmetric eigendecomposition and
central finite differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Mapping, NamedTuple, Optional

import numpy as np

from .errors import DomainError, IntegrationDiverged

__all__ = [
    "ToleranceConfig",
    "Trajectory",
    "integrate_rk4",
    "quad_periodic",
    "bessel_j",
    "EigSym2",
    "rotation",
    "eig_sym2_continuous",
    "finite_diff",
]

# |x| at or below this uses the power series, above it Miller's recurrence.
BESSEL_SERIES_LIMIT = 12.0
# eigenvalue gap below which the rotation frame is considered undefined
DEGENERATE_GAP = 1e-10


@dataclass(frozen=True)
class ToleranceConfig:
    ode_tol: float = 1e-8
    symbolic_tol: float = 0.0
    quad_tol: float = 1e-10
    check_tol: float = 1e-6

    def __post_init__(self):
        for name in ("ode_tol", "quad_tol", "check_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.symbolic_tol < 0:
            raise ValueError("symbolic_tol must be non-negative")

    def replace(self, **overrides) -> "ToleranceConfig":
        unknown = set(overrides) - set(self.__dataclass_fields__)
        if unknown:
            raise KeyError(f"unknown tolerance keys: {sorted(unknown)}")
        values = {k: getattr(self, k) for k in self.__dataclass_fields__}
        values.update({k: float(v) for k, v in overrides.items()})
        return ToleranceConfig(**values)


@dataclass
class Trajectory:
    """Time-stamped samples plus the maximum drift of each tracked invariant."""

    times: np.ndarray
    states: np.ndarray
    drift: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states)
        if self.times.ndim != 1 or len(self.times) != len(self.states):
            raise ValueError("times and states must have matching length")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def __len__(self) -> int:
        return len(self.times)


def _invariant_values(invariants, y):
    return {name: np.asarray(fn(y), dtype=float) for name, fn in invariants.items()}


def integrate_rk4(
    field: Callable[[float, np.ndarray], np.ndarray],
    y0,
    t0: float,
    t1: float,
    dt: float,
    invariants: Optional[Mapping[str, Callable]] = None,
    project: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    sample_every: int = 1,
) -> Trajectory:
    """Classical fixed-step fourth-order Runge-Kutta.

    ``field(t, y)`` must return an array shaped like ``y``; batches work as
    long as the field is written to broadcast. The step count is
    ``round((t1 - t0) / dt)`` and the step is adjusted to land exactly on t1.
    ``project`` (if given) is applied after every step. Drift of each named
    invariant is the max absolute deviation from its initial value.
    """
    if not dt > 0:
        raise DomainError("dt must be positive")
    if not t1 > t0:
        raise DomainError("t1 must exceed t0")
    nsteps = max(1, int(round((t1 - t0) / dt)))
    h = (t1 - t0) / nsteps
    y = np.array(y0, dtype=float)
    if not np.all(np.isfinite(y)):
        raise IntegrationDiverged(t0)
    invariants = dict(invariants or {})
    ref = _invariant_values(invariants, y)
    drift = {name: 0.0 for name in invariants}

    times = [t0]
    states = [y.copy()]
    for i in range(nsteps):
        t = t0 + i * h
        k1 = np.asarray(field(t, y))
        k2 = np.asarray(field(t + 0.5 * h, y + 0.5 * h * k1))
        k3 = np.asarray(field(t + 0.5 * h, y + 0.5 * h * k2))
        k4 = np.asarray(field(t + h, y + h * k3))
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if project is not None:
            y = np.asarray(project(y), dtype=float)
        t_next = t0 + (i + 1) * h
        if not np.all(np.isfinite(y)):
            raise IntegrationDiverged(t_next)
        for name, fn in invariants.items():
            dev = float(np.max(np.abs(np.asarray(fn(y), dtype=float) - ref[name])))
            if dev > drift[name]:
                drift[name] = dev
        if (i + 1) % sample_every == 0 or i + 1 == nsteps:
            times.append(t_next)
            states.append(y.copy())
    return Trajectory(np.array(times), np.array(states), drift)


def quad_periodic(f: Callable, n: int = 128) -> complex:
    """Trapezoid rule for a 2*pi-periodic integrand over [0, 2*pi)."""
    if n < 8:
        raise DomainError("quad_periodic needs at least 8 samples")
    phi = 2.0 * np.pi * np.arange(n) / n
    try:
        vals = np.asarray(f(phi), dtype=complex)
        if vals.shape != phi.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([complex(f(p)) for p in phi])
    return complex(vals.sum() * (2.0 * np.pi / n))


def _bessel_series(m: int, x: float) -> float:
    half = 0.5 * x
    term = half**m / math.factorial(m)
    total = term
    k = 0
    x2 = half * half
    while True:
        k += 1
        term *= -x2 / (k * (k + m))
        total += term
        if abs(term) < 1e-17 * max(1.0, abs(total)) and k > half:
            break
    return total


def _bessel_miller(m: int, x: float) -> float:
    # downward recurrence from a start index well beyond max(m, x),
    # normalized with J0 + 2 * sum J_{2k} = 1
    start = int(max(m, x)) + 30 + int(math.sqrt(40.0 * max(m, x)))
    start += start % 2
    j_next, j_cur = 0.0, 1e-300
    norm = 0.0
    result = 0.0
    for n in range(start, 0, -1):
        j_prev = (2.0 * n / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        idx = n - 1
        if idx == m:
            result = j_cur
        if idx % 2 == 0 and idx > 0:
            norm += 2.0 * j_cur
        if abs(j_cur) > 1e250:
            j_cur *= 1e-250
            j_next *= 1e-250
            norm *= 1e-250
            result *= 1e-250
    norm += j_cur  # J0 term
    return result / norm


def bessel_j(m: int, x: float) -> float:
    """Bessel function of the first kind J_m(x) for integer m >= 0."""
    m = int(m)
    if m < 0:
        raise DomainError("order must be non-negative")
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("argument must be finite")
    if x == 0.0:
        return 1.0 if m == 0 else 0.0
    sign = -1.0 if (x < 0 and m % 2 == 1) else 1.0
    ax = abs(x)
    if ax <= BESSEL_SERIES_LIMIT:
        return sign * _bessel_series(m, ax)
    return sign * _bessel_miller(m, ax)


def rotation(phi: float) -> np.ndarray:
    """The rotation G(phi) = [[cos, sin], [-sin, cos]] used for X = G Q G^T."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


class EigSym2(NamedTuple):
    Q: np.ndarray
    phi: float
    degenerate: bool


def eig_sym2_continuous(X, prev: Optional[tuple] = None) -> EigSym2:
    """Diagonalize a symmetric 2x2 matrix as X = G(phi) Q G(phi)^T.

    Without ``prev`` eigenvalues are ascending and phi lies in (-pi/2, pi/2].
    With ``prev = (Q_prev, phi_prev)`` the branch (ordering and phi modulo
    pi) nearest to the previous frame is chosen. For a gap under 1e-10 the
    previous angle is kept and ``degenerate`` is set.
    """
    X = np.asarray(X, dtype=float)
    a, b, d = X[0, 0], 0.5 * (X[0, 1] + X[1, 0]), X[1, 1]
    mean = 0.5 * (a + d)
    gap = math.hypot(a - d, 2.0 * b)
    degenerate = gap < DEGENERATE_GAP
    if prev is None:
        phi = 0.0 if gap == 0.0 else 0.5 * math.atan2(2.0 * b, d - a)
        if phi <= -math.pi / 2:
            phi += math.pi
        Q = np.diag([mean - 0.5 * gap, mean + 0.5 * gap])
        return EigSym2(Q, phi, degenerate)

    Qp, phip = prev
    Qp = np.asarray(Qp, dtype=float)
    qp = np.array([Qp[0, 0], Qp[1, 1]])
    if degenerate:
        return EigSym2(np.diag([mean, mean]), float(phip), True)

    base = 0.5 * math.atan2(2.0 * b, d - a)
    best = None
    for order, shift in ((1.0, 0.0), (-1.0, math.pi / 2)):
        q = np.array([mean - 0.5 * order * gap, mean + 0.5 * order * gap])
        phi = base + shift
        phi += math.pi * round((phip - phi) / math.pi)
        score = float(np.max(np.abs(q - qp))) + abs(phi - phip)
        if best is None or score < best[0]:
            best = (score, q, phi)
    _, q, phi = best
    return EigSym2(np.diag(q), phi, False)


def finite_diff(f: Callable, x, direction=None, order: int = 1, h: float = 1e-4) -> float:
    """Central finite difference of f at x along ``direction``."""
    if not h > 0:
        raise DomainError("step must be positive")
    x = np.asarray(x, dtype=float)
    d = np.ones_like(x) if direction is None else np.asarray(direction, dtype=float)
    if order == 1:
        return (f(x + h * d) - f(x - h * d)) / (2.0 * h)
    if order == 2:
        return (f(x + h * d) - 2.0 * f(x) + f(x - h * d)) / (h * h)
    raise DomainError("order must be 1 or 2")
