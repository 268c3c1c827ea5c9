"""Measurement protocols shared by scenarios, the verify suites and the tests.

Every protocol takes a numpy Generator (or a seed) plus sizes and returns a
Measurement: named residuals and, optionally, a table for CSV output.
Modules are reached through their attributes so that tests can patch them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import classical, diffops, lie_scheffers, numerics, quantum
from .star import commpoly, moyal, ncpoly, oscillator, woronowicz


@dataclass
class Measurement:
    values: Dict[str, float] = field(default_factory=dict)
    columns: List[str] = field(default_factory=list)
    rows: List[Sequence[float]] = field(default_factory=list)


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def _frac_float(x) -> float:
    return float(x) if isinstance(x, Fraction) else float(abs(x))


# ----------------------------------------------------------------------------
# numeric core


def rk4_order_ratio(dt: float = 0.1, T: float = 1.0) -> float:
    """Error ratio of y' = y at dt and dt/2 (16 for a fourth-order method)."""
    errs = []
    for h in (dt, dt / 2):
        tr = numerics.integrate_rk4(lambda t, y: y, np.array([1.0]), 0.0, T, h)
        errs.append(abs(tr.final[0] - math.e ** T))
    return errs[0] / errs[1]


def quad_convergence(PQ: float = 5.0) -> float:
    f = lambda phi: np.exp(1j * PQ * np.cos(phi))
    return abs(numerics.quad_periodic(f, 64) - numerics.quad_periodic(f, 128))


def eig_reconstruction(rng, n: int = 1000) -> float:
    rng = _rng(rng)
    worst = 0.0
    for _ in range(n):
        a, b, d = rng.uniform(-10, 10, 3)
        X = np.array([[a, b], [b, d]])
        e = numerics.eig_sym2_continuous(X)
        G = numerics.rotation(e.phi)
        worst = max(worst, float(np.max(np.abs(G @ e.Q @ G.T - X))))
    return worst


def bessel_recurrence(rng, n: int = 200) -> float:
    rng = _rng(rng)
    worst = 0.0
    for _ in range(n):
        x = rng.uniform(0.5, 20.0)
        m = int(rng.integers(1, 11))
        lhs = numerics.bessel_j(m - 1, x) + numerics.bessel_j(m + 1, x)
        worst = max(worst, abs(lhs - 2 * m / x * numerics.bessel_j(m, x)))
    return worst


# ----------------------------------------------------------------------------
# classical reduction


def sample_free_states(rng, n: int, min_radius: float = 0.3):
    """Initial data in [-1, 1]^6 whose free flight stays at distance >= min_radius."""
    rng = _rng(rng)
    r0, v0 = [], []
    while len(r0) < n:
        r = rng.uniform(-1, 1, 3)
        v = rng.uniform(-1, 1, 3)
        if np.linalg.norm(np.cross(r, v)) / np.linalg.norm(v) > min_radius:
            r0.append(r)
            v0.append(v)
    return np.array(r0), np.array(v0)


def radial_free_flight(rng, n: int = 200, T: float = 2.0, dt: float = 1e-3,
                       kind: str = "fixed_l", t0: float = 0.5) -> Measurement:
    """Max |r(t) - |r0 + v0 t|| for a reduced radial field."""
    r0, v0 = sample_free_states(rng, n)
    if kind == "timedep" or kind == "timedep_printed":
        start = t0
        params = {"k": np.linalg.norm(r0, axis=1)}
    else:
        start = 0.0
        l2 = np.sum(np.cross(r0, v0) ** 2, axis=1)
        E = 0.5 * np.sum(v0 * v0, axis=1)
        params = {"fixed_l": {"l2": l2}, "fixed_E": {"E": E},
                  "convex": {"alpha": 0.3, "l2": l2, "E": E}}[kind]
    pos = r0 + start * v0
    rr = np.linalg.norm(pos, axis=1)
    y0 = np.stack([rr, np.sum(pos * v0, axis=1) / rr], axis=1)
    tr = numerics.integrate_rk4(classical.radial_reduced_field(kind, **params), y0, start, start + T, dt)
    exact = classical.free_flight_radius(r0, v0, tr.times)
    err = np.abs(tr.states[..., 0] - exact)
    m = Measurement({"max_error": float(err.max())}, ["t", "r", "r_exact", "max_error"])
    for i in range(0, len(tr.times), max(1, len(tr.times) // 200)):
        m.rows.append((tr.times[i], tr.states[i, 0, 0], exact[i, 0], err[i].max()))
    return m


def sl2_brackets(rng, n: int = 1000) -> Measurement:
    """Exact bracket relations of xi1 = r.r/2, xi2 = p.p, xi3 = r.p."""
    rng = _rng(rng)
    X1, X2, X3 = classical.XI1, classical.XI2, classical.XI3
    worst = 0.0
    for _ in range(n):
        x, p = rng.normal(size=3), rng.normal(size=3)
        worst = max(
            worst,
            abs(classical.canonical_poisson(X3, X1, x, p) - 2 * X1(x, p)),
            abs(classical.canonical_poisson(X2, X3, x, p) - 2 * X2(x, p)),
            abs(classical.canonical_poisson(X2, X1, x, p) - 2 * X3(x, p)),
        )
    return Measurement({"bracket_residual": worst})


def sl2_flow_match(rng, T: float = 2.0, steps: int = 200) -> Measurement:
    """sl2_flow of the lifted point against the lift of free motion."""
    rng = _rng(rng)
    r, p = rng.normal(size=3), rng.normal(size=3)
    start = classical.sl2_lift(r, p)
    m = Measurement(columns=["t", "xi1", "xi2", "xi3", "casimir_drift"])
    worst, cdrift = 0.0, 0.0
    for t in np.linspace(0.0, T, steps + 1):
        a = classical.sl2_flow(start, t)
        b = classical.sl2_lift(r + t * p, p)
        worst = max(worst, max(abs(u - v) for u, v in zip(a, b)))
        cd = abs(a.casimir() - start.casimir())
        cdrift = max(cdrift, cd)
        m.rows.append((t, a.xi1, a.xi2, a.xi3, cd))
    m.values.update(flow_residual=worst, casimir_drift=cdrift)
    return m


def random_calogero_data(rng, n: int, T: float, min_gap: float = 0.1):
    """Random (X0, V0) whose eigenvalue gap stays above min_gap on [0, T]."""
    rng = _rng(rng)
    times = np.linspace(0.0, T, 401)
    X0s, V0s = [], []
    while len(X0s) < n:
        a = rng.uniform(-1, 1, 3)
        b = rng.uniform(-1, 1, 3)
        X0 = classical.sym_from_coords(*a)
        V0 = classical.sym_from_coords(*b)
        ev = classical.matrix_eigenvalues(X0[None] + times[:, None, None] * V0[None])
        if np.min(ev[:, 1] - ev[:, 0]) > min_gap:
            X0s.append(X0)
            V0s.append(V0)
    return X0s, V0s


def calogero_match(rng, n: int = 100, T: float = 2.0, dt: float = 1e-3) -> Measurement:
    """Eigenvalues of X0 + t V0 against integrated Calogero trajectories."""
    X0s, V0s = random_calogero_data(rng, n, T)
    states, ls = [], []
    for X0, V0 in zip(X0s, V0s):
        s = classical.calogero_reduce(classical.MatFreeState(X0, V0))
        states.append(s.vector())
        ls.append(s.l)
    tr = numerics.integrate_rk4(classical.calogero_field(np.array(ls)), np.array(states), 0.0, T, dt)
    X0a, V0a = np.array(X0s), np.array(V0s)
    flight = X0a[None] + tr.times[:, None, None, None] * V0a[None]
    ev = classical.matrix_eigenvalues(flight)
    q = np.sort(tr.states[..., :2], axis=-1)
    err = np.abs(q - ev)
    # coupling and [X, V] along the closed-form flight
    l_drift, m_drift = 0.0, 0.0
    first_l = []
    for j, (X0, V0) in enumerate(zip(X0s, V0s)):
        prev = None
        M0 = classical.MatFreeState(X0, V0).M()
        lj = []
        for t in tr.times[:: max(1, len(tr.times) // 50)]:
            st = classical.MatFreeState(X0, V0).at(t)
            c = classical.calogero_reduce(st, prev)
            prev = (np.diag([c.q1, c.q2]), c.phi)
            lj.append(c.l)
            l_drift = max(l_drift, abs(abs(c.l) - abs(ls[j])))
            m_drift = max(m_drift, float(np.max(np.abs(st.M() - M0))))
        if j == 0:
            first_l = lj
    m = Measurement({"eigen_error": float(err.max()), "l_drift": l_drift, "commutator_drift": m_drift},
                    ["t", "q1", "q2", "p1", "p2", "l_drift"])
    for i, t in enumerate(tr.times):
        if i % max(1, len(tr.times) // 200) == 0 or i == len(tr.times) - 1:
            q1, q2, p1, p2 = tr.states[i, 0]
            X = X0s[0] + t * V0s[0]
            c = classical.calogero_reduce(classical.MatFreeState(X, V0s[0]))
            m.rows.append((t, q1, q2, p1, p2, abs(abs(c.l) - abs(ls[0]))))
    return m


def hj_gradient(rng, n: int = 50, h: float = 1e-4) -> Measurement:
    """Finite-difference gradient of S in Xt entries against P = (Xt - X0)/t."""
    rng = _rng(rng)
    worst = 0.0
    m = Measurement(columns=["sample", "S", "grad_error"])
    for k in range(n):
        X0 = classical.sym_from_coords(*rng.uniform(-1, 1, 3))
        Xt = classical.sym_from_coords(*rng.uniform(-1, 1, 3))
        t = rng.uniform(0.5, 2.0)
        P = (Xt - X0) / t
        err = 0.0
        for i in range(2):
            for j in range(2):
                E = np.zeros((2, 2))
                E[i, j] = 1.0
                fd = numerics.finite_diff(lambda s: classical.hj_action(Xt + s[0] * E, X0, t), np.zeros(1), h=h)
                err = max(err, abs(fd - P[j, i]))
        worst = max(worst, err)
        m.rows.append((k, classical.hj_action(Xt, X0, t), err))
    m.values["grad_error"] = worst
    return m


def monopole_drift(r0=None, v0=None, k: float = 0.5, mass: float = 1.0, T: float = 10.0,
                   dt: float = 1e-3) -> Measurement:
    r0 = np.array([1.0, 0.2, -0.3] if r0 is None else r0, dtype=float)
    v0 = np.array([0.1, 0.8, 0.3] if v0 is None else v0, dtype=float)
    inv = {"J": lambda y: classical.monopole_invariant(y[:3], y[3:], k, mass)}
    tr = numerics.integrate_rk4(classical.monopole_field(k, mass), np.r_[r0, v0], 0.0, T, dt,
                                invariants=inv, sample_every=10)
    J0 = inv["J"](tr.states[0])
    m = Measurement({"J_drift": tr.drift["J"]}, ["t", "x", "y", "z", "vx", "vy", "vz", "J_drift"])
    for t, y in zip(tr.times, tr.states):
        m.rows.append((t, *y, float(np.max(np.abs(inv["J"](y) - J0)))))
    return m


def monopole_random_drift(rng, n: int = 10, T: float = 10.0, dt: float = 1e-3) -> float:
    """Largest J drift over a batch of random states kept at distance >= 0.5 from the origin."""
    rng = _rng(rng)
    rs, vs, ks = [], [], []
    while len(rs) < n:
        r, v = rng.normal(size=3), rng.normal(size=3)
        if np.linalg.norm(np.cross(r, v)) / np.linalg.norm(v) < 0.5:
            continue
        rs.append(r)
        vs.append(v)
        ks.append(rng.uniform(-1, 1))
    k = np.array(ks)
    inv = {"J": lambda y: classical.monopole_invariant(y[:, :3], y[:, 3:], k)}
    tr = numerics.integrate_rk4(classical.monopole_field(k), np.concatenate([rs, vs], axis=1), 0.0, T, dt,
                                invariants=inv, sample_every=1000)
    return tr.drift["J"]


def ts2_tangency(rng, n: int = 100) -> Measurement:
    pts = classical.sample_ts2(_rng(rng), n)
    cons = classical.TS2_CONSTRAINTS
    rot = max(classical.tangency_check(classical.rotation_generator(l), cons, pts) for l in range(3))
    boost = max(classical.tangency_check(classical.boost_generator(l), cons, pts) for l in range(3))
    bad = classical.tangency_check(classical.non_tangent_field, cons, pts)
    m = Measurement({"rotation": rot, "boost": boost, "non_tangent": bad},
                    ["sample", "R1", "R2", "R3", "V1", "V2", "V3", "non_tangent"])
    for i, z in enumerate(pts):
        row = [i]
        for gen in [classical.rotation_generator(l) for l in range(3)] + \
                   [classical.boost_generator(l) for l in range(3)] + [classical.non_tangent_field]:
            row.append(classical.tangency_check(gen, cons, [z]))
        m.rows.append(tuple(row))
    return m


def pendulum_drift(rng, T: float = 10.0, dt: float = 1e-3, gravity: float = 1.0) -> Measurement:
    z = classical.sample_ts2(_rng(rng), 1)[0]
    inv = {"E": lambda s: classical.energy_momentum_map(s, gravity)[0],
           "L": lambda s: classical.energy_momentum_map(s, gravity)[1]}
    tr = numerics.integrate_rk4(classical.pendulum_field(gravity), z, 0.0, T, dt, invariants=inv,
                                project=classical.project_ts2, sample_every=10)
    E0, L0 = classical.energy_momentum_map(tr.states[0], gravity)
    m = Measurement({"E_drift": tr.drift["E"], "L_drift": tr.drift["L"]},
                    ["t", "x1", "x2", "x3", "v1", "v2", "v3", "E_drift", "L_drift"])
    for t, s in zip(tr.times, tr.states):
        E, L = classical.energy_momentum_map(s, gravity)
        m.rows.append((t, *s, abs(E - E0), abs(L - L0)))
    return m


def hopf_reduction(rng, T: float = 3.0, dt: float = 1e-3) -> Measurement:
    """TS^3 flow in the K = 0 sector, its drifts and the projected pendulum residual."""
    z0 = classical.random_ts3(_rng(rng), K=0.0)
    inv = {"sigma": classical.sigma_k, "H": classical.ts3_hamiltonian}
    tr = numerics.integrate_rk4(classical.ts3_hamiltonian_field(), z0, 0.0, T, dt, invariants=inv,
                                project=classical.project_ts3)
    xs = classical.hopf_map(tr.states[:, :4])
    acc = (xs[2:] - 2 * xs[1:-1] + xs[:-2]) / dt**2
    vel = (xs[2:] - xs[:-2]) / (2 * dt)
    field = classical.pendulum_field(classical.HOPF_GRAVITY)
    pend = field(0.0, np.concatenate([xs[1:-1], vel], axis=1))[:, 3:]
    res = float(np.max(np.abs(acc - pend)))
    m = Measurement({"sigma_drift": tr.drift["sigma"], "H_drift": tr.drift["H"], "pendulum_residual": res},
                    ["t", "y0", "y1", "y2", "y3", "x1", "x2", "x3", "sigma"])
    for i in range(0, len(tr.times), 10):
        m.rows.append((tr.times[i], *tr.states[i, :4], *xs[i], float(classical.sigma_k(tr.states[i]))))
    return m


# ----------------------------------------------------------------------------
# Lie-Scheffers systems


def _random_systems(rng, n_constant: int, n_sinusoidal: int):
    """Stacked constant and sinusoidal coefficient matrices as one batched system."""
    A0 = rng.uniform(-1, 1, (n_constant + n_sinusoidal, 2, 2))
    A1 = rng.uniform(-1, 1, (n_constant + n_sinusoidal, 2, 2))
    A1[:n_constant] = 0.0
    w = rng.uniform(0.5, 3.0, n_constant + n_sinusoidal)[:, None, None]
    return lie_scheffers.LinearSystem2(lambda t: A0 + np.sin(w * t) * A1)


def riccati_commutes(system, x0, T: float = 1.0, dt: float = 1e-4) -> float:
    """Chordal distance between projected linear flow and integrated Riccati flow."""
    x0 = np.asarray(x0, dtype=float)
    tr = numerics.integrate_rk4(system.field, x0, 0.0, T, dt)
    with np.errstate(divide="ignore"):
        xi0 = np.where(x0[..., 1] == 0, lie_scheffers.POLE, x0[..., 0] / np.where(x0[..., 1] == 0, 1, x0[..., 1]))
    _, vals = lie_scheffers.integrate_riccati(lie_scheffers.riccati_from_linear(system), xi0, 0.0, T, dt)
    return float(np.max(lie_scheffers.chordal_distance_vec(tr.states, vals)))


def riccati_projection(rng, n_constant: int = 50, n_sinusoidal: int = 20, T: float = 1.0,
                       dt: float = 1e-4) -> float:
    rng = _rng(rng)
    system = _random_systems(rng, n_constant, n_sinusoidal)
    return riccati_commutes(system, rng.normal(size=(n_constant + n_sinusoidal, 2)), T, dt)


def riccati_cross_ratio(A=((0.0, 1.0), (-1.0, 0.0)), starts=(0.1, 0.5, -0.7, 2.0), T: float = 1.0,
                        dt: float = 1e-4) -> Measurement:
    """Four Riccati solutions of a constant system and the drift of their cross-ratio."""
    system = lie_scheffers.LinearSystem2.constant(np.asarray(A, dtype=float))
    coeffs = lie_scheffers.riccati_from_linear(system)
    times, vals = lie_scheffers.integrate_riccati(coeffs, np.array(starts, dtype=float), 0.0, T, dt)
    K = np.array([lie_scheffers.projective_cross_ratio(*row) for row in vals])
    drift = np.abs(K - K[0])
    A_stack = np.repeat(np.asarray(A, dtype=float)[None], len(starts), axis=0)
    stacked = lie_scheffers.LinearSystem2.constant(A_stack)
    proj = riccati_commutes(stacked, np.array([[s, 1.0] for s in starts]), T, dt)
    m = Measurement({"cross_ratio_drift": float(drift.max()), "projection": proj},
                    ["t", "xi1", "xi2", "xi3", "xi4", "cross_ratio_drift"])
    for i in range(0, len(times), max(1, len(times) // 200)):
        m.rows.append((times[i], *vals[i], drift[i]))
    return m


def burgers_checks(n: int = 801, L: float = 5.0, k: float = 1.0, t0: float = 1.0, T: float = 0.5,
                   l1: float = 0.3, l2: float = -0.2) -> Measurement:
    """Cole-Hopf images of grid heat solutions and of their superposition."""
    G = lie_scheffers.Grid1D
    u0 = G.from_function(lambda x: 1.0 + lie_scheffers.heat_kernel(x, t0, k), -L, L, n)
    v0 = G.from_function(lambda x: 0.5 + lie_scheffers.heat_kernel(x - 1.0, t0, k), -L, L, n)
    dt = 0.25 * u0.dx**2 / k
    steps = int(round(T / dt))
    uT = lie_scheffers.heat_evolve(u0, k, dt, steps)
    uT1 = lie_scheffers.heat_evolve(uT, k, dt, 1)
    vT = lie_scheffers.heat_evolve(v0, k, dt, steps)
    vT1 = lie_scheffers.heat_evolve(vT, k, dt, 1)
    wu, wu1 = lie_scheffers.cole_hopf(uT, k), lie_scheffers.cole_hopf(uT1, k)
    wv, wv1 = lie_scheffers.cole_hopf(vT, k), lie_scheffers.cole_hopf(vT1, k)
    r_u = lie_scheffers.burgers_residual(wu, wu1, k, dt)
    r_v = lie_scheffers.burgers_residual(wv, wv1, k, dt)
    s0 = lie_scheffers.burgers_superpose(wu, wv, l1, l2, k)
    s1 = lie_scheffers.burgers_superpose(wu1, wv1, l1, l2, k)
    r_s = lie_scheffers.burgers_residual(s0, s1, k, dt)
    exact = -k * np.log(1.0 + lie_scheffers.heat_kernel(uT.x, t0 + steps * dt, k))
    inter = float(np.max(np.abs(wu.values - exact)))
    m = Measurement({"residual_u": r_u, "residual_v": r_v, "residual_superposed": r_s,
                     "intertwining": inter}, ["x", "w_u", "w_v", "w_superposed"])
    for i in range(0, n, max(1, n // 200)):
        m.rows.append((uT.x[i], wu.values[i], wv.values[i], s0.values[i]))
    return m


def burgers_kernel_oracle(n: int = 801, L: float = 5.0, k: float = 1.0, t0: float = 1.0,
                          dt: float = 1e-5) -> float:
    """Residual of the Cole-Hopf image of the exact heat kernel at two nearby times."""
    G = lie_scheffers.Grid1D
    a = G.from_function(lambda x: lie_scheffers.heat_kernel(x, t0, k), -L, L, n)
    b = G.from_function(lambda x: lie_scheffers.heat_kernel(x, t0 + dt, k), -L, L, n)
    return lie_scheffers.burgers_residual(lie_scheffers.cole_hopf(a, k), lie_scheffers.cole_hopf(b, k), k, dt)


# ----------------------------------------------------------------------------
# differential operators


def ks_projectability(degree: int = 4, k: int = 1) -> float:
    return _frac_float(diffops.projectability_check(diffops.conformal_kepler_op(k), diffops.hydrogen_op(k),
                                                    basis_degree=degree))


def hydrogen_levels(k: float = 1.0, r_max: float = 60.0, n: int = 4000, count: int = 3) -> Measurement:
    vals = diffops.hydrogen_radial_solve(k, r_max, n, count)
    m = Measurement(columns=["m", "numeric", "exact", "abs_error"])
    for j, v in enumerate(vals):
        ex = diffops.hydrogen_level(k, j)
        m.values[f"level_{j}"] = abs(v - ex)
        m.rows.append((j, v, ex, abs(v - ex)))
    return m


def sector_similarity(m_max: int = 3) -> float:
    worst = Fraction(0)
    for mm in range(m_max + 1):
        for j in range(-4, 9):
            worst = max(worst, diffops.radial_sector_check(mm, diffops.HalfPowerPoly.power(Fraction(j, 2))))
    return float(worst)


def bessel_identity(m_values=range(6), PQ_values=(0.5, 1.0, 5.0), n: int = 256) -> float:
    return max(quantum.bessel_sector_identity(m, 1.0, x, n) for m in m_values for x in PQ_values)


def sector_propagator_error(m: int = 1, Qt: float = 1.0, Q0: float = 1.5, t: float = 0.7,
                            printed: bool = False) -> float:
    return abs(quantum.sector_propagator(m, Qt, Q0, t, printed) - quantum.sector_propagator_oracle(m, Qt, Q0, t))


def rp_leibniz(rng, n: int = 500, dim: int = 3) -> int:
    """Number of failing Leibniz checks for random RadialPoly pairs."""
    rng = _rng(rng)
    fails = 0
    for _ in range(n):
        f, g = (_random_radial(rng, dim) for _ in range(2))
        j = int(rng.integers(dim))
        if diffops.rp_derive(f * g, j) != diffops.rp_derive(f, j) * g + f * diffops.rp_derive(g, j):
            fails += 1
    return fails


def _random_radial(rng, dim: int) -> diffops.RadialPoly:
    out = diffops.RadialPoly(dim)
    for _ in range(3):
        alpha = rng.integers(0, 3, dim)
        s = int(rng.integers(-2, 2))
        out = out + diffops.RadialPoly.monomial(alpha, s, int(rng.integers(-3, 4)))
    return out


def random_operator(rng, dim: int, order: int) -> diffops.LinDiffOp:
    terms = {}
    for _ in range(3):
        sigma = [0] * dim
        for _ in range(int(rng.integers(0, order + 1))):
            sigma[int(rng.integers(dim))] += 1
        terms[tuple(sigma)] = _random_radial(rng, dim)
    top = [0] * dim
    top[0] = order
    terms[tuple(top)] = diffops.RadialPoly.const(dim, int(rng.integers(1, 4)))
    return diffops.LinDiffOp(dim, terms)


def order_detection(rng, n: int = 50, dim: int = 2) -> int:
    """Number of random operators whose order is misdetected."""
    rng = _rng(rng)
    fails = 0
    for i in range(n):
        order = 1 + i % 3
        D = random_operator(rng, dim, order)
        if not (diffops.order_detect(D, D.order) and not diffops.order_detect(D, D.order - 1)):
            fails += 1
    return fails


# ----------------------------------------------------------------------------
# star algebra


def _max_coeff(p) -> float:
    return max((abs(c) for s in p.terms.values() for c in s.coeffs), default=0.0)


def normal_form_projection(seed: int, n: int = 500) -> float:
    rng = random.Random(seed)
    worst = 0.0
    for R in (oscillator.oscillator_system(0.5, 1.0), woronowicz.woronowicz_system()):
        for _ in range(n):
            p = ncpoly.random_ncpoly(R.order, rng, max_len=4)
            nf = R.normal_form(p)
            worst = max(worst, _max_coeff(R.normal_form(nf) - nf))
    return worst


def quotient_well_defined(seed: int, n: int = 20) -> float:
    rng = random.Random(seed)
    systems = [
        (oscillator.oscillator_system(0.5, 1.0), [oscillator.oscillator_relation(0.5, 1.0)]),
        (woronowicz.woronowicz_system(), list(woronowicz.defining_relations().values())),
    ]
    worst = 0.0
    for R, rels in systems:
        for rel in rels:
            for _ in range(n):
                x = ncpoly.random_ncpoly(R.order, rng, max_len=2, n_terms=2)
                y = ncpoly.random_ncpoly(R.order, rng, max_len=2, n_terms=2)
                worst = max(worst, _max_coeff(R.normal_form(x * rel * y)))
    return worst


def confluence(seed: int, trials: int = 200) -> bool:
    return all(ncpoly.confluence_probe(R, trials=trials, seed=seed)
               for R in (oscillator.oscillator_system(0.5, 1.0), woronowicz.woronowicz_system()))


def oscillator_checks(q: float = 1.0, r: float = 1.0, omega: float = 1.0) -> Measurement:
    A, AD = oscillator.A, oscillator.AD
    osc = oscillator.osc
    R = oscillator.oscillator_system(q, r)
    d = oscillator.oscillator_derivation(omega)
    rel = oscillator.oscillator_relation(q, r)
    vals = {
        "ideal_invariance": _max_coeff(R.normal_form(d(rel))),
        "static_number_word": _max_coeff(R.normal_form(d(osc(A, AD)))),
        "ladder": _max_coeff(R.normal_form(ncpoly.nc_commutator(osc(A), osc(AD))) - r)
        if q == 1.0 else float("nan"),
        "number_lowering": _max_coeff(R.normal_form(ncpoly.nc_commutator(osc(AD, A), osc(A))) + osc(A) * r)
        if q == 1.0 else float("nan"),
    }
    R0 = oscillator.oscillator_system(1.0, 0.0)
    vals["commutative_limit"] = _max_coeff(R0.normal_form(ncpoly.nc_commutator(osc(A), osc(AD))))
    m = Measurement(vals, ["index", "residual"])
    m.rows = [(i, v) for i, v in enumerate(vals.values())]
    return m


def woronowicz_relations(which: str = "derived") -> Dict[str, float]:
    return {name: _max_coeff(p) for name, p in woronowicz.su2q_relation_checks(which).items()}


def woronowicz_flows(order: int = 4) -> Dict[str, float]:
    return {name: _max_coeff(p) for name, p in woronowicz.flow_consistency_check(order).items()}


def s3_jacobi(seed: int, n: int = 100, table=None) -> int:
    """Number of random cubic triples with a nonzero Jacobiator."""
    rng = random.Random(seed)
    P = lambda f, g: woronowicz.s3_poisson(f, g, table)
    fails = 0
    for _ in range(n):
        f, g, h = (commpoly.random_commpoly(woronowicz.S3_VARS, rng, degree=3, n_terms=3) for _ in range(3))
        jac = P(f, P(g, h)) + P(g, P(h, f)) + P(h, P(f, g))
        if not jac.is_zero():
            fails += 1
    return fails


def s3_table_checks(table=None) -> Dict[str, bool]:
    """Casimir, reduced S^2 brackets and classical-limit compatibility."""
    S3 = woronowicz.S3_VARS
    P = lambda f, g: woronowicz.s3_poisson(f, g, table)
    C = woronowicz.casimir_s3()
    u, v, z = woronowicz.s2_functions()
    one_u = 1 - u
    wu, ww, wws = woronowicz.su2q_elements()
    lim = woronowicz.classical_limit(ncpoly.nc_commutator(ww, wu))
    return {
        "casimir": all(P(C, commpoly.CommPoly.var(S3, x)).is_zero() for x in S3),
        "vu": woronowicz.equal_on_sphere(P(v, u), one_u * z * 2),
        "uz": woronowicz.equal_on_sphere(P(u, z), one_u * v * 2),
        "zv": woronowicz.equal_on_sphere(P(z, v), one_u * u * 2),
        "sphere_identity": (u * u + v * v + z * z - C * C).is_zero(),
        "limit_wu": woronowicz.equal_on_sphere(lim, one_u * (z + v * 1j) * 2),
    }


def classical_table_match(table_a, table_b) -> Dict[str, bool]:
    """Entrywise comparison modulo the sphere relation."""
    out = {}
    for (a, b), val in table_b.items():
        out[f"{{{a},{b}}}"] = woronowicz.equal_on_sphere(woronowicz.table_bracket(table_a, a, b), val)
    return out


def s3_s2_intertwining(rng, T: float = 2.0, steps: int = 200) -> Measurement:
    rng = _rng(rng)
    s = rng.normal(size=4)
    s /= np.linalg.norm(s)
    uvz0 = woronowicz.s2_map(s)
    m = Measurement(columns=["t", "q1", "q2", "p1", "p2", "u", "v", "z", "intertwine_error"])
    worst = 0.0
    for t in np.linspace(0.0, T, steps + 1):
        st = woronowicz.s3_classical_flow(s, t)
        a = woronowicz.s2_map(st)
        b = woronowicz.s2_reduced_flow(uvz0, t)
        e = float(np.max(np.abs(a - b)))
        worst = max(worst, e)
        m.rows.append((t, *st, *a, e))
    m.values["intertwine_error"] = worst
    return m


def stereographic_check(rng, n: int = 100, printed: bool = False) -> float:
    rng = _rng(rng)
    worst = 0.0
    gamma = woronowicz.gamma_printed if printed else woronowicz.gamma_derived
    for _ in range(n):
        p = rng.normal(size=3)
        p /= np.linalg.norm(p)
        if 1.0 - p[0] < 1e-3:
            continue
        x, y = woronowicz.stereographic_project(*p)
        worst = max(worst, float(np.max(np.abs(woronowicz.stereographic_pushforward(p) - gamma(x, y)))))
    return worst


def moyal_associativity(seed: int, n: int = 100) -> int:
    rng = random.Random(seed)
    fails = 0
    for _ in range(n):
        f, g, h = (commpoly.random_commpoly(moyal.MOYAL_VARS, rng, degree=3, n_terms=3) for _ in range(3))
        lhs = moyal.moyal_product(moyal.moyal_product(f, g), h)
        rhs = moyal.moyal_product(f, moyal.moyal_product(g, h))
        if not (lhs - rhs).is_zero():
            fails += 1
    return fails


def moyal_first_order(seed: int, n: int = 100) -> int:
    """Pairs whose theta^1 commutator part differs from i times the canonical bracket."""
    rng = random.Random(seed)
    fails = 0
    for _ in range(n):
        f, g = (commpoly.random_commpoly(moyal.MOYAL_VARS, rng, degree=3, n_terms=3) for _ in range(2))
        first = moyal.moyal_commutator(f, g).param_coefficient(1)
        if not (first - moyal.canonical_bracket(f, g) * 1j).is_zero():
            fails += 1
    return fails


def reduced_star_checks(calibration: Optional[float] = None) -> Dict[str, float]:
    c = moyal.calibrate_reduced_star() if calibration is None else calibration
    worst_first, worst_all = 0.0, 0.0
    for j in (1, 2, 3):
        for F in moyal.default_su2_basis():
            res = moyal.reduced_star_verify(j, F, c)
            worst_first = max(worst_first, res.param_coefficient(1).max_abs())
            worst_all = max(worst_all, res.max_abs())
    xs = commpoly.CommPoly.gens(moyal.SU2_VARS)
    square = max(
        (moyal.reduced_star_formula(j, xs[j - 1]) - (xs[j - 1] * xs[j - 1] - moyal.THETA * moyal.THETA * 0.125)).max_abs()
        for j in (1, 2, 3))
    return {"calibration": c, "first_order": worst_first, "full": worst_all, "square": square}


# ----------------------------------------------------------------------------
# quantum geometry


def bracket_vs_matrix(rng, n_pairs: int = 500, dims=(2, 3, 4, 8)) -> Dict[str, float]:
    rng = _rng(rng)
    eps = quantum.measure_epsilon()
    w_om, w_g = 0.0, 0.0
    for i in range(n_pairs):
        n = dims[i % len(dims)]
        A, B = quantum.random_hermitian(n, rng), quantum.random_hermitian(n, rng)
        psi = quantum.random_state(n, rng)
        w_om = max(w_om, abs(quantum.bracket_omega(A, B, psi) - eps * quantum.f_A(-1j * quantum.commutator(A, B), psi)))
        w_g = max(w_g, abs(quantum.bracket_g(A, B, psi) - quantum.f_A(A @ B + B @ A, psi)))
    return {"epsilon": eps, "omega": w_om, "g": w_g}


def unitarity(rng, n: int = 4, T: float = 10.0, steps: int = 50) -> float:
    rng = _rng(rng)
    H, A = quantum.random_hermitian(n, rng), quantum.random_hermitian(n, rng)
    psi = quantum.random_state(n, rng)
    rho = quantum.momentum_map(psi, normalized=True)
    n0 = float(np.vdot(psi, psi).real)
    ev0 = np.linalg.eigvalsh(A)
    worst = 0.0
    for t in np.linspace(0.0, T, steps + 1):
        p = quantum.evolve_schrodinger(H, psi, t)
        At = quantum.evolve_heisenberg(H, A, t)
        r = quantum.evolve_vonneumann(H, rho, t)
        worst = max(worst,
                    abs(float(np.vdot(p, p).real) - n0) / n0,
                    float(np.max(np.abs(np.linalg.eigvalsh(0.5 * (At + At.conj().T)) - ev0))),
                    abs(np.trace(r).real - 1.0),
                    abs(np.trace(r @ r).real - 1.0))
    return worst


def quantum_pictures(rng, n: int = 4, T: float = 5.0, dt: float = 0.1, hbar: float = 1.0) -> Measurement:
    rng = _rng(rng)
    H, A = quantum.random_hermitian(n, rng), quantum.random_hermitian(n, rng)
    psi0 = quantum.random_state(n, rng)
    times = np.round(np.arange(0.0, T + 0.5 * dt, dt), 12)
    dev = quantum.picture_equivalence(H, A, psi0, times, hbar)
    ehr = max(quantum.ehrenfest_residual(H, A, psi0, t, hbar=hbar) for t in times[::10])
    m = Measurement({"picture_deviation": dev, "ehrenfest": ehr},
                    ["t", "schrodinger", "heisenberg", "vonneumann", "norm"])
    nrm = float(np.vdot(psi0, psi0).real)
    rho0 = quantum.momentum_map(psi0, normalized=True)
    for t in times:
        p = quantum.evolve_schrodinger(H, psi0, t, hbar)
        m.rows.append((t, quantum.e_A(A, p),
                       float(np.vdot(psi0, quantum.evolve_heisenberg(H, A, t, hbar) @ psi0).real) / nrm,
                       float(np.trace(quantum.evolve_vonneumann(H, rho0, t, hbar) @ A).real),
                       float(np.vdot(p, p).real)))
    return m


def momentum_pullback(rng, n_triples: int = 100, n: int = 3) -> float:
    rng = _rng(rng)
    return max(quantum.momentum_pullback_residual(quantum.random_hermitian(n, rng), quantum.random_hermitian(n, rng),
                                                  quantum.random_state(n, rng)) for _ in range(n_triples))


def leibniz_star(rng, n_triples: int = 100, n: int = 4) -> float:
    rng = _rng(rng)
    return max(quantum.leibniz_check(*(quantum.random_hermitian(n, rng) for _ in range(3)),
                                     quantum.random_state(n, rng)) for _ in range(n_triples))


def e_A_invariance(rng, n_points: int = 100, n: int = 3) -> float:
    rng = _rng(rng)
    worst = 0.0
    for _ in range(n_points):
        a, b = quantum.e_A_invariance(quantum.random_hermitian(n, rng), quantum.random_state(n, rng))
        worst = max(worst, abs(a), abs(b))
    return worst


def kahler_checks(rng, n_points: int = 100, n: int = 3, h: float = 1e-4) -> Dict[str, float]:
    rng = _rng(rng)
    unit = quantum.kahler_potential_check(np.array([1.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0]), h)
    worst, fiber, scale = unit, 0.0, 0.0
    for _ in range(n_points):
        # unit state and directions keep the finite-difference error at O(h^2)
        psi = quantum.random_state(n, rng)
        psi /= np.linalg.norm(psi)
        X, Y = (v / np.linalg.norm(v) for v in (rng.normal(size=2 * n), rng.normal(size=2 * n)))
        worst = max(worst, quantum.kahler_potential_check(psi, X, Y, h))
        fiber = max(fiber, abs(quantum.kahler_two_form_fd(psi, quantum.dilation(psi), Y, h)))
        # dilation pushes (psi, X, Y) to (2 psi, 2 X, 2 Y)
        scale = max(scale, abs(quantum.kahler_two_form_fd(2 * psi, 2 * X, 2 * Y, h)
                               - quantum.kahler_two_form_fd(psi, X, Y, h)))
    return {"potential": worst, "fiber": fiber, "scaling": scale, "unit": unit}


def theta_values(rng, n: int = 3) -> Dict[str, float]:
    psi = quantum.random_state(n, _rng(rng))
    return {"delta": abs(quantum.theta_eval(psi, quantum.dilation(psi)) - 1.0),
            "j_delta": abs(quantum.theta_eval(psi, quantum.phase_generator(psi)) - 1j)}


def fubini_study_psd(rng, n_points: int = 100, n: int = 3) -> Dict[str, float]:
    """Minimum of h(X, X) on random X and its largest value on the fiber directions."""
    rng = _rng(rng)
    lowest, fiber = math.inf, 0.0
    for _ in range(n_points):
        psi = quantum.random_state(n, rng)
        X = rng.normal(size=2 * n)
        lowest = min(lowest, quantum.fubini_study(psi, X, X).real)
        a, b = rng.normal(size=2)
        F = a * quantum.dilation(psi) + b * quantum.phase_generator(psi)
        fiber = max(fiber, abs(quantum.fubini_study(psi, F, F)))
    return {"min_value": lowest, "fiber_value": fiber}
