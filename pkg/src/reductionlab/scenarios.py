"""Registered scenarios: named runs with parameters, checks and a CSV table."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence

import numpy as np

from . import protocols as P
from .errors import ConfigError
from .numerics import ToleranceConfig
from .star import moyal, woronowicz

SEED_ENV = "REDUCTIONLAB_SEED"
DEFAULT_SEED = 42


def seed_from_env() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"{SEED_ENV} must be an integer, got {raw!r}") from exc


@dataclass
class Check:
    """A measured value compared with a bound; ``kind`` 'max' means value <= bound."""

    name: str
    value: float
    bound: float
    kind: str = "max"

    @property
    def passed(self) -> bool:
        v = float(self.value)
        if math.isnan(v):
            return False
        return v <= self.bound if self.kind == "max" else v >= self.bound

    def as_dict(self) -> dict:
        return {"name": self.name, "value": float(self.value), "bound": self.bound,
                "kind": self.kind, "passed": self.passed}


@dataclass
class ScenarioResult:
    columns: List[str]
    rows: List[Sequence[float]]
    checks: List[Check]
    info: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass(frozen=True)
class Scenario:
    name: str
    anchor: str
    defaults: Mapping[str, object]
    func: Callable[[dict, np.random.Generator, ToleranceConfig], ScenarioResult]

    def resolve(self, params: Optional[Mapping[str, object]] = None) -> dict:
        """Defaults overridden by ``params``; unknown keys and bad types raise ConfigError."""
        out = dict(self.defaults)
        for key, value in (params or {}).items():
            if key not in self.defaults:
                raise ConfigError(f"unknown parameter {key!r} for scenario {self.name!r}")
            out[key] = _coerce(key, value, self.defaults[key])
        return out


def _coerce(key: str, value, default):
    if isinstance(value, str) and not isinstance(default, str):
        try:
            value = json.loads(value)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"parameter {key!r}: cannot parse {value!r}") from exc
    try:
        if isinstance(default, bool):
            if not isinstance(value, bool):
                raise TypeError
            return value
        if isinstance(default, int):
            if isinstance(value, bool) or int(value) != value:
                raise TypeError
            return int(value)
        if isinstance(default, float):
            if isinstance(value, bool):
                raise TypeError
            return float(value)
        if isinstance(default, str):
            return str(value)
        if isinstance(default, (list, tuple)):
            arr = np.asarray(value, dtype=float)
            if arr.shape != np.asarray(default, dtype=float).shape:
                raise TypeError
            return arr.tolist()
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"parameter {key!r}: invalid value {value!r}") from exc
    return value


# ----------------------------------------------------------------------------
# scenario bodies


def _radial(p, rng, tol):
    m = P.radial_free_flight(rng, p["n"], p["T"], p["dt"], p["kind"])
    return ScenarioResult(m.columns, m.rows, [Check("radial-free-flight-match", m.values["max_error"], tol.check_tol)])


def _sl2(p, rng, tol):
    b = P.sl2_brackets(rng, p["n_points"])
    m = P.sl2_flow_match(rng, p["T"], p["steps"])
    return ScenarioResult(m.columns, m.rows, [
        Check("sl2-brackets", b.values["bracket_residual"], tol.symbolic_tol),
        Check("sl2-flow-lift", m.values["flow_residual"], 1e-9),
        Check("sl2-casimir-drift", m.values["casimir_drift"], 1e-9),
    ])


def _calogero(p, rng, tol):
    m = P.calogero_match(rng, p["n"], p["T"], p["dt"])
    return ScenarioResult(m.columns, m.rows, [
        Check("calogero-eigenvalue-match", m.values["eigen_error"], tol.check_tol),
        Check("calogero-l-drift", m.values["l_drift"], 1e-10),
        Check("calogero-commutator-constant", m.values["commutator_drift"], 1e-12),
    ])


def _hj(p, rng, tol):
    m = P.hj_gradient(rng, p["n"], p["h"])
    return ScenarioResult(m.columns, m.rows, [Check("hj-gradient", m.values["grad_error"], tol.check_tol)])


def _riccati(p, rng, tol):
    m = P.riccati_cross_ratio(p["A"], tuple(p["starts"]), p["T"], p["dt"])
    return ScenarioResult(m.columns, m.rows, [
        Check("riccati-projection-commutes", m.values["projection"], tol.check_tol),
        Check("riccati-cross-ratio-drift", m.values["cross_ratio_drift"], tol.check_tol),
    ])


def _burgers(p, rng, tol):
    m = P.burgers_checks(p["n"], p["L"], p["k"], p["t0"], p["T"], p["l1"], p["l2"])
    return ScenarioResult(m.columns, m.rows, [
        Check("burgers-residual", max(m.values["residual_u"], m.values["residual_v"]), 2e-3),
        Check("burgers-superposition", m.values["residual_superposed"], 2e-3),
        Check("cole-hopf-intertwines", m.values["intertwining"], 2e-3),
    ])


def _monopole(p, rng, tol):
    m = P.monopole_drift(p["r0"], p["v0"], p["k"], p["m"], p["T"], p["dt"])
    return ScenarioResult(m.columns, m.rows, [Check("monopole-J-drift", m.values["J_drift"], 1e-7)])


def _ts2(p, rng, tol):
    m = P.ts2_tangency(rng, p["n"])
    return ScenarioResult(m.columns, m.rows, [
        Check("ts2-rotation-tangent", m.values["rotation"], 1e-10),
        Check("ts2-boost-tangent", m.values["boost"], 1e-10),
        Check("ts2-non-tangent-rejected", m.values["non_tangent"], 0.1, "min"),
    ])


def _pendulum(p, rng, tol):
    m = P.pendulum_drift(rng, p["T"], p["dt"], p["gravity"])
    return ScenarioResult(m.columns, m.rows, [
        Check("pendulum-energy-drift", m.values["E_drift"], 1e-7),
        Check("pendulum-momentum-drift", m.values["L_drift"], 1e-7),
    ])


def _hopf(p, rng, tol):
    m = P.hopf_reduction(rng, p["T"], p["dt"])
    return ScenarioResult(m.columns, m.rows, [
        Check("ts3-sigma-drift", m.values["sigma_drift"], 1e-7),
        Check("ts3-energy-drift", m.values["H_drift"], 1e-7),
        Check("hopf-pendulum-residual", m.values["pendulum_residual"], 1e-4),
    ])


def _ks(p, rng, tol):
    proj = P.ks_projectability(p["degree"])
    m = P.hydrogen_levels(p["k"], p["r_max"], p["n"])
    bounds = (1e-3, 1e-3, 2e-3)
    checks = [Check("ks-projectability", proj, tol.symbolic_tol)]
    checks += [Check(f"hydrogen-level-{j}", m.values[f"level_{j}"], b) for j, b in enumerate(bounds)]
    return ScenarioResult(m.columns, m.rows, checks)


def _sector(p, rng, tol):
    rows = [(mm, P.bessel_identity([mm], [p["PQ"]]), P.sector_propagator_error(mm, p["Qt"], p["Q0"], p["t"]))
            for mm in range(p["m_max"] + 1)]
    return ScenarioResult(["m", "bessel", "propagator"], rows, [
        Check("sector-similarity", P.sector_similarity(p["m_max"]), tol.symbolic_tol),
        Check("bessel-identity", max(r[1] for r in rows), 1e-8),
        Check("sector-propagator", max(r[2] for r in rows), tol.check_tol),
    ])


def _oscillator(p, rng, tol):
    m = P.oscillator_checks(p["q"], p["r"], p["omega"])
    checks = [Check(f"oscillator-{k.replace('_', '-')}", v, tol.symbolic_tol)
              for k, v in m.values.items() if not math.isnan(v)]
    return ScenarioResult(m.columns, m.rows, checks)


def _woronowicz(p, rng, tol):
    rel = P.woronowicz_relations("derived")
    flows = P.woronowicz_flows(p["order"])
    rows = [(i, v) for i, v in enumerate(rel.values())]
    checks = [Check("woronowicz-relations", max(rel.values()), tol.symbolic_tol),
              Check("woronowicz-flows", max(flows[k] for k in woronowicz.DERIVED_FLOWS), tol.symbolic_tol),
              Check("woronowicz-confluence", float(P.confluence(p["seed"], p["trials"])), 1.0, "min")]
    return ScenarioResult(["relation", "residual"], rows, checks)


def _s3s2(p, rng, tol):
    m = P.s3_s2_intertwining(rng, p["T"], p["steps"])
    tab = P.s3_table_checks()
    return ScenarioResult(m.columns, m.rows, [
        Check("s3-s2-intertwine", m.values["intertwine_error"], 1e-9),
        Check("stereographic-pushforward", P.stereographic_check(rng, p["n_points"]), 1e-9),
        Check("s3-casimir", float(tab["casimir"]), 1.0, "min"),
        Check("s2-reduced-brackets", float(tab["vu"] and tab["uz"] and tab["zv"]), 1.0, "min"),
        Check("classical-limit-compatible", float(tab["limit_wu"]), 1.0, "min"),
    ])


def _moyal(p, rng, tol):
    seed = p["seed"]
    rs = P.reduced_star_checks()
    rows = [(0, rs["calibration"]), (1, rs["first_order"]), (2, rs["full"]), (3, rs["square"])]
    closure = max(v.max_abs() for v in moyal.commutant_closure_check().values())
    return ScenarioResult(["index", "value"], rows, [
        Check("moyal-associativity", P.moyal_associativity(seed, p["n_random"]), 0.0),
        Check("moyal-first-order", P.moyal_first_order(seed, p["n_random"]), 0.0),
        Check("commutant-closure", closure, tol.symbolic_tol),
        Check("reduced-star-first-order", rs["first_order"], tol.symbolic_tol),
        Check("reduced-star-square", rs["square"], tol.symbolic_tol),
    ], {"calibration": rs["calibration"]})


def _pictures(p, rng, tol):
    m = P.quantum_pictures(rng, p["n"], p["T"], p["dt"], p["hbar"])
    return ScenarioResult(m.columns, m.rows, [
        Check("picture-equivalence", m.values["picture_deviation"], 1e-10),
        Check("ehrenfest", m.values["ehrenfest"], tol.check_tol),
        Check("unitarity", P.unitarity(rng, p["n"]), 1e-12),
    ])


def _kahler(p, rng, tol):
    br = P.bracket_vs_matrix(rng, p["n_points"])
    kc = P.kahler_checks(rng, p["n_points"], p["n"])
    th = P.theta_values(rng, p["n"])
    fs = P.fubini_study_psd(rng, p["n_points"], p["n"])
    rows = [(0, br["epsilon"]), (1, br["omega"]), (2, br["g"]), (3, kc["potential"]), (4, fs["min_value"])]
    return ScenarioResult(["index", "value"], rows, [
        Check("bracket-omega", br["omega"], 1e-10),
        Check("bracket-g", br["g"], 1e-10),
        Check("momentum-pullback", P.momentum_pullback(rng, p["n_points"], p["n"]), 1e-10),
        Check("theta-values", max(th.values()), tol.symbolic_tol),
        Check("kahler-potential", kc["potential"], tol.check_tol),
        Check("eA-invariance", P.e_A_invariance(rng, p["n_points"], p["n"]), 1e-8),
        Check("fubini-study-psd", fs["min_value"], -1e-12, "min"),
    ], {"epsilon": br["epsilon"]})


SCENARIOS: Dict[str, Scenario] = {s.name: s for s in [
    Scenario("radial-free", "radial reduction of free motion in R^3",
             {"n": 200, "T": 2.0, "dt": 1e-3, "kind": "fixed_l"}, _radial),
    Scenario("sl2-function-group", "sl(2,R) function group of the free particle",
             {"n_points": 1000, "T": 2.0, "steps": 200}, _sl2),
    Scenario("calogero", "symmetric-matrix reduction to the Calogero system",
             {"n": 20, "T": 2.0, "dt": 1e-3}, _calogero),
    Scenario("hamilton-jacobi", "Hamilton-Jacobi action of free matrix motion",
             {"n": 50, "h": 1e-4}, _hj),
    Scenario("riccati", "Riccati equation from a linear system",
             {"A": [[0.0, 1.0], [-1.0, 0.0]], "starts": [0.1, 0.5, -0.7, 2.0], "T": 1.0, "dt": 1e-4}, _riccati),
    Scenario("burgers", "Cole-Hopf map from heat flow to Burgers",
             {"n": 801, "L": 5.0, "k": 1.0, "t0": 1.0, "T": 0.5, "l1": 0.3, "l2": -0.2}, _burgers),
    Scenario("monopole", "charge-monopole system and its conserved vector",
             {"r0": [1.0, 0.2, -0.3], "v0": [0.1, 0.8, 0.3], "k": 0.5, "m": 1.0, "T": 10.0, "dt": 1e-3}, _monopole),
    Scenario("ts2-tangency", "tangent bundle of the sphere as a constrained submanifold",
             {"n": 100}, _ts2),
    Scenario("spherical-pendulum", "spherical pendulum on TS^2",
             {"T": 10.0, "dt": 1e-3, "gravity": 1.0}, _pendulum),
    Scenario("hopf-reduction", "TS^3 system reduced by the Hopf fibration",
             {"T": 3.0, "dt": 1e-3}, _hopf),
    Scenario("ks-hydrogen", "Kustaanheimo-Stiefel reduction of the conformal Kepler operator",
             {"degree": 4, "k": 1.0, "r_max": 60.0, "n": 4000}, _ks),
    Scenario("radial-sector", "angular sectors of free motion in the plane",
             {"m_max": 3, "PQ": 5.0, "Qt": 1.0, "Q0": 1.5, "t": 0.7}, _sector),
    Scenario("deformed-oscillator", "deformed oscillator algebra as a quotient",
             {"q": 1.0, "r": 1.0, "omega": 1.0}, _oscillator),
    Scenario("woronowicz", "quantum SU(2) relations and flows",
             {"order": 4, "trials": 200, "seed": 0}, _woronowicz),
    Scenario("s3-s2-flow", "quadratic Poisson structure on S^3 and its reduction to S^2",
             {"T": 2.0, "steps": 200, "n_points": 100}, _s3s2),
    Scenario("moyal-su2", "Moyal product on R^4 reduced to su(2)*",
             {"n_random": 20, "seed": 0}, _moyal),
    Scenario("quantum-pictures", "Schrodinger, Heisenberg and von Neumann pictures",
             {"n": 4, "T": 5.0, "dt": 0.1, "hbar": 1.0}, _pictures),
    Scenario("kahler-geometry", "Kahler structure of the realified Hilbert space",
             {"n": 3, "n_points": 100}, _kahler),
]}


def list_scenarios() -> List[Scenario]:
    return [SCENARIOS[k] for k in sorted(SCENARIOS)]


def get_scenario(name: str) -> Scenario:
    try:
        return SCENARIOS[name]
    except KeyError:
        raise ConfigError(f"unknown scenario {name!r}") from None


def run_scenario(name: str, params: Optional[Mapping[str, object]] = None,
                 tolerances: Optional[ToleranceConfig] = None, seed: Optional[int] = None) -> ScenarioResult:
    sc = get_scenario(name)
    resolved = sc.resolve(params)
    rng = np.random.default_rng(seed_from_env() if seed is None else seed)
    return sc.func(resolved, rng, tolerances or ToleranceConfig())
