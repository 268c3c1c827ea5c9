"""Property suites run by ``verify``, named ``<module>/<invariant>``."""

from __future__ import annotations

import fnmatch
import time
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from . import protocols as P
from .scenarios import Check
from .star import woronowicz


@dataclass(frozen=True)
class Suite:
    name: str
    func: Callable[[np.random.Generator, int], float]
    bound: float
    kind: str = "max"

    @property
    def module(self) -> str:
        return self.name.split("/", 1)[0]

    @property
    def invariant(self) -> str:
        return self.name.split("/", 1)[1]

    def run(self, seed: int) -> Check:
        value = float(self.func(np.random.default_rng(seed), seed))
        return Check(self.invariant, value, self.bound, self.kind)


def _flag(ok: bool) -> float:
    return 1.0 if ok else 0.0


def _woronowicz_derived(rng, seed):
    return max(P.woronowicz_relations("derived").values())


def _woronowicz_flows(rng, seed):
    vals = P.woronowicz_flows(4)
    return max(vals[k] for k in woronowicz.DERIVED_FLOWS)


def _s3_table(rng, seed):
    t = P.s3_table_checks()
    return _flag(all(t.values()) and P.s3_jacobi(seed, 30) == 0)


SUITES: List[Suite] = [
    # numeric core
    Suite("numeric-core/rk4-order", lambda r, s: abs(P.rk4_order_ratio() - 16.0), 1.0),
    Suite("numeric-core/quadrature-convergence", lambda r, s: P.quad_convergence(), 1e-10),
    Suite("numeric-core/eig-reconstruction", lambda r, s: P.eig_reconstruction(r, 1000), 1e-12),
    Suite("numeric-core/bessel-recurrence", lambda r, s: P.bessel_recurrence(r, 200), 1e-10),
    # classical reduction
    Suite("classical-reduction/radial-free-flight", lambda r, s: max(
        P.radial_free_flight(r, 200, kind=k).values["max_error"] for k in ("fixed_l", "fixed_E")), 1e-6),
    Suite("classical-reduction/radial-timedep", lambda r, s: P.radial_free_flight(r, 50, kind="timedep")
          .values["max_error"], 1e-6),
    Suite("classical-reduction/sl2-brackets", lambda r, s: P.sl2_brackets(r, 1000).values["bracket_residual"], 0.0),
    Suite("classical-reduction/sl2-flow", lambda r, s: P.sl2_flow_match(r).values["flow_residual"], 1e-9),
    Suite("classical-reduction/calogero-eigenvalue-match",
          lambda r, s: P.calogero_match(r, 100).values["eigen_error"], 1e-6),
    Suite("classical-reduction/calogero-coupling-drift", lambda r, s: P.calogero_match(r, 20).values["l_drift"], 1e-10),
    Suite("classical-reduction/hj-gradient", lambda r, s: P.hj_gradient(r, 50).values["grad_error"], 1e-6),
    Suite("classical-reduction/monopole-J-drift", lambda r, s: P.monopole_random_drift(r, 10), 1e-7),
    Suite("classical-reduction/ts2-tangency", lambda r, s: max(
        P.ts2_tangency(r, 100).values[k] for k in ("rotation", "boost")), 1e-10),
    Suite("classical-reduction/ts2-non-tangent-rejected", lambda r, s: P.ts2_tangency(r, 100)
          .values["non_tangent"], 0.1, "min"),
    Suite("classical-reduction/pendulum-drift", lambda r, s: max(P.pendulum_drift(r).values.values()), 1e-7),
    Suite("classical-reduction/ts3-drift", lambda r, s: max(
        P.hopf_reduction(r).values[k] for k in ("sigma_drift", "H_drift")), 1e-7),
    Suite("classical-reduction/hopf-pendulum", lambda r, s: P.hopf_reduction(r).values["pendulum_residual"], 1e-4),
    # lie-scheffers
    Suite("lie-scheffers/riccati-projection", lambda r, s: P.riccati_projection(r), 1e-6),
    Suite("lie-scheffers/cross-ratio-drift", lambda r, s: P.riccati_cross_ratio().values["cross_ratio_drift"], 1e-6),
    Suite("lie-scheffers/burgers-residual", lambda r, s: max(
        P.burgers_checks().values[k] for k in ("residual_u", "residual_v", "residual_superposed")), 2e-3),
    Suite("lie-scheffers/cole-hopf-intertwining", lambda r, s: P.burgers_checks().values["intertwining"], 2e-3),
    # diffops
    Suite("diffops/ks-projectability", lambda r, s: P.ks_projectability(4), 0.0),
    Suite("diffops/hydrogen-levels", lambda r, s: max(
        v / b for v, b in zip(P.hydrogen_levels().values.values(), (1e-3, 1e-3, 2e-3))), 1.0),
    Suite("diffops/sector-similarity", lambda r, s: P.sector_similarity(3), 0.0),
    Suite("diffops/bessel-identity", lambda r, s: P.bessel_identity(), 1e-8),
    Suite("diffops/sector-propagator", lambda r, s: max(P.sector_propagator_error(m) for m in range(4)), 1e-6),
    Suite("diffops/radial-leibniz", lambda r, s: P.rp_leibniz(r, 200), 0.0),
    Suite("diffops/order-detection", lambda r, s: P.order_detection(r, 50), 0.0),
    # star algebra
    Suite("star-algebra/normal-form-idempotent", lambda r, s: P.normal_form_projection(s, 200), 0.0),
    Suite("star-algebra/quotient-well-defined", lambda r, s: P.quotient_well_defined(s, 10), 0.0),
    Suite("star-algebra/confluence", lambda r, s: _flag(P.confluence(s, 100)), 1.0, "min"),
    Suite("star-algebra/oscillator", lambda r, s: max(
        v for v in P.oscillator_checks().values.values() if v == v), 0.0),
    Suite("star-algebra/woronowicz-relations", _woronowicz_derived, 0.0),
    Suite("star-algebra/woronowicz-flows", _woronowicz_flows, 0.0),
    Suite("star-algebra/s3-poisson-table", _s3_table, 1.0, "min"),
    Suite("star-algebra/s3-s2-intertwining", lambda r, s: P.s3_s2_intertwining(r).values["intertwine_error"], 1e-9),
    Suite("star-algebra/stereographic", lambda r, s: P.stereographic_check(r), 1e-9),
    Suite("star-algebra/moyal-associativity", lambda r, s: P.moyal_associativity(s, 20), 0.0),
    Suite("star-algebra/moyal-first-order", lambda r, s: P.moyal_first_order(s, 50), 0.0),
    Suite("star-algebra/reduced-star", lambda r, s: max(
        v for k, v in P.reduced_star_checks().items() if k != "calibration"), 0.0),
    # quantum geometry
    Suite("quantum-geometry/bracket-vs-commutator", lambda r, s: max(
        v for k, v in P.bracket_vs_matrix(r, 200).items() if k != "epsilon"), 1e-10),
    Suite("quantum-geometry/unitarity", lambda r, s: P.unitarity(r), 1e-12),
    Suite("quantum-geometry/picture-equivalence", lambda r, s: P.quantum_pictures(r).values["picture_deviation"], 1e-10),
    Suite("quantum-geometry/ehrenfest", lambda r, s: P.quantum_pictures(r).values["ehrenfest"], 1e-6),
    Suite("quantum-geometry/momentum-pullback", lambda r, s: P.momentum_pullback(r), 1e-10),
    Suite("quantum-geometry/star-leibniz", lambda r, s: P.leibniz_star(r), 1e-10),
    Suite("quantum-geometry/theta-values", lambda r, s: max(P.theta_values(r).values()), 0.0),
    Suite("quantum-geometry/kahler-potential", lambda r, s: P.kahler_checks(r, 50)["potential"], 1e-6),
    Suite("quantum-geometry/eA-invariance", lambda r, s: P.e_A_invariance(r), 1e-8),
    Suite("quantum-geometry/fubini-study-psd", lambda r, s: P.fubini_study_psd(r)["min_value"], -1e-12, "min"),
]


def select(pattern: Optional[str] = None) -> List[Suite]:
    """Suites selected by ``pattern``.

    A glob (``*``, ``?``, ``[``) matches full names. Otherwise a pattern that
    occurs in some module name selects those modules; failing that it is a
    substring of the full name.
    """
    if not pattern:
        return list(SUITES)
    if any(c in pattern for c in "*?["):
        return [s for s in SUITES if fnmatch.fnmatchcase(s.name, pattern)]
    by_module = [s for s in SUITES if pattern in s.module]
    return by_module or [s for s in SUITES if pattern in s.name]


@dataclass
class SuiteOutcome:
    suite: Suite
    check: Optional[Check]
    seconds: float
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.check is not None and self.check.passed


def run_suites(suites: List[Suite], seed: int) -> List[SuiteOutcome]:
    out = []
    for s in suites:
        start = time.perf_counter()
        try:
            chk, err = s.run(seed), None
        except Exception as exc:  # a crashing suite is reported as a failure
            chk, err = None, f"{type(exc).__name__}: {exc}"
        out.append(SuiteOutcome(s, chk, time.perf_counter() - start, err))
    return out
