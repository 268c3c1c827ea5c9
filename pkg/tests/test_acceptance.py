"""Acceptance criteria, one test each, at their stated tolerances.

Every test records a PASS/FAIL line that the terminal summary prints. Running
this file directly prints the same lines.
"""

import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
import pytest

from reductionlab import classical, cli, protocols as P
from reductionlab.errors import DomainError
from reductionlab.star import moyal, woronowicz as W

SEED = int(os.environ.get("REDUCTIONLAB_SEED", "42"))

TITLES = {
    1: "radial reduction vs free flight",
    2: "sl(2,R) brackets",
    3: "Calogero eigenvalue flight",
    4: "Hamilton-Jacobi gradient",
    5: "Riccati projection and cross-ratio",
    6: "Burgers via Cole-Hopf",
    7: "monopole conserved vector",
    8: "TS2 tangency",
    9: "spherical pendulum and Hopf reduction",
    10: "KS projectability and hydrogen levels",
    11: "radial sector identities",
    12: "deformed oscillator",
    13: "Woronowicz SU_q(2) relations, table and flows",
    14: "Moyal and su(2) reduced star",
    15: "geometric quantum mechanics",
    16: "CLI contract",
}


@dataclass
class Outcome:
    number: int
    parts: List[Tuple[str, float, float, str]] = field(default_factory=list)

    def add(self, name: str, value, bound: float, kind: str = "max"):
        self.parts.append((name, float(value), float(bound), kind))

    def flag(self, name: str, ok: bool):
        self.add(name, 1.0 if ok else 0.0, 1.0, "min")

    @staticmethod
    def _ok(value, bound, kind) -> bool:
        return value <= bound if kind == "max" else value >= bound

    @property
    def failures(self) -> List[str]:
        return [f"{n}={v:.3g}" for n, v, b, k in self.parts if not self._ok(v, b, k)]

    @property
    def passed(self) -> bool:
        return bool(self.parts) and not self.failures

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        text = f"{tag} criterion {self.number:2d}: {TITLES[self.number]}"
        if not self.passed:
            text += " [" + ", ".join(self.failures) + "]"
        return text


RESULTS: Dict[int, Outcome] = {}


def summary_lines() -> List[str]:
    return [RESULTS[k].line() for k in sorted(RESULTS)]


def record(number: int) -> Outcome:
    out = Outcome(number)
    RESULTS[number] = out
    return out


def finish(out: Outcome):
    print(out.line())
    assert out.passed, out.line()


def rng():
    return np.random.default_rng(SEED)


def test_criterion_01_radial_free_flight():
    out = record(1)
    for kind in ("fixed_l", "fixed_E"):
        m = P.radial_free_flight(rng(), 200, T=2.0, dt=1e-3, kind=kind)
        out.add(kind, m.values["max_error"], 1e-6)
    finish(out)


def test_criterion_02_sl2_brackets():
    out = record(2)
    out.add("bracket_residual", P.sl2_brackets(rng(), 1000).values["bracket_residual"], 0.0)
    finish(out)


def test_criterion_03_calogero():
    out = record(3)
    m = P.calogero_match(rng(), 100, T=2.0, dt=1e-3)
    out.add("eigen_error", m.values["eigen_error"], 1e-6)
    out.add("l_drift", m.values["l_drift"], 1e-10)
    finish(out)


def test_criterion_04_hamilton_jacobi():
    out = record(4)
    out.add("grad_error", P.hj_gradient(rng(), 50).values["grad_error"], 1e-6)
    finish(out)


def test_criterion_05_riccati():
    out = record(5)
    out.add("projection", P.riccati_projection(rng(), T=1.0), 1e-6)
    out.add("cross_ratio_drift", P.riccati_cross_ratio(T=1.0).values["cross_ratio_drift"], 1e-6)
    finish(out)


def test_criterion_06_burgers():
    out = record(6)
    m = P.burgers_checks(n=801)
    for key in ("residual_u", "residual_v", "residual_superposed"):
        out.add(key, m.values[key], 2e-3)
    finish(out)


def test_criterion_07_monopole():
    out = record(7)
    out.add("J_drift_fixed", P.monopole_drift(T=10.0).values["J_drift"], 1e-7)
    out.add("J_drift_random", P.monopole_random_drift(rng(), 10, T=10.0), 1e-7)
    finish(out)


def test_criterion_08_ts2_tangency():
    out = record(8)
    m = P.ts2_tangency(rng(), 100)
    out.add("rotation", m.values["rotation"], 1e-10)
    out.add("boost", m.values["boost"], 1e-10)
    out.add("non_tangent", m.values["non_tangent"], 0.1, "min")
    finish(out)


def test_criterion_09_pendulum_and_hopf():
    out = record(9)
    m = P.pendulum_drift(rng(), T=10.0)
    out.add("E_drift", m.values["E_drift"], 1e-7)
    out.add("L_drift", m.values["L_drift"], 1e-7)
    h = P.hopf_reduction(rng())
    out.add("sigma_drift", h.values["sigma_drift"], 1e-7)
    out.add("pendulum_residual", h.values["pendulum_residual"], 1e-4)
    finish(out)


def test_criterion_10_ks_hydrogen():
    out = record(10)
    out.add("projectability", P.ks_projectability(4), 0.0)
    levels = P.hydrogen_levels(k=1.0).values
    for j, bound in enumerate((1e-3, 1e-3, 2e-3)):
        out.add(f"level_{j}", levels[f"level_{j}"], bound)
    finish(out)


def test_criterion_11_radial_sector():
    out = record(11)
    out.add("similarity", P.sector_similarity(3), 0.0)
    out.add("bessel_identity", P.bessel_identity(), 1e-8)
    out.add("propagator", max(P.sector_propagator_error(m) for m in range(4)), 1e-6)
    finish(out)


def test_criterion_12_deformed_oscillator():
    out = record(12)
    for q in (1.0, 0.5, 2.0):
        out.add(f"ideal_invariance_q{q}", P.oscillator_checks(q=q, r=1.0).values["ideal_invariance"], 0.0)
    m = P.oscillator_checks(q=1.0, r=0.7)
    out.add("ladder", m.values["ladder"], 0.0)
    out.add("commutative_limit", m.values["commutative_limit"], 0.0)
    finish(out)


def test_criterion_13_woronowicz():
    out = record(13)
    for name, v in P.woronowicz_relations("printed").items():
        out.add(f"printed:{name}", v, 0.0)
    for name, v in P.woronowicz_relations("derived").items():
        out.add(f"derived:{name}", v, 0.0)
    flows = P.woronowicz_flows(4)
    for group, keys in (("printed", W.PRINTED_FLOWS), ("derived", W.DERIVED_FLOWS)):
        for key in keys:
            out.add(f"{group}-flow:{key}", flows[key], 0.0)
    for key, ok in P.classical_table_match(W.derived_s3_table(), W.printed_s3_table()).items():
        out.flag(f"table{key}", ok)
    out.add("intertwining", P.s3_s2_intertwining(rng()).values["intertwine_error"], 1e-9)
    out.add("gamma_printed", P.stereographic_check(rng(), printed=True), 1e-9)
    out.add("gamma_derived", P.stereographic_check(rng(), printed=False), 1e-9)
    finish(out)


def test_criterion_14_moyal_su2():
    out = record(14)
    out.add("associativity_failures", P.moyal_associativity(SEED, 50), 0.0)
    out.add("commutant_closure", max(v.max_abs() for v in moyal.commutant_closure_check().values()), 0.0)
    red = P.reduced_star_checks()
    out.add("reduced_first_order", red["first_order"], 0.0)
    out.add("square", red["square"], 0.0)
    finish(out)


def test_criterion_15_geometric_qm():
    out = record(15)
    out.add("picture_deviation", P.quantum_pictures(rng(), n=4, T=5.0).values["picture_deviation"], 1e-10)
    out.add("momentum_pullback", P.momentum_pullback(rng()), 1e-10)
    for key, v in P.theta_values(rng()).items():
        out.add(f"theta_{key}", v, 0.0)
    out.add("kahler_potential", P.kahler_checks(rng(), 50)["potential"], 1e-6)
    out.add("eA_invariance", P.e_A_invariance(rng()), 1e-8)
    finish(out)


def test_criterion_16_cli(tmp_path, monkeypatch, capsys):
    out = record(16)
    a, b = tmp_path / "a", tmp_path / "b"
    codes = [cli.main(["run", "calogero", "--out", str(d)]) for d in (a, b)]
    out.flag("run_exit_0", codes == [0, 0])
    out.flag("byte_identical", (a / "calogero.csv").read_bytes() == (b / "calogero.csv").read_bytes())
    out.flag("unknown_scenario_exit_2", cli.main(["run", "foo", "--out", str(tmp_path / "c")]) == 2
             and not (tmp_path / "c").exists())
    out.flag("verify_exit_0", cli.main(["verify"]) == 0)
    good = classical.calogero_field

    def flipped(l):
        f = good(l)
        return lambda t, y: f(t, y) * np.array([1.0, 1.0, -1.0, -1.0])

    monkeypatch.setattr(classical, "calogero_field", flipped)
    code = cli.main(["verify", "--filter", "classical-reduction"])
    last = capsys.readouterr().out.strip().splitlines()[-1]
    out.flag("mutation_exit_1", code == 1)
    out.flag("mutation_named", "calogero-eigenvalue-match" in last)
    finish(out)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
