import itertools

import numpy as np
import pytest

from reductionlab import protocols
from reductionlab.errors import DomainError
from reductionlab.star import woronowicz as W
from reductionlab.star.commpoly import CommPoly
from reductionlab.star.ncpoly import NCPoly, nc_commutator

R = W.woronowicz_system()


def nf(p):
    return R.normal_form(p)


class TestRewriting:
    def test_alpha_nu(self):
        assert nf(W.W(W.AL, W.NU)) == W.W(W.NU, W.AL) * (1 - W.Q)

    def test_unit_relation(self):
        assert nf(W.W(W.ALS, W.AL) - (W.ONE - W.W(W.NUS, W.NU))).is_zero()

    @pytest.mark.parametrize("name", list(W.defining_relations()))
    def test_defining_relations_vanish(self, name):
        assert nf(W.defining_relations()[name]).is_zero()

    def test_confluent(self):
        assert protocols.confluence(0, 200)

    def test_q_degree_bound(self):
        # the alpha alpha* rule carries (1-q)^2, so one swap can add two powers of q
        for d in range(1, 5):
            for w in itertools.product(W.WOR_ORDER, repeat=d):
                out = nf(NCPoly(W.WOR_ORDER, {w: 1}))
                assert out.is_zero() or out.max_degree_in_param() <= d * (d - 1)

    def test_star_images_of_rules(self):
        for lhs, rhs in R.rules:
            lhs_poly = NCPoly(W.WOR_ORDER, {lhs: 1})
            assert nf(lhs_poly.adjoint(W.STAR) - rhs.adjoint(W.STAR)).is_zero()


class TestRelations:
    @pytest.mark.parametrize("name", list(W.derived_relations()))
    def test_derived(self, name):
        assert W.su2q_relation_checks("derived")[name].is_zero()

    @pytest.mark.parametrize("name", ["u two forms", "[H,nu] = 0", "[H,nu*] = 0",
                                      "[H,alpha] = (q^2-2q) nu* nu alpha"])
    def test_printed_forms_that_hold(self, name):
        assert W.su2q_relation_checks("printed")[name].is_zero()

    @pytest.mark.parametrize("name", list(W.DERIVED_FLOWS))
    def test_flows(self, name):
        assert W.flow_consistency_check(4)[name].is_zero()

    def test_flow_taylor_first_order(self):
        f = W.WoronowiczFlow(0.3, 0.2)
        assert f.taylor(W.NU) == W.W(W.NU)
        c = 1j * 0.3 * f.rate
        assert f.taylor(W.AL, 1) - W.W(W.AL) == W.W(W.NUS, W.NU, W.AL) * c
        # the alpha* phase sits on the right
        assert f.taylor(W.ALS, 1) - W.W(W.ALS) == W.W(W.ALS, W.NUS, W.NU) * (-c)


class TestClassicalLimit:
    def test_rejects_non_commutator(self):
        with pytest.raises(DomainError):
            W.classical_limit(W.W(W.AL))

    def test_derived_table(self):
        q1, q2, p1, p2 = CommPoly.gens(W.S3_VARS)
        t = W.derived_s3_table()
        assert t[("q1", "q2")] == -(q1 * p2)
        assert t[("q1", "p1")].is_zero()
        assert t[("q1", "p2")] == q1 * q2
        assert t[("q2", "p1")] == p1 * p2
        assert t[("q2", "p2")] == -(q1 * q1 + p1 * p1)
        assert t[("p1", "p2")] == q2 * p1

    def test_printed_entries_that_agree(self):
        match = protocols.classical_table_match(W.derived_s3_table(), W.printed_s3_table())
        for key in ("{p1,q1}", "{p2,q2}", "{q1,p2}", "{q1,q2}", "{p1,q2}"):
            assert match[key]

    def test_casimir_and_reduction(self):
        checks = protocols.s3_table_checks()
        assert all(checks.values())

    def test_jacobi(self, seed):
        assert protocols.s3_jacobi(seed, 30) == 0

    def test_sphere_identity(self):
        u, v, z = W.s2_functions()
        C = W.casimir_s3()
        assert (u * u + v * v + z * z - C * C).is_zero()


class TestFlows:
    def test_preserves_first_pair(self, rng):
        s = rng.normal(size=4)
        out = W.s3_classical_flow(s, 1.3)
        assert out[0] == s[0] and out[2] == s[2]

    def test_intertwining(self, rng):
        assert protocols.s3_s2_intertwining(rng).values["intertwine_error"] < 1e-9

    def test_stereographic(self, rng):
        assert protocols.stereographic_check(rng) < 1e-9

    def test_north_pole(self):
        with pytest.raises(DomainError):
            W.stereographic_project(1.0, 0.0, 0.0)

    def test_reduced_field_tangent(self, rng):
        for _ in range(20):
            p = rng.normal(size=3)
            p /= np.linalg.norm(p)
            assert abs(W.reduced_field_s2(p) @ p) < 1e-14
