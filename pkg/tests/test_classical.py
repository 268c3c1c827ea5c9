import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from reductionlab import classical, numerics, protocols
from reductionlab.errors import ConstraintViolation, DomainError, SingularityError

vec3 = arrays(float, 3, elements=st.floats(-3, 3))


class TestRadialReduction:
    def test_reduce(self):
        d = classical.reduce_free_to_radial(classical.FreeState3([1, 0, 0], [0, 1, 0]))
        assert tuple(d) == (1.0, 0.0, 1.0, 0.5)

    def test_zero_radius(self):
        with pytest.raises(DomainError):
            classical.reduce_free_to_radial(classical.FreeState3([0, 0, 0], [0, 1, 0]))

    def test_fixed_l_value(self):
        f = classical.radial_reduced_field("fixed_l", l2=1.0)
        assert np.allclose(f(0.0, np.array([1.0, 0.0])), [0.0, 1.0])

    def test_fixed_E_value(self):
        f = classical.radial_reduced_field("fixed_E", E=0.5)
        assert np.allclose(f(0.0, np.array([1.0, 1.0])), [1.0, 0.0])

    def test_unknown_kind(self):
        with pytest.raises(DomainError):
            classical.radial_reduced_field("nope")

    def test_nonpositive_radius(self):
        f = classical.radial_reduced_field("fixed_l", l2=1.0)
        with pytest.raises(DomainError):
            f(0.0, np.array([0.0, 1.0]))

    @pytest.mark.parametrize("kind", ["fixed_l", "fixed_E", "convex", "timedep"])
    def test_matches_free_flight(self, rng, kind):
        m = protocols.radial_free_flight(rng, 50, kind=kind)
        assert m.values["max_error"] < 1e-6

    def test_printed_timedep_is_inconsistent(self, rng):
        # the printed third term does not reproduce free flight
        try:
            err = protocols.radial_free_flight(rng, 20, kind="timedep_printed").values["max_error"]
        except DomainError:
            return  # the radius crossed zero
        assert err > 1e-2

    def test_timedep_needs_positive_time(self):
        f = classical.radial_reduced_field("timedep", k=1.0)
        with pytest.raises(DomainError):
            f(0.0, np.array([1.0, 0.0]))


class TestSL2:
    def test_lift(self):
        assert tuple(classical.sl2_lift([1, 1, 0], [1, 0, 0])) == (1.0, 1.0, 1.0)

    def test_bracket_values(self):
        x, p = [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]
        X1, X2, X3 = classical.XI1, classical.XI2, classical.XI3
        assert classical.canonical_poisson(X3, X1, x, p) == 1.0
        assert classical.canonical_poisson(X2, X1, x, p) == 0.0

    @settings(max_examples=200, deadline=None)
    @given(vec3, vec3)
    def test_brackets(self, x, p):
        X1, X2, X3 = classical.XI1, classical.XI2, classical.XI3
        tol = 1e-12 * (1 + np.dot(x, x) + np.dot(p, p))
        assert abs(classical.canonical_poisson(X3, X1, x, p) - 2 * X1(x, p)) <= tol
        assert abs(classical.canonical_poisson(X2, X3, x, p) - 2 * X2(x, p)) <= tol
        assert abs(classical.canonical_poisson(X2, X1, x, p) - 2 * X3(x, p)) <= tol

    def test_flow_value(self):
        out = classical.sl2_flow(classical.SL2Point(0.5, 1.0, 0.0), 1.0)
        assert tuple(out) == (1.0, 1.0, 1.0)
        assert out.casimir() == classical.SL2Point(0.5, 1.0, 0.0).casimir() == 1.0

    @settings(max_examples=100, deadline=None)
    @given(vec3, vec3, st.floats(-3, 3))
    def test_flow_is_lifted_free_motion(self, r, p, t):
        a = classical.sl2_flow(classical.sl2_lift(r, p), t)
        b = classical.sl2_lift(r + t * p, p)
        assert np.allclose(tuple(a), tuple(b), atol=1e-9)

    def test_oscillator_rotation(self):
        e, x = classical.oscillator_reduced_flow(1.0, 0.0, math.pi / 4)
        assert abs(e) < 1e-15 and abs(x + 1.0) < 1e-15


class TestCalogero:
    def test_reduce_example(self):
        s = classical.calogero_reduce(classical.MatFreeState(np.diag([0.0, 1.0]), [[0, 1], [1, 0]]))
        assert (s.q1, s.q2, s.p1, s.p2) == (0.0, 1.0, 0.0, 0.0)
        assert abs(abs(s.l) - 1.0) < 1e-15

    def test_field_example(self):
        f = classical.calogero_field(1.0)
        assert np.allclose(f(0.0, np.array([0.0, 1.0, 0.0, 0.0])), [0.0, 0.0, -2.0, 2.0])

    def test_collision(self):
        with pytest.raises(SingularityError):
            classical.calogero_field(1.0)(0.0, np.array([1.0, 1.0, 0.0, 0.0]))

    def test_degenerate_frame(self):
        with pytest.raises(SingularityError):
            classical.calogero_reduce(classical.MatFreeState(np.eye(2), np.eye(2)))

    def test_eigenvalue_match(self, rng):
        m = protocols.calogero_match(rng, 20)
        assert m.values["eigen_error"] < 1e-6
        assert m.values["l_drift"] < 1e-10
        assert m.values["commutator_drift"] < 1e-12
        assert m.columns == ["t", "q1", "q2", "p1", "p2", "l_drift"]

    @settings(max_examples=100, deadline=None)
    @given(arrays(float, 3, elements=st.floats(-2, 2)))
    def test_closed_form_eigenvalues(self, c):
        X = classical.sym_from_coords(*c)
        assert np.allclose(classical.matrix_eigenvalues(X), np.linalg.eigvalsh(X), atol=1e-12)


class TestHamiltonJacobi:
    def test_action_value(self):
        assert classical.hj_action(np.eye(2), np.zeros((2, 2)), 1.0) == 1.0

    def test_gradient_example(self):
        Xt, X0 = np.diag([2.0, 0.0]), np.diag([1.0, 0.0])
        E = np.diag([1.0, 0.0])
        fd = numerics.finite_diff(lambda s: classical.hj_action(Xt + s[0] * E, X0, 1.0), np.zeros(1))
        assert abs(fd - 1.0) < 1e-8

    def test_gradient_random(self, rng):
        assert protocols.hj_gradient(rng, 20).values["grad_error"] < 1e-6

    def test_zero_time(self):
        with pytest.raises(DomainError):
            classical.hj_action(np.eye(2), np.eye(2), 0.0)


class TestMonopole:
    def test_field_orientation(self):
        # r x v orientation, the one that conserves m r x v + k r/|r|
        f = classical.monopole_field(1.0, 1.0)
        out = f(0.0, np.array([1.0, 0, 0, 0, 1.0, 0]))
        assert np.allclose(out[3:], [0.0, 0.0, 1.0])

    def test_drift(self):
        assert protocols.monopole_drift(T=2.0).values["J_drift"] < 1e-7

    def test_zero_radius(self):
        with pytest.raises(DomainError):
            classical.monopole_invariant(np.zeros(3), np.ones(3), 1.0)

    @settings(max_examples=50, deadline=None)
    @given(vec3, vec3, st.floats(-2, 2))
    def test_invariant_rate_vanishes(self, r, v, k):
        if np.linalg.norm(r) < 0.1:
            return
        y = np.r_[r, v]
        dy = classical.monopole_field(k)(0.0, y)
        h = 1e-6
        J = lambda y: classical.monopole_invariant(y[:3], y[3:], k)
        rate = (J(y + h * dy) - J(y - h * dy)) / (2 * h)
        assert np.max(np.abs(rate)) < 1e-5 * (1 + np.linalg.norm(v) ** 2 + abs(k))


class TestTS2:
    def test_generators_tangent(self, rng):
        m = protocols.ts2_tangency(rng, 100)
        assert m.values["rotation"] < 1e-10
        assert m.values["boost"] < 1e-10

    def test_non_tangent_rejected(self, rng):
        assert protocols.ts2_tangency(rng, 100).values["non_tangent"] > 0.1

    def test_pendulum_drift(self, rng):
        m = protocols.pendulum_drift(rng, T=3.0)
        assert m.values["E_drift"] < 1e-7 and m.values["L_drift"] < 1e-7

    def test_energy_momentum_pair(self):
        E, L = classical.energy_momentum_map(np.array([0, 0, 1.0, 1.0, 0, 0]))
        assert (float(E), float(L)) == (1.5, 0.0)

    def test_constraint_violation(self):
        f = classical.pendulum_field(1.0, tol=1e-6)
        with pytest.raises(ConstraintViolation):
            f(0.0, np.array([2.0, 0, 0, 0, 0, 0]))


class TestHopf:
    def test_point(self):
        assert np.allclose(classical.hopf_map([1.0, 0, 0, 0]), [0, 0, 1.0])

    @settings(max_examples=200, deadline=None)
    @given(arrays(float, 4, elements=st.floats(-1, 1)), st.floats(-3, 3))
    def test_unit_and_fiber_invariant(self, y, s):
        if np.linalg.norm(y) < 0.1:
            return
        y = y / np.linalg.norm(y)
        x = classical.hopf_map(y)
        assert abs(x @ x - 1.0) < 1e-12
        assert np.max(np.abs(classical.hopf_map(classical.fiber_rotate(y, s)) - x)) < 1e-10

    def test_fiber_generator_in_kernel(self, rng):
        for _ in range(20):
            y = rng.normal(size=4)
            y /= np.linalg.norm(y)
            assert np.max(np.abs(classical.hopf_jacobian(y) @ classical.fiber_generator(y))) < 1e-12

    def test_reduction(self, rng):
        m = protocols.hopf_reduction(rng, T=1.0)
        assert m.values["sigma_drift"] < 1e-7
        assert m.values["H_drift"] < 1e-7
        assert m.values["pendulum_residual"] < 1e-4

    def test_sigma_conserved_general_K(self, rng):
        z0 = classical.random_ts3(rng, K=0.7)
        tr = numerics.integrate_rk4(classical.ts3_hamiltonian_field(), z0, 0.0, 5.0, 1e-3,
                                    invariants={"s": classical.sigma_k}, project=classical.project_ts3)
        assert tr.drift["s"] < 1e-7

    def test_project_requires_ts3(self):
        with pytest.raises(ConstraintViolation):
            classical.hopf_project(classical.TS3Point(np.array([2.0, 0, 0, 0]), np.zeros(4)))
