import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from reductionlab import protocols, quantum
from reductionlab.errors import DomainError

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)

real6 = arrays(float, 6, elements=st.floats(-3, 3))


class TestValidation:
    def test_hermitian(self):
        with pytest.raises(DomainError):
            quantum.as_hermitian([[0, 1], [0, 0]])
        with pytest.raises(DomainError):
            quantum.as_hermitian(np.ones((2, 3)))

    def test_density(self):
        with pytest.raises(DomainError):
            quantum.as_density(np.eye(2))
        with pytest.raises(DomainError):
            quantum.as_density(np.diag([1.5, -0.5]))
        quantum.as_density(np.eye(2) / 2)

    def test_zero_state(self):
        with pytest.raises(DomainError):
            quantum.e_A(SZ, [0, 0])
        with pytest.raises(DomainError):
            quantum.as_state([])


class TestKahler:
    @settings(max_examples=100, deadline=None)
    @given(real6, real6)
    def test_compatibility(self, X, Y):
        assert abs(quantum.omega_apply(X, Y) - quantum.g_apply(quantum.J_apply(X), Y)) < 1e-12

    @settings(max_examples=50, deadline=None)
    @given(real6)
    def test_J_squared(self, X):
        assert np.array_equal(quantum.J_apply(quantum.J_apply(X)), -X)

    def test_dispatch(self):
        X, Y = np.array([1.0, 0.0]), np.array([0.0, 1.0])
        assert quantum.kahler_apply("omega", X, Y) == 1.0
        assert quantum.kahler_apply("g", X, X) == 1.0
        with pytest.raises(DomainError):
            quantum.kahler_apply("h", X, Y)

    def test_realify_roundtrip(self, rng):
        psi = quantum.random_state(4, rng)
        assert np.array_equal(quantum.complexify(quantum.realify(psi)), psi)


class TestBrackets:
    def test_pauli_example(self):
        psi = np.array([1.0, 0.0])
        assert abs(quantum.f_A(-1j * quantum.commutator(SX, SY), psi) - 1.0) < 1e-15
        assert quantum.bracket_omega(SX, SY, psi) == quantum.OMEGA_SIGN * 1.0

    def test_epsilon(self):
        assert quantum.measure_epsilon() == quantum.OMEGA_SIGN

    def test_g_with_identity(self, rng):
        A = quantum.random_hermitian(3, rng)
        psi = quantum.random_state(3, rng)
        assert abs(quantum.bracket_g(A, np.eye(3), psi) - 2 * quantum.f_A(A, psi)) < 1e-12

    def test_random(self, rng):
        out = protocols.bracket_vs_matrix(rng, 100)
        assert out["omega"] < 1e-10 and out["g"] < 1e-10

    def test_star_associative(self, rng):
        A, B, C = (quantum.random_hermitian(3, rng) for _ in range(3))
        psi = quantum.random_state(3, rng)
        lhs = quantum.star_func(A, B @ C, psi)
        rhs = quantum.star_func(A @ B, C, psi)
        assert abs(lhs - rhs) < 1e-12

    def test_leibniz(self, rng):
        assert protocols.leibniz_star(rng, 50) < 1e-10


class TestMomentumMap:
    def test_idempotent_up_to_norm(self, rng):
        psi = quantum.random_state(3, rng)
        mu = quantum.momentum_map(psi)
        nrm = np.vdot(psi, psi).real
        assert np.max(np.abs(mu @ mu - nrm * mu)) < 1e-12

    def test_pullback(self, rng):
        assert protocols.momentum_pullback(rng, 50) < 1e-10


class TestDynamics:
    def test_two_level(self):
        psi0 = np.array([1.0, 1.0]) / math.sqrt(2)
        for t in (0.0, math.pi / 8, math.pi / 4):
            psi = quantum.evolve_schrodinger(SZ, psi0, t)
            assert abs(quantum.e_A(SX, psi) - math.cos(2 * t)) < 1e-14

    def test_unitarity(self, rng):
        assert protocols.unitarity(rng) < 1e-12

    def test_pictures(self, rng):
        m = protocols.quantum_pictures(rng)
        assert m.values["picture_deviation"] < 1e-10
        assert m.values["ehrenfest"] < 1e-6

    def test_hbar_scaling(self, rng):
        H = quantum.random_hermitian(3, rng)
        psi = quantum.random_state(3, rng)
        a = quantum.evolve_schrodinger(H, psi, 2.0, hbar=2.0)
        b = quantum.evolve_schrodinger(H, psi, 1.0, hbar=1.0)
        assert np.allclose(a, b, atol=1e-13)


class TestProjective:
    def test_theta(self, rng):
        psi = quantum.random_state(3, rng)
        assert abs(quantum.theta_eval(psi, quantum.dilation(psi)) - 1.0) < 1e-15
        assert abs(quantum.theta_eval(psi, quantum.phase_generator(psi)) - 1j) < 1e-15

    def test_fs_fiber_degenerate(self, rng):
        psi = quantum.random_state(3, rng)
        D = quantum.dilation(psi)
        assert abs(quantum.fubini_study(psi, D, D)) < 1e-12

    def test_fs_phase_invariant(self, rng):
        psi = quantum.random_state(3, rng)
        X = rng.normal(size=6)
        a = quantum.fubini_study(psi, X, X)
        b = quantum.fubini_study(np.exp(0.7j) * psi, X, X)
        assert abs(a - b) < 1e-12

    def test_fs_psd(self, rng):
        assert protocols.fubini_study_psd(rng)["min_value"] > -1e-12

    def test_kahler_potential_unit(self):
        assert quantum.kahler_potential_check(np.array([1.0]), np.array([1.0, 0.0]), np.array([0.0, 1.0])) < 1e-6

    def test_kahler_potential(self, rng):
        out = protocols.kahler_checks(rng, 30)
        assert out["potential"] < 1e-6
        assert out["fiber"] < 1e-6
        assert out["scaling"] < 1e-6

    @settings(max_examples=30, deadline=None)
    @given(st.floats(0.1, 5.0), st.floats(0.0, 6.3))
    def test_e_A_scale_invariant(self, r, phi):
        psi = np.array([0.3 + 0.1j, -1.0, 0.5j])
        A = np.array([[1, 2j, 0], [-2j, 0, 1], [0, 1, -1]])
        assert abs(quantum.e_A(A, r * np.exp(1j * phi) * psi) - quantum.e_A(A, psi)) < 1e-12

    def test_e_A_derivatives(self, rng):
        assert protocols.e_A_invariance(rng, 30) < 1e-8


class TestRadialSector:
    def test_bessel_identity(self):
        assert quantum.bessel_sector_identity(3, 1.0, 5.0) < 1e-8

    @pytest.mark.parametrize("m", range(6))
    def test_bessel_identity_orders(self, m):
        for PQ in (0.5, 1.0, 5.0):
            assert quantum.bessel_sector_identity(m, 1.0, PQ) < 1e-8

    def test_propagator(self):
        a = quantum.sector_propagator(1, 1.0, 1.5, 0.7)
        b = quantum.sector_propagator_oracle(1, 1.0, 1.5, 0.7)
        assert abs(a - b) < 1e-6

    def test_zero_time(self):
        with pytest.raises(DomainError):
            quantum.sector_propagator(0, 1.0, 1.0, 0.0)
