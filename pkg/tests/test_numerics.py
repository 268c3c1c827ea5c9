import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reductionlab import numerics
from reductionlab.errors import DomainError, IntegrationDiverged
from reductionlab.numerics import ToleranceConfig


class TestToleranceConfig:
    def test_defaults(self):
        t = ToleranceConfig()
        assert t.symbolic_tol == 0.0
        assert t.check_tol == 1e-6

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            ToleranceConfig(ode_tol=0.0)
        with pytest.raises(ValueError):
            ToleranceConfig(symbolic_tol=-1.0)

    def test_replace(self):
        t = ToleranceConfig().replace(check_tol=1e-3)
        assert t.check_tol == 1e-3
        with pytest.raises(KeyError):
            ToleranceConfig().replace(nope=1.0)


class TestRK4:
    def test_exponential(self):
        tr = numerics.integrate_rk4(lambda t, y: y, np.array([1.0]), 0.0, 1.0, 1e-3)
        assert abs(tr.final[0] - math.e) < 1e-8

    def test_fourth_order(self):
        ratio = 0
        errs = []
        for h in (0.1, 0.05):
            tr = numerics.integrate_rk4(lambda t, y: y, np.array([1.0]), 0.0, 1.0, h)
            errs.append(abs(tr.final[0] - math.e))
        ratio = errs[0] / errs[1]
        assert 15.0 < ratio < 17.0

    def test_lands_on_endpoint(self):
        tr = numerics.integrate_rk4(lambda t, y: -y, np.array([1.0]), 0.0, 1.0, 0.3)
        assert tr.times[-1] == 1.0

    def test_batch_matches_single(self):
        f = lambda t, y: np.stack([y[..., 1], -y[..., 0]], axis=-1)
        y0 = np.array([[1.0, 0.0], [0.3, -2.0]])
        batch = numerics.integrate_rk4(f, y0, 0.0, 2.0, 1e-2).final
        for i in range(2):
            single = numerics.integrate_rk4(f, y0[i], 0.0, 2.0, 1e-2).final
            assert np.allclose(batch[i], single, atol=1e-15)

    def test_invariant_drift(self):
        f = lambda t, y: np.array([y[1], -y[0]])
        tr = numerics.integrate_rk4(f, np.array([1.0, 0.0]), 0.0, 10.0, 1e-3,
                                    invariants={"E": lambda y: y @ y})
        assert tr.drift["E"] < 1e-10

    def test_sample_every(self):
        tr = numerics.integrate_rk4(lambda t, y: y, np.array([1.0]), 0.0, 1.0, 0.01, sample_every=10)
        assert len(tr) == 11

    def test_divergence(self):
        with pytest.raises(IntegrationDiverged), np.errstate(over="ignore", invalid="ignore"):
            numerics.integrate_rk4(lambda t, y: y * y, np.array([1.0]), 0.0, 2.0, 0.1)

    def test_bad_step(self):
        with pytest.raises(DomainError):
            numerics.integrate_rk4(lambda t, y: y, np.array([1.0]), 0.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            numerics.integrate_rk4(lambda t, y: y, np.array([1.0]), 1.0, 0.0, 0.1)


class TestQuadrature:
    def test_trig_exact(self):
        val = numerics.quad_periodic(lambda p: np.cos(p) ** 2, 16)
        assert abs(val - math.pi) < 1e-14

    def test_converged(self):
        f = lambda p: np.exp(5j * np.cos(p))
        assert abs(numerics.quad_periodic(f, 64) - numerics.quad_periodic(f, 128)) < 1e-10


class TestBessel:
    def test_first_zero(self):
        assert abs(numerics.bessel_j(0, 2.404825557695773)) < 1e-9

    def test_values(self):
        # frozen from an independent power-series evaluation
        assert abs(numerics.bessel_j(0, 1.0) - 0.7651976865579666) < 1e-14
        assert abs(numerics.bessel_j(3, 5.0) - 0.364831230613667) < 1e-13
        assert abs(numerics.bessel_j(1, 25.0) - (-0.12535024958028990)) < 1e-12

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            numerics.bessel_j(-3, 2.0)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(1, 10), st.floats(0.5, 30.0))
    def test_recurrence(self, m, x):
        lhs = numerics.bessel_j(m - 1, x) + numerics.bessel_j(m + 1, x)
        assert abs(lhs - 2 * m / x * numerics.bessel_j(m, x)) < 1e-10


class TestEigSym2:
    def test_offdiagonal(self):
        e = numerics.eig_sym2_continuous(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(np.diag(e.Q), [-1.0, 1.0])
        assert abs(e.phi - math.pi / 4) < 1e-15

    @settings(max_examples=200, deadline=None)
    @given(st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10))
    def test_reconstruction(self, a, b, d):
        X = np.array([[a, b], [b, d]])
        e = numerics.eig_sym2_continuous(X)
        G = numerics.rotation(e.phi)
        assert np.max(np.abs(G @ e.Q @ G.T - X)) < 1e-12

    def test_continuous_path(self):
        prev = None
        last = None
        for t in np.arange(0.0, 5.0, 1e-2):
            X = np.diag([1.0, 2.0]) + t * np.array([[0.0, 0.1], [0.1, 0.0]])
            e = numerics.eig_sym2_continuous(X, prev)
            if last is not None:
                assert abs(e.phi - last) < math.pi / 4
            prev, last = (e.Q, e.phi), e.phi

    def test_degenerate_flag(self):
        e = numerics.eig_sym2_continuous(np.eye(2))
        assert e.degenerate


class TestFiniteDiff:
    def test_first_and_second(self):
        f = lambda x: float(np.sin(x[0]))
        assert abs(numerics.finite_diff(f, [0.3]) - math.cos(0.3)) < 1e-8
        assert abs(numerics.finite_diff(f, [0.3], order=2) + math.sin(0.3)) < 1e-6

    def test_bad_order(self):
        with pytest.raises(DomainError):
            numerics.finite_diff(lambda x: 0.0, [0.0], order=3)
