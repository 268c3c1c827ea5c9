import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reductionlab import protocols
from reductionlab.errors import ConfigError, DomainError
from reductionlab.star import ncpoly, oscillator
from reductionlab.star.commpoly import CommPoly
from reductionlab.star.ncpoly import NCPoly, RewriteSystem
from reductionlab.star.oscillator import A, AD, osc
from reductionlab.star.series import DeformSeries

Q = DeformSeries.param()
coeffs = st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), max_size=4)


class TestDeformSeries:
    def test_arithmetic(self):
        s = (1 - Q) * (1 - Q)
        assert s.coeffs == (1, -2, 1)
        assert s(0.5) == 0.25

    def test_trailing_zeros_dropped(self):
        assert DeformSeries([1, 0, 0]).degree == 0
        assert DeformSeries([]).is_zero()

    @settings(max_examples=100, deadline=None)
    @given(coeffs, coeffs, st.floats(-2, 2))
    def test_product_evaluates(self, a, b, h):
        x, y = DeformSeries(a), DeformSeries(b)
        assert abs((x * y)(h) - x(h) * y(h)) < 1e-9 * (1 + abs(x(h)) * abs(y(h)))

    def test_conjugate(self):
        s = DeformSeries([1j, 2])
        assert s.conjugate().coeffs == (-1j, 2)


class TestNCPoly:
    def test_noncommutative(self):
        ab = NCPoly.word(("a", "b"), "a", "b")
        ba = NCPoly.word(("a", "b"), "b", "a")
        assert not (ab - ba).is_zero()
        assert ncpoly.nc_commutator(ab, ab).is_zero()

    def test_alphabet_check(self):
        with pytest.raises(DomainError):
            NCPoly(("a",), {("b",): 1})

    def test_adjoint_reverses(self):
        p = NCPoly.word(("a", "b"), "a", "b", coeff=1j)
        adj = p.adjoint({"a": "b", "b": "a"})
        assert adj == NCPoly.word(("a", "b"), "a", "b", coeff=-1j)

    def test_q_coefficient(self):
        p = osc(A, AD) * (2 + 3 * Q)
        assert p.q_coefficient(1) == osc(A, AD) * 3


class TestRewriteSystem:
    def test_rejects_increasing_rule(self):
        with pytest.raises(ConfigError):
            RewriteSystem(("a", "b"), [(("a", "b"), NCPoly.word(("a", "b"), "b", "a"))])

    def test_rejects_long_lhs(self):
        with pytest.raises(ConfigError):
            RewriteSystem(("a", "b"), [(("b", "a", "a"), NCPoly.word(("a", "b"), "a"))])

    def test_normal_form_idempotent(self, seed):
        assert protocols.normal_form_projection(seed, 200) == 0.0

    def test_quotient_well_defined(self, seed):
        assert protocols.quotient_well_defined(seed, 10) == 0.0

    def test_confluence(self):
        assert ncpoly.confluence_probe(oscillator.oscillator_system(0.5, 0.3), trials=200, max_len=6)

    def test_budget(self):
        from reductionlab.errors import RewriteBudgetExceeded

        R = RewriteSystem(oscillator.OSC_ALPHABET, oscillator.oscillator_system(1, 1).rules, budget=3)
        with pytest.raises(RewriteBudgetExceeded):
            R.normal_form(osc(AD, AD, AD, A, A, A))


class TestOscillator:
    def test_rule_at_q1(self):
        R = oscillator.oscillator_system(1.0, 0.25)
        assert R.normal_form(osc(AD, A)) == osc(A, AD) - 0.25

    def test_commutative_limit(self):
        R = oscillator.oscillator_system(1.0, 0.0)
        assert R.normal_form(osc(AD, A)) == osc(A, AD)
        rng = random.Random(0)
        for _ in range(50):
            x = ncpoly.random_ncpoly(oscillator.OSC_ALPHABET, rng)
            y = ncpoly.random_ncpoly(oscillator.OSC_ALPHABET, rng)
            assert R.normal_form(ncpoly.nc_commutator(x, y)).is_zero()

    def test_ladder(self):
        R = oscillator.oscillator_system(1.0, 0.7)
        assert R.normal_form(ncpoly.nc_commutator(osc(A), osc(AD))) == NCPoly.const(oscillator.OSC_ALPHABET, 0.7)

    def test_number_word_static(self):
        d = oscillator.oscillator_derivation(1.3)
        assert d(osc(A, AD)).is_zero()

    @pytest.mark.parametrize("q,r", [(1.0, 1.0), (0.5, 0.3), (2.0, -1.0)])
    def test_ideal_invariant(self, q, r):
        R = oscillator.oscillator_system(q, r)
        d = oscillator.oscillator_derivation(0.9)
        assert R.normal_form(d(oscillator.oscillator_relation(q, r))).is_zero()

    def test_all_checks(self):
        m = protocols.oscillator_checks()
        assert all(v == 0.0 for v in m.values.values())

    def test_q_degree_bound(self):
        R = oscillator.oscillator_system(Q, 1.0)
        for d in range(1, 7):
            for w in itertools.product(oscillator.OSC_ALPHABET, repeat=d):
                nf = R.normal_form(NCPoly(oscillator.OSC_ALPHABET, {w: 1}))
                assert nf.max_degree_in_param() <= d * (d - 1) // 2


class TestCommPoly:
    def test_derive_and_substitute(self):
        x, y = CommPoly.gens(("x", "y"))
        f = x * x * y
        assert f.derive("x") == x * y * 2
        assert f.substitute({"x": y, "y": x}) == y * y * x

    def test_evaluate(self):
        x, y = CommPoly.gens(("x", "y"))
        assert (x * y + Q * x).evaluate([2.0, 3.0], h=0.5) == 7.0

    def test_reduce_power(self):
        x, y = CommPoly.gens(("x", "y"))
        # y^2 -> 1 - x^2 on the unit circle
        assert (y * y * x).reduce_power("y", 1 - x * x) == x - x * x * x
