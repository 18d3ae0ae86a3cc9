from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from durrmeyer.basis import (
    LinearCoeff,
    QuadraticCoeffSet,
    QuarticCoeffSet,
    bernstein,
    modified_basis_m1,
    modified_basis_m2,
    modified_basis_m3,
)
from durrmeyer.errors import DomainError, InvalidSpecError
from oracles import outer_basis_exact, p_exact, q

GRID101 = np.linspace(0.0, 1.0, 101)
unit = st.floats(0.0, 1.0, allow_nan=False)
coef = st.floats(-5.0, 5.0, allow_nan=False)


class TestBernstein:
    def test_midpoint_value(self):
        assert bernstein(3, 1, 0.5) == pytest.approx(0.375, abs=1e-16)

    def test_endpoint_degeneracy(self):
        assert bernstein(7, 0, 0.0) == 1.0
        assert bernstein(7, 3, 0.0) == 0.0
        assert bernstein(7, 7, 1.0) == 1.0
        assert bernstein(7, 6, 1.0) == 0.0

    def test_large_degree_against_rationals(self):
        exact = p_exact(200, 100, Fraction(1, 2))
        assert bernstein(200, 100, 0.5) == pytest.approx(float(exact), rel=1e-12)

    @pytest.mark.parametrize("k", [-3, -1, 8, 50])
    def test_out_of_range_is_zero(self, k):
        assert bernstein(7, k, 0.3) == 0.0

    def test_array_broadcast(self):
        k = np.arange(6)[:, None]
        vals = bernstein(5, k, GRID101[None, :])
        assert vals.shape == (6, 101)
        assert np.all(vals >= 0.0)

    @pytest.mark.parametrize("n", [0, 1, 2, 17, 100, 333, 500])
    def test_partition_of_unity(self, n):
        k = np.arange(n + 1)[:, None]
        total = bernstein(n, k, GRID101[None, :]).sum(axis=0)
        np.testing.assert_allclose(total, 1.0, atol=1e-13, rtol=0)

    def test_no_overflow_at_huge_degree(self):
        v = bernstein(20000, 10000, 0.5)
        assert 0.0 < v < 1.0 and np.isfinite(v)

    def test_rejects_points_outside_interval(self):
        with pytest.raises(DomainError):
            bernstein(4, 1, 1.5)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 60), st.integers(-2, 62), st.fractions(0, 1, max_denominator=97))
    def test_matches_rational_evaluation(self, n, k, x):
        got = bernstein(n, k, float(x))
        exact = float(p_exact(n, k, x))
        assert got == pytest.approx(exact, rel=1e-12, abs=1e-300)


class TestCoefficientSets:
    def test_constraint_check(self):
        LinearCoeff(0.45, 0.1).check_constraint()
        with pytest.raises(InvalidSpecError):
            LinearCoeff(0.5, 0.5).check_constraint()

    def test_positivity_flag(self):
        assert LinearCoeff(0.45, 0.1).is_positive
        assert not LinearCoeff(2, -3).is_positive
        assert not LinearCoeff(-10 / 21, 41 / 21).is_positive

    def test_tilde_quadratic(self):
        c = QuadraticCoeffSet.tilde(10)
        assert (c.b0, c.b1, c.b2, c.d0) == (1.5, -10, 8, 16)
        assert c.satisfies_constraint()

    def test_classical_quadratic_satisfies_constraint(self):
        assert QuadraticCoeffSet.classical().satisfies_constraint()

    @pytest.mark.parametrize("n", [4, 6, 11, 40])
    def test_tilde_quartic_entries(self, n):
        bt, dt, et0 = QuarticCoeffSet.tilde_exact(n)
        assert et0 == 3 * n * n
        assert bt[4] == Fraction(n * n, 2)
        assert dt[4] == -2 * n * n
        assert bt[0] == Fraction(10, 3)
        c = QuarticCoeffSet.tilde(n)
        assert c.bt == tuple(float(v) for v in bt)

    def test_quartic_needs_five_terms(self):
        with pytest.raises(InvalidSpecError):
            QuarticCoeffSet((1, 2), (1, 2, 3, 4, 5), 1.0)


class TestModifiedBases:
    def test_m1_reduces_to_classical(self):
        c = LinearCoeff.classical()
        for n in range(1, 21):
            k = np.arange(-1, n + 2)[:, None]
            np.testing.assert_allclose(
                modified_basis_m1(n, k, GRID101[None, :], c),
                bernstein(n, k, GRID101[None, :]), atol=1e-13, rtol=0)

    def test_m2_reduces_to_classical(self):
        c = QuadraticCoeffSet.classical()
        for n in range(2, 21):
            k = np.arange(-1, n + 2)[:, None]
            np.testing.assert_allclose(
                modified_basis_m2(n, k, GRID101[None, :], c),
                bernstein(n, k, GRID101[None, :]), atol=1e-13, rtol=0)

    def test_m1_left_endpoint(self):
        assert modified_basis_m1(5, 0, 0.0, LinearCoeff(0.7, -0.4)) == pytest.approx(0.7)

    def test_m1_rational_oracle(self):
        c = LinearCoeff(0.45, 0.1)
        exact = outer_basis_exact("m1", (q(0.45), q(0.1)), 10, 4, q(0.3))
        assert modified_basis_m1(10, 4, 0.3, c) == pytest.approx(float(exact), rel=1e-14)

    def test_m2_left_endpoint(self):
        c = QuadraticCoeffSet(0.8, 0.1, -0.7, 3.0)
        assert modified_basis_m2(4, 0, 0.0, c) == pytest.approx(0.8)

    def test_m2_tilde_rational_oracle(self):
        n = 10
        data = (Fraction(3, 2), Fraction(-n), Fraction(n - 2), Fraction(2 * (n - 2)))
        exact = outer_basis_exact("m2", data, n, 5, Fraction(2, 5))
        got = modified_basis_m2(n, 5, 0.4, QuadraticCoeffSet.tilde(n))
        assert got == pytest.approx(float(exact), rel=1e-13)

    def test_m3_left_endpoint(self):
        assert modified_basis_m3(6, 0, 0.0, QuarticCoeffSet.tilde(6)) == pytest.approx(10 / 3)

    def test_m3_sums_to_one(self):
        c = QuarticCoeffSet.tilde(8)
        total = sum(modified_basis_m3(8, k, 0.5, c) for k in range(9))
        assert total == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("x", [0.0, 0.3, 1.0])
    def test_m3_out_of_range(self, x):
        assert modified_basis_m3(8, -1, x, QuarticCoeffSet.tilde(8)) == 0.0
        assert modified_basis_m3(8, 9, x, QuarticCoeffSet.tilde(8)) == 0.0

    @pytest.mark.parametrize("fn,n", [(modified_basis_m1, 0), (modified_basis_m2, 1),
                                      (modified_basis_m3, 3)])
    def test_degree_below_minimum(self, fn, n):
        c = {modified_basis_m1: LinearCoeff.classical(),
             modified_basis_m2: QuadraticCoeffSet.classical(),
             modified_basis_m3: QuarticCoeffSet.tilde(4)}[fn]
        with pytest.raises(DomainError):
            fn(n, 0, 0.5, c)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 80), coef, coef)
    def test_m1_sum_is_a_plus_reflection(self, n, a0, a1):
        k = np.arange(n + 1)[:, None]
        total = modified_basis_m1(n, k, GRID101[None, :], LinearCoeff(a0, a1)).sum(axis=0)
        scale = max(1.0, abs(a0) + abs(a1))
        np.testing.assert_allclose(total, 2 * a0 + a1, atol=1e-13 * scale, rtol=0)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(2, 80), coef, coef, coef, coef)
    def test_m2_sum_matches_quadratic(self, n, b0, b1, b2, d0):
        c = QuadraticCoeffSet(b0, b1, b2, d0)
        k = np.arange(n + 1)[:, None]
        x = GRID101
        total = modified_basis_m2(n, k, x[None, :], c).sum(axis=0)
        u = 2 * b2 - d0
        expected = u * x**2 - u * x + 2 * b0 + b1 + b2
        scale = max(1.0, abs(b0) + abs(b1) + abs(b2) + abs(d0))
        np.testing.assert_allclose(total, expected, atol=1e-12 * scale, rtol=0)

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 60), st.floats(0, 3), st.floats(0, 3), unit)
    def test_m1_nonnegative_in_positive_case(self, n, a0, s, x):
        c = LinearCoeff(a0, s - a0)  # a0 >= 0 and a0 + a1 = s >= 0
        assert c.is_positive
        k = np.arange(n + 1)
        assert np.all(modified_basis_m1(n, k, x, c) >= 0.0)

    @settings(max_examples=100, deadline=None)
    @given(st.integers(4, 40), st.fractions(0, 1, max_denominator=50))
    def test_m3_tilde_matches_rationals(self, n, x):
        k = np.arange(n + 1)
        got = modified_basis_m3(n, k, float(x), QuarticCoeffSet.tilde(n))
        data = QuarticCoeffSet.tilde_exact(n)
        exact = np.array([float(outer_basis_exact("m3", data, n, j, x)) for j in range(n + 1)])
        # cancellation among n^2-sized weights limits relative accuracy
        np.testing.assert_allclose(got, exact, atol=1e-13 * n * n, rtol=1e-12)
