import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from durrmeyer.basis import bernstein
from durrmeyer.errors import DomainError
from durrmeyer.quadrature import (
    basis_function_integral,
    basis_integral_table,
    basis_monomial_integral,
    composite_nodes,
    default_rule,
    make_rule,
)
from oracles import beta_moment


def panel_doubling(n, k, f, tol=1e-12):
    """Composite 16-point Gauss, doubling the panel count until two passes agree."""
    t16, w16 = np.polynomial.legendre.leggauss(16)
    prev = None
    panels = 1
    while panels <= 1024:
        edges = np.linspace(0, 1, panels + 1)
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            t = 0.5 * (b - a) * t16 + 0.5 * (a + b)
            total += 0.5 * (b - a) * np.dot(w16, math.comb(n, k) * t**k * (1 - t) ** (n - k) * f(t))
        if prev is not None and abs(total - prev) < tol:
            return total
        prev = total
        panels *= 2
    raise AssertionError("panel doubling did not settle")


class TestRules:
    def test_two_point_rule(self):
        r = make_rule(3)
        assert len(r) == 2
        np.testing.assert_allclose(r.nodes, [(3 - math.sqrt(3)) / 6, (3 + math.sqrt(3)) / 6],
                                   atol=1e-15)
        np.testing.assert_allclose(r.weights, [0.5, 0.5], atol=1e-15)

    def test_quintic_exact(self):
        assert make_rule(5).integrate(lambda t: t**5) == pytest.approx(1 / 6, abs=1e-15)

    def test_high_degree_against_closed_form(self):
        r = make_rule(63)
        got = r.integrate(lambda t: bernstein(50, 25, t) * t**13)
        assert got == pytest.approx(basis_monomial_integral(50, 25, 13), rel=1e-13)

    @pytest.mark.parametrize("e", [0, 1, 2, 7, 30, 63, 200])
    def test_weights_and_nodes(self, e):
        r = make_rule(e)
        assert r.order >= e
        assert abs(r.weights.sum() - 1.0) <= 1e-14
        assert np.all(r.weights > 0)
        assert np.all((r.nodes > 0) & (r.nodes < 1))

    def test_negative_exactness_rejected(self):
        with pytest.raises(DomainError):
            make_rule(-1)

    def test_rules_are_read_only(self):
        r = make_rule(9)
        with pytest.raises(ValueError):
            r.nodes[0] = 0.5

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 80))
    def test_exactness_on_monomials(self, m):
        r = make_rule(2 * m + 1)
        for d in range(0, 2 * len(r)):
            assert r.integrate(lambda t: t**d) == pytest.approx(1 / (d + 1), abs=1e-13)

    def test_default_rule_size(self):
        assert len(default_rule(10)) == 64
        assert len(default_rule(300)) >= (300 + 16) // 2 + 2

    def test_composite_splits_at_breakpoints(self):
        t, w = composite_nodes(make_rule(9), breakpoints=(0.3,), panels=1)
        assert np.sum(t < 0.3) == 5 and np.sum(t > 0.3) == 5
        assert w.sum() == pytest.approx(1.0, abs=1e-15)


class TestMonomialIntegral:
    @pytest.mark.parametrize("n", [0, 1, 5, 60, 100])
    def test_constant(self, n):
        k = np.arange(n + 1)
        np.testing.assert_allclose(basis_monomial_integral(n, k, 0), 1 / (n + 1), rtol=1e-15)

    def test_small_case(self):
        assert basis_monomial_integral(2, 1, 1) == pytest.approx(1 / 6, abs=1e-16)

    def test_against_gauss(self):
        ref = make_rule(127).integrate(lambda t: bernstein(10, 3, t) * t**2)
        assert basis_monomial_integral(10, 3, 2) == pytest.approx(ref, abs=1e-13)

    def test_rejects_bad_index(self):
        with pytest.raises(DomainError):
            basis_monomial_integral(5, 6, 1)

    @pytest.mark.parametrize("n", [1, 10, 100, 400])
    def test_partition(self, n):
        total = basis_monomial_integral(n, np.arange(n + 1), 0).sum()
        assert total == pytest.approx(1.0, abs=1e-13)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 150), st.data(), st.integers(0, 12))
    def test_matches_beta_function(self, n, data, m):
        k = data.draw(st.integers(0, n))
        assert basis_monomial_integral(n, k, m) == pytest.approx(float(beta_moment(n, k, m)),
                                                                 rel=1e-14)


class TestFunctionIntegral:
    @pytest.mark.parametrize("n", [0, 3, 50, 100])
    def test_constant_function(self, n):
        table = basis_integral_table(n, np.ones_like)
        np.testing.assert_allclose(table, 1 / (n + 1), rtol=0, atol=1e-13)

    def test_linear_small(self):
        assert basis_function_integral(1, 0, lambda t: t) == pytest.approx(1 / 6, abs=1e-15)

    def test_sine_against_panel_doubling(self):
        f = lambda t: np.sin(2 * np.pi * t)  # noqa: E731
        ref = panel_doubling(10, 5, f)
        assert basis_function_integral(10, 5, f) == pytest.approx(ref, abs=1e-12)

    def test_kink_uses_breakpoints(self):
        f = lambda t: np.abs(t - 0.5) * np.cos(2 * np.pi * t)  # noqa: E731
        ref = panel_doubling(10, 4, f, tol=1e-13)
        got = basis_function_integral(10, 4, f, breakpoints=(0.5,))
        assert got == pytest.approx(ref, abs=1e-13)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 60), st.lists(st.integers(-5, 5), min_size=1, max_size=6))
    def test_polynomials_match_monomial_expansion(self, n, coeffs):
        poly = np.polynomial.Polynomial(coeffs)
        d = len(coeffs) - 1
        table = basis_integral_table(n, poly, rule=make_rule(n + d))
        exact = [float(sum(Fraction(c) * beta_moment(n, k, m) for m, c in enumerate(coeffs)))
                 for k in range(n + 1)]
        np.testing.assert_allclose(table, exact, atol=1e-12, rtol=0)
