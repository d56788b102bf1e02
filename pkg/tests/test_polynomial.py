from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from lrkm.polynomial import (
    Polynomial,
    derivative,
    evaluate,
    from_monomial,
    inner_product,
    monomial_to_legendre_matrix,
    multiply,
    norm,
    shifted_legendre,
    shifted_legendre_monomial,
    to_monomial,
)

X = sp.Symbol("x")


def sympy_shifted_legendre(n: int) -> list[int]:
    poly = sp.Poly(sp.expand(sp.legendre(n, 2 * X - 1)), X)
    return [int(c) for c in reversed(poly.all_coeffs())]


def exact_horner(coeffs, x: float) -> float:
    fx = Fraction(x)
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * fx + c
    return float(acc)


def gauss_inner(p: Polynomial, q: Polynomial) -> float:
    s, w = np.polynomial.legendre.leggauss(40)
    x = (s + 1) / 2
    return float(np.sum(w * evaluate(p, x) * evaluate(q, x)) / 2)


coeff_lists = st.lists(st.floats(-10, 10, allow_nan=False), min_size=1, max_size=21)


class TestShiftedLegendre:
    def test_low_degree_closed_forms(self):
        assert shifted_legendre_monomial(0) == (1,)
        assert shifted_legendre_monomial(1) == (-1, 2)
        assert shifted_legendre_monomial(2) == (1, -6, 6)

    @pytest.mark.parametrize("n", range(26))
    def test_recurrence_matches_sympy(self, n):
        assert list(shifted_legendre_monomial(n)) == sympy_shifted_legendre(n)

    def test_unit_coefficient_vector(self):
        p = shifted_legendre(4)
        assert p.coeffs.tolist() == [0, 0, 0, 0, 1]

    def test_negative_degree_rejected(self):
        with pytest.raises(ValueError):
            shifted_legendre(-1)

    @pytest.mark.parametrize("n", [0, 3, 8, 15])
    def test_endpoint_values(self, n):
        assert evaluate(shifted_legendre(n), 1.0) == pytest.approx(1.0, abs=1e-14)
        assert evaluate(shifted_legendre(n), 0.0) == pytest.approx((-1) ** n, abs=1e-14)


class TestInnerProduct:
    def test_examples(self):
        assert inner_product(shifted_legendre(0), shifted_legendre(0)) == 1.0
        assert inner_product(shifted_legendre(3), shifted_legendre(3)) == pytest.approx(1 / 7, rel=1e-15)
        assert inner_product(shifted_legendre(2), shifted_legendre(5)) == 0.0

    def test_orthogonality_up_to_25(self):
        for n in range(26):
            for k in range(26):
                want = 1.0 / (2 * n + 1) if n == k else 0.0
                got = inner_product(shifted_legendre(n), shifted_legendre(k))
                assert abs(got - want) <= 1e-14 / (2 * n + 1)

    def test_agrees_with_gauss_quadrature(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            p = Polynomial(rng.standard_normal(15))
            q = Polynomial(rng.standard_normal(21))
            assert inner_product(p, q) == pytest.approx(gauss_inner(p, q), rel=1e-12, abs=1e-14)

    def test_exact_against_sympy_integral(self):
        p = Polynomial([0.5, -1.25, 2.0])
        q = Polynomial([1.0, 0.0, 0.0, 3.0])
        ps = sum(c * sp.legendre(n, 2 * X - 1) for n, c in enumerate(map(sp.Rational, p.coeffs)))
        qs = sum(c * sp.legendre(n, 2 * X - 1) for n, c in enumerate(map(sp.Rational, q.coeffs)))
        want = float(sp.integrate(sp.expand(ps * qs), (X, 0, 1)))
        assert inner_product(p, q) == pytest.approx(want, rel=1e-15)

    @settings(max_examples=60, deadline=None)
    @given(coeff_lists, coeff_lists, coeff_lists, st.floats(-5, 5), st.floats(-5, 5))
    def test_linearity(self, pc, qc, rc, a, b):
        p, q, r = Polynomial(pc), Polynomial(qc), Polynomial(rc)
        lhs = inner_product(a * p + b * q, r)
        rhs = a * inner_product(p, r) + b * inner_product(q, r)
        scale = (abs(a) * norm(p) + abs(b) * norm(q)) * norm(r)
        assert abs(lhs - rhs) <= 1e-13 * max(scale, 1e-300)


class TestEvaluate:
    def test_examples(self):
        assert evaluate(shifted_legendre(1), 0.5) == 0.0
        assert evaluate(shifted_legendre(2), 0.0) == pytest.approx(1.0, abs=1e-15)
        assert evaluate(shifted_legendre(2), 0.25) == pytest.approx(-0.125, abs=1e-15)

    def test_array_and_scalar(self):
        p = shifted_legendre(3)
        assert isinstance(evaluate(p, 0.3), float)
        assert evaluate(p, np.array([0.1, 0.2])).shape == (2,)

    @pytest.mark.parametrize("degree", [4, 8, 12, 16])
    def test_consistent_with_monomial_horner(self, degree):
        rng = np.random.default_rng(degree)
        xs = np.linspace(0.0, 1.0, 101)
        for _ in range(5):
            p = Polynomial(rng.uniform(-1, 1, degree + 1))
            cm = to_monomial(p)
            horner = np.array([exact_horner(cm, x) for x in xs])
            assert np.max(np.abs(horner - evaluate(p, xs))) <= 1e-9

    def test_float_monomial_horner_at_low_degree(self):
        rng = np.random.default_rng(3)
        xs = np.linspace(0.0, 1.0, 101)
        p = Polynomial(rng.uniform(-1, 1, 9))
        cm = to_monomial(p, exact=False)
        horner = np.zeros_like(xs)
        for c in reversed(cm):
            horner = horner * xs + c
        assert np.max(np.abs(horner - evaluate(p, xs))) <= 1e-9

    def test_finite(self):
        p = Polynomial(np.full(21, 1e3))
        assert np.all(np.isfinite(evaluate(p, np.linspace(0, 1, 11))))


class TestMonomialConversion:
    def test_exact_against_sympy(self):
        p = Polynomial([0.25, -0.5, 1.0, 0.125])
        expr = sum(sp.Rational(c) * sp.legendre(n, 2 * X - 1) for n, c in enumerate(p.coeffs))
        want = [sp.Rational(c) for c in reversed(sp.Poly(sp.expand(expr), X).all_coeffs())]
        assert [sp.Rational(c.numerator, c.denominator) for c in to_monomial(p)] == want

    @pytest.mark.parametrize("degree", [5, 10, 15, 20])
    def test_round_trip(self, degree):
        rng = np.random.default_rng(100 + degree)
        p = Polynomial(rng.standard_normal(degree + 1))
        back = from_monomial(to_monomial(p))
        rel = np.max(np.abs(back.coeffs - p.coeffs)) / np.max(np.abs(p.coeffs))
        assert rel <= 1e-8

    def test_float_round_trip_at_low_degree(self):
        rng = np.random.default_rng(8)
        p = Polynomial(rng.standard_normal(9))
        back = from_monomial(to_monomial(p, exact=False))
        rel = np.max(np.abs(back.coeffs - p.coeffs)) / np.max(np.abs(p.coeffs))
        assert rel <= 1e-8

    def test_monomial_matrix_inverts_legendre(self):
        d = 8
        T = monomial_to_legendre_matrix(d)
        M = np.zeros((d + 1, d + 1))
        for n in range(d + 1):
            for k, c in enumerate(shifted_legendre_monomial(n)):
                M[k, n] = c
        assert np.allclose(T @ M, np.eye(d + 1), atol=1e-9)


class TestDerivative:
    def test_examples(self):
        assert derivative(shifted_legendre(1), 1).coeffs.tolist() == [2.0]
        assert derivative(Polynomial.constant(3.0), 1).coeffs.tolist() == [0.0]
        assert np.allclose(derivative(shifted_legendre(2), 2).coeffs, [12.0])

    def test_above_degree_is_zero(self):
        assert derivative(shifted_legendre(3), 5) == Polynomial.zero()

    def test_against_sympy(self):
        p = Polynomial([0.5, -1.0, 0.25, 2.0, -0.75, 1.5])
        expr = sum(sp.Rational(c) * sp.legendre(n, 2 * X - 1) for n, c in enumerate(p.coeffs))
        for r in (1, 2, 3):
            d = sp.lambdify(X, sp.diff(expr, X, r))
            for x in (0.0, 0.3, 0.77, 1.0):
                assert evaluate(derivative(p, r), x) == pytest.approx(float(d(x)), rel=1e-12, abs=1e-12)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            derivative(shifted_legendre(2), -1)


class TestArithmetic:
    def test_multiply_pointwise(self):
        rng = np.random.default_rng(4)
        p, q = Polynomial(rng.standard_normal(7)), Polynomial(rng.standard_normal(5))
        xs = np.linspace(0, 1, 13)
        assert np.allclose(evaluate(multiply(p, q), xs), evaluate(p, xs) * evaluate(q, xs), atol=1e-12)
        assert (p * q).degree_bound == 10

    def test_affine(self):
        s = Polynomial.affine(0.1, -0.2)
        assert evaluate(s, 0.0) == pytest.approx(0.1, abs=1e-16)
        assert evaluate(s, 1.0) == pytest.approx(-0.2, abs=1e-16)

    def test_immutable(self):
        p = shifted_legendre(2)
        with pytest.raises(ValueError):
            p.coeffs[0] = 1.0

    def test_zero_polynomial(self):
        z = Polynomial.zero(4)
        assert not np.any(z.coeffs)
        assert z == Polynomial([])
