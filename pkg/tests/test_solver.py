from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest

from lrkm.bratu import BratuExact, bratu_rhs, collocation_residuals
from lrkm.errors import DivergenceError, DomainError
from lrkm.fractional import caputo_polynomial_at
from lrkm.polynomial import Polynomial
from lrkm.solver import (
    SolverConfig,
    evaluate_solution,
    homogenize,
    residual_grid,
    solve_iterative,
    solve_linear,
)

GRID = np.round(np.arange(1, 10) / 10, 1)


class TestConfig:
    @pytest.mark.parametrize("kwargs", [
        {"alpha": 1.0}, {"alpha": 2.5}, {"m": 1}, {"n_iters": 0}, {"stop_tol": -1.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            SolverConfig(**kwargs)

    def test_bad_precision(self):
        with pytest.raises(ValueError):
            SolverConfig(precision="quad")

    def test_default_points(self):
        cfg = SolverConfig(m=4)
        assert np.allclose(cfg.points, [0.075, 0.325, 0.575])

    def test_precision_from_environment(self, monkeypatch):
        monkeypatch.setenv("LRKM_PRECISION", "extended")
        assert SolverConfig().precision == "extended"


class TestHomogenize:
    def test_identity(self):
        g = bratu_rhs(1.0)
        gh, s = homogenize(0.0, 0.0, g)
        assert gh is g
        assert s(0.3) == 0.0

    def test_constant_shift_rescales_lambda(self):
        gh, s = homogenize(1.0, 1.0, bratu_rhs(2.0))
        assert s(0.4) == pytest.approx(1.0)
        for z in (-0.5, 0.0, 0.3):
            assert gh(0.4, z) == pytest.approx(-(2.0 * math.e) * math.exp(z), rel=1e-15)

    def test_end_to_end_boundary_values(self):
        cfg = SolverConfig(alpha=2.0, m=14, n_iters=40, gamma0=0.1, gamma1=-0.2)
        rep = solve_iterative(cfg, bratu_rhs(1.0))
        assert abs(rep(0.0) - 0.1) <= 1e-12
        assert abs(rep(1.0) + 0.2) <= 1e-12
        pts = np.array(cfg.points)
        res = caputo_polynomial_at(rep.solution, 2.0, pts) + np.exp(rep(pts))
        assert np.max(np.abs(res)) <= 1e-8


class TestLinear:
    def test_zero_data(self):
        rep = solve_linear(SolverConfig(m=8), lambda x: 0.0)
        assert not np.any(rep.solution.coeffs)
        assert rep.converged and rep.iterations_used == 1

    def test_manufactured_sine(self):
        rep = solve_linear(SolverConfig(alpha=2.0, m=12), lambda x: -math.pi**2 * math.sin(math.pi * x))
        xs = np.linspace(0, 1, 201)
        assert np.max(np.abs(rep(xs) - np.sin(np.pi * xs))) <= 1e-6

    @pytest.mark.parametrize("precision", ["standard", "extended"])
    def test_manufactured_fractional(self, precision):
        # y = x^2 - x has D^1.5 y = Gamma(3)/Gamma(1.5) x^0.5
        c = 2.0 / math.gamma(1.5)
        cfg = SolverConfig(alpha=1.5, m=8, precision=precision)
        rep = solve_linear(cfg, lambda x: c * math.sqrt(x))
        pts = np.array(cfg.points)
        res = caputo_polynomial_at(rep.solution, 1.5, pts) - c * np.sqrt(pts)
        assert np.max(np.abs(res)) <= 1e-9
        xs = np.linspace(0, 1, 51)
        assert np.max(np.abs(rep(xs) - (xs**2 - xs))) <= 1e-9

    def test_polynomial_rhs(self):
        f = Polynomial([-2.0])  # y'' = -2, y = x(1 - x)
        rep = solve_linear(SolverConfig(alpha=2.0, m=6), f)
        assert rep(0.3) == pytest.approx(0.21, abs=1e-13)


class TestIterative:
    def test_zero_rhs(self):
        rep = solve_iterative(SolverConfig(m=8, n_iters=1), lambda x, y: 0.0)
        assert not np.any(rep.solution.coeffs)
        assert rep.iterations_used == 1

    def test_bratu_midpoint_value(self):
        rep = solve_iterative(SolverConfig(alpha=2.0, m=20, n_iters=30), bratu_rhs(1.0))
        assert rep(0.5) == pytest.approx(0.14053921440047, abs=1e-11)

    def test_contraction_extended(self):
        rep = solve_iterative(SolverConfig(alpha=2.0, m=20, n_iters=30, precision="extended"),
                              bratu_rhs(1.0))
        d = np.array(rep.iterates_delta)
        assert np.all(np.diff(d[3:]) < 0)
        assert d[-1] < 1e-14

    def test_contraction_standard_until_rounding(self):
        rep = solve_iterative(SolverConfig(alpha=2.0, m=20, n_iters=30), bratu_rhs(1.0))
        d = np.array(rep.iterates_delta)
        above = d[d > 1e-12]
        assert np.all(np.diff(above[3:]) < 0)
        assert d[-1] < 1e-13

    def test_report_invariants(self):
        rep = solve_iterative(SolverConfig(alpha=1.8, m=12, n_iters=15), bratu_rhs(1.0))
        assert rep.residual_max >= 0
        assert len(rep.iterates_delta) == rep.iterations_used == 15

    def test_stop_tol(self):
        rep = solve_iterative(SolverConfig(alpha=2.0, m=14, n_iters=100, stop_tol=1e-10), bratu_rhs(1.0))
        assert rep.iterations_used < 100
        assert rep.converged
        assert rep.iterates_delta[-1] < 1e-10

    def test_not_converged_flag(self):
        rep = solve_iterative(SolverConfig(alpha=2.0, m=14, n_iters=3), bratu_rhs(3.0))
        assert not rep.converged

    def test_fixed_point_idempotent(self):
        cfg = SolverConfig(alpha=1.9, m=14, n_iters=40)
        rep = solve_iterative(cfg, bratu_rhs(1.0))
        again = solve_iterative(
            SolverConfig(alpha=1.9, m=14, n_iters=1, initial_guess=rep.homogeneous), bratu_rhs(1.0))
        assert again.iterates_delta[0] < 1e-12

    def test_residual_at_collocation_points(self):
        rep = solve_iterative(SolverConfig(alpha=2.0, m=14, n_iters=30), bratu_rhs(1.0))
        assert np.max(np.abs(collocation_residuals(rep, 1.0))) <= 1e-8

    @pytest.mark.parametrize("alpha", [1.3, 1.7, 2.0])
    def test_boundary_exactness(self, alpha):
        cfg = SolverConfig(alpha=alpha, m=16, n_iters=20, gamma0=0.25, gamma1=-0.5)
        rep = solve_iterative(cfg, bratu_rhs(0.5))
        assert abs(rep(0.0) - 0.25) <= 1e-12
        assert abs(rep(1.0) + 0.5) <= 1e-12

    def test_refinement_monotone(self):
        exact = BratuExact.from_lambda(1.0)
        xs = np.linspace(0, 1, 101)
        errs = []
        for m in (10, 12, 14, 16):
            rep = solve_iterative(SolverConfig(alpha=2.0, m=m, n_iters=30), bratu_rhs(1.0))
            errs.append(np.max(np.abs(rep(xs) - exact(xs))))
        assert all(b < a for a, b in zip(errs, errs[1:]))

    @pytest.mark.parametrize("lam", [3.6, 10.0])
    @pytest.mark.parametrize("precision", ["standard", "extended"])
    def test_divergence_beyond_critical(self, lam, precision):
        with pytest.raises(DivergenceError):
            solve_iterative(SolverConfig(alpha=2.0, m=12, n_iters=200, precision=precision),
                            bratu_rhs(lam))

    def test_extended_passes_multiprecision_values(self):
        seen = []

        def g(x, y):
            seen.append(type(y))
            return -mpmath.exp(y) if isinstance(y, mpmath.mpf) else -math.exp(y)

        solve_iterative(SolverConfig(m=6, n_iters=2, precision="extended"), g)
        # the first 2 x 5 calls are the iteration; the residual check follows in floats
        assert set(seen[:10]) == {mpmath.mpf}

    def test_extended_accepts_float_only_rhs(self):
        g = lambda x, y: -math.exp(y)  # noqa: E731
        a = solve_iterative(SolverConfig(m=10, n_iters=30, precision="extended"), g)
        b = solve_iterative(SolverConfig(m=10, n_iters=30), g)
        assert a(0.5) == pytest.approx(b(0.5), abs=1e-12)


class TestEvaluateSolution:
    def test_symmetry_of_derivative(self):
        rep = solve_iterative(SolverConfig(alpha=2.0, m=20, n_iters=30), bratu_rhs(1.0))
        assert abs(evaluate_solution(rep, 0.5, 1)) <= 1e-10

    def test_order_bound(self):
        rep = solve_iterative(SolverConfig(alpha=2.0, m=6, n_iters=5), bratu_rhs(1.0))
        with pytest.raises(DomainError):
            evaluate_solution(rep, 0.5, 6)
        with pytest.raises(DomainError):
            evaluate_solution(rep, 0.5, -1)

    def test_boundary_values_exact(self):
        rep = solve_iterative(SolverConfig(alpha=1.6, m=10, n_iters=10, gamma0=1.5, gamma1=2.5),
                              bratu_rhs(0.1))
        assert evaluate_solution(rep, 0.0) == pytest.approx(1.5, abs=1e-12)
        assert evaluate_solution(rep, 1.0) == pytest.approx(2.5, abs=1e-12)


def test_residual_grid_interior():
    g = residual_grid()
    assert g.size == 201 and g[0] > 0 and g[-1] < 1
