"""Invariant suite runnable from the command line without reference data."""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy import integrate

from ..bratu import LAMBDA_CRITICAL, bratu_rhs, critical_lambda, solve_theta
from ..fractional import caputo_monomial, caputo_polynomial_at, rl_integral_monomial
from ..polynomial import Polynomial, derivative, evaluate, inner_product, shifted_legendre
from ..rkhs import build_collocation, build_kernel_space, kernel_at
from ..solver import SolverConfig, solve_iterative, solve_linear
from .tables import CheckOutcome

__all__ = ["CHECKS", "run_selftest"]


def _orthogonality() -> tuple[float, float]:
    worst = 0.0
    for n in range(26):
        for k in range(26):
            want = 1.0 / (2 * n + 1) if n == k else 0.0
            got = inner_product(shifted_legendre(n), shifted_legendre(k))
            worst = max(worst, abs(got - want) / (1.0 / (2 * n + 1)))
    return worst, 1e-14


def _h_gram() -> tuple[float, float]:
    h = build_kernel_space(20).h
    G = np.array([[a.inner(b) for b in h] for a in h])
    return float(np.max(np.abs(G - np.eye(len(h))))), 1e-12


def _psi_bar_gram() -> tuple[float, float]:
    worst = 0.0
    for alpha in (2.0, 1.8, 1.5):
        pb = build_collocation(build_kernel_space(16), alpha).psi_bar
        G = np.array([[a.inner(b) for b in pb] for a in pb])
        worst = max(worst, float(np.max(np.abs(G - np.eye(len(pb))))))
    return worst, 1e-10


def _reproducing() -> tuple[float, float]:
    rng = np.random.default_rng(7)
    space = build_kernel_space(12)
    worst = 0.0
    for _ in range(20):
        p = space.from_coordinates(rng.standard_normal(space.dim))
        for t in np.linspace(0.0, 1.0, 11):
            worst = max(worst, abs(p.inner(kernel_at(space, t)) - p(t)) / p.norm())
    return worst, 1e-10


def _caputo_quadrature() -> tuple[float, float]:
    worst = 0.0
    for alpha in (1.5, 1.8):
        a = 2.0 - alpha
        for deg in (4, 8, 12):
            p = shifted_legendre(deg)
            d2 = derivative(p, 2)
            for x in (0.33, 0.71, 1.0):
                # (x - r)^(a-1) handled by the algebraic weight of QUADPACK
                val, _ = integrate.quad(lambda r: evaluate(d2, r), 0.0, x, weight="alg",
                                        wvar=(0.0, a - 1.0), epsabs=1e-15, epsrel=1e-12, limit=200)
                want = val / math.gamma(a)
                got = caputo_polynomial_at(p, alpha, x)
                worst = max(worst, abs(got - want) / max(abs(want), 1e-300))
    return worst, 1e-7


def _integer_order() -> tuple[float, float]:
    rng = np.random.default_rng(11)
    p = Polynomial(rng.standard_normal(17))
    xs = np.linspace(0.05, 1.0, 20)
    got = caputo_polynomial_at(p, 2.0, xs)
    want = evaluate(derivative(p, 2), xs)
    return float(np.max(np.abs(got - want) / np.maximum(np.abs(want), 1.0))), 1e-10


def _inversion() -> tuple[float, float]:
    # D^alpha x^k is a multiple of x^(k - alpha); J^alpha must bring back x^k
    worst = 0.0
    xs = np.linspace(0.05, 1.0, 21)
    for alpha in (1.3, 1.5, 1.9):
        for k in range(2, 9):
            coef = caputo_monomial(k, alpha, 1.0)
            for x in xs:
                back = coef * rl_integral_monomial(k - alpha, alpha, x)
                worst = max(worst, abs(back - x**k) / x**k)
    return worst, 1e-9


def _manufactured() -> tuple[float, float]:
    cfg = SolverConfig(alpha=2.0, m=12, n_iters=1)
    rep = solve_linear(cfg, lambda x: -math.pi**2 * math.sin(math.pi * x))
    xs = np.linspace(0.0, 1.0, 101)
    return float(np.max(np.abs(rep(xs) - np.sin(np.pi * xs)))), 1e-6


def _boundary() -> tuple[float, float]:
    cfg = SolverConfig(alpha=1.7, m=14, n_iters=10, gamma0=0.1, gamma1=-0.2)
    rep = solve_iterative(cfg, bratu_rhs(1.0))
    return max(abs(rep(0.0) - 0.1), abs(rep(1.0) + 0.2)), 1e-12


def _theta_residual() -> tuple[float, float]:
    worst = 0.0
    for lam in (0.5, 1.0, 2.0, 3.0, 3.5):
        t = solve_theta(lam)
        worst = max(worst, abs(t - math.sqrt(2 * lam) * math.cosh(t / 4)) / t)
    return worst, 1e-13


def _critical() -> tuple[float, float]:
    return abs(critical_lambda() - LAMBDA_CRITICAL), 1e-8


CHECKS: dict[str, Callable[[], tuple[float, float]]] = {
    "Legendre orthogonality": _orthogonality,
    "orthonormality of h": _h_gram,
    "orthonormality of psi_bar": _psi_bar_gram,
    "reproducing property": _reproducing,
    "Caputo vs quadrature": _caputo_quadrature,
    "Caputo integer order": _integer_order,
    "inversion identity": _inversion,
    "manufactured linear solve": _manufactured,
    "boundary exactness": _boundary,
    "theta root residual": _theta_residual,
    "critical lambda": _critical,
}


def run_selftest() -> list[CheckOutcome]:
    out = []
    for name, fn in CHECKS.items():
        try:
            value, tol = fn()
            out.append(CheckOutcome(name, bool(value <= tol), f"{value:.2e} (tolerance {tol:.0e})"))
        except Exception as exc:  # a crashing check is a failed check
            out.append(CheckOutcome(name, False, f"{type(exc).__name__}: {exc}"))
    return out
