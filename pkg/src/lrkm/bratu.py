"""The Bratu problem ``D^alpha y + lam * exp(y) = 0``, ``y(0) = y(1) = 0``.

For ``alpha = 2`` the solutions are

    y(x) = -2 log( cosh((x - 1/2) theta / 2) / cosh(theta / 4) ),

where ``theta`` solves ``theta = sqrt(2 lam) cosh(theta / 4)``.  Two roots
exist for ``lam < LAMBDA_CRITICAL``, they merge at the critical value and
disappear beyond it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import mpmath
import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, NoRootError
from .fractional import caputo_polynomial_at
from .polynomial import evaluate
from .solver import RhsFunction, SolutionReport, SolverConfig, solve_iterative

__all__ = [
    "LAMBDA_CRITICAL",
    "BratuExact",
    "solve_theta",
    "critical_lambda",
    "exact_solution",
    "exact_derivative",
    "bratu_rhs",
    "residual_profile",
    "collocation_residuals",
    "solve_bratu",
]

# published critical value (written with a decimal comma in the source)
LAMBDA_CRITICAL = 3.513830719

Branch = Literal["lower", "upper"]


def _theta_equation(lam: float):
    a = math.sqrt(2.0 * lam)

    def F(t):
        return t - a * math.cosh(t / 4.0)

    def dF(t):
        return 1.0 - a * math.sinh(t / 4.0) / 4.0

    return a, F, dF


def _polish(F, dF, t: float, lo: float, hi: float, steps: int = 8) -> float:
    # Newton steps that are only accepted while they shrink |F| inside [lo, hi]
    for _ in range(steps):
        d = dF(t)
        if d == 0.0:
            break
        t_new = t - F(t) / d
        if not lo <= t_new <= hi or abs(F(t_new)) >= abs(F(t)):
            break
        t = t_new
    return t


def solve_theta(lam: float, branch: Branch = "lower") -> float:
    """Root of ``theta - sqrt(2 lam) cosh(theta / 4)``.

    ``F`` is concave with its maximum at ``4 asinh(4 / sqrt(2 lam))``; the
    lower root lies left of it and the upper root right of it.  Each root is
    bracketed, bisected to 1e-8 and then polished with Newton steps.

    Raises
    ------
    NoRootError
        If ``lam`` exceeds the critical value (no real root).
    """
    if not lam > 0.0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    if branch not in ("lower", "upper"):
        raise ValueError(f"unknown branch {branch!r}")
    a, F, dF = _theta_equation(lam)
    t_star = 4.0 * math.asinh(4.0 / a)
    f_star = F(t_star)
    if f_star < 0.0:
        if f_star > -1e-12 * t_star:
            return t_star  # double root up to rounding
        raise NoRootError(f"theta = sqrt(2 lam) cosh(theta/4) has no real root for lam = {lam}")
    if branch == "lower":
        lo, hi = 0.0, t_star
    else:
        lo, hi = t_star, 2.0 * t_star
        while F(hi) > 0.0:
            lo, hi = hi, 2.0 * hi
    t = brentq(F, lo, hi, xtol=1e-8, rtol=4 * np.finfo(float).eps)
    return _polish(F, dF, t, lo, hi)


def critical_lambda() -> float:
    """Critical value recomputed from ``F(theta) = F'(theta) = 0``.

    With ``u = theta / 4`` both conditions reduce to ``u tanh(u) = 1`` and
    ``lam = 8 / sinh(u)**2``.
    """
    u = brentq(lambda u: u * math.tanh(u) - 1.0, 0.5, 2.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    return 8.0 / math.sinh(u) ** 2


@dataclass(frozen=True)
class BratuExact:
    """Closed-form ``alpha = 2`` solution for one ``lam`` and branch."""

    lam: float
    theta: float
    branch: Branch = "lower"

    @classmethod
    def from_lambda(cls, lam: float, branch: Branch = "lower") -> "BratuExact":
        return cls(lam=float(lam), theta=solve_theta(lam, branch), branch=branch)

    def __call__(self, x):
        return exact_solution(self, x)

    def derivative(self, x, r: int = 1):
        return exact_derivative(self, x, r)


def exact_solution(ex: BratuExact, x):
    """Closed-form solution at ``x`` (scalar or array)."""
    xs = np.asarray(x, dtype=float)
    th = ex.theta
    # log-cosh difference written to stay accurate near the endpoints
    out = -2.0 * (np.log(np.cosh((xs - 0.5) * th / 2.0)) - math.log(math.cosh(th / 4.0)))
    return float(out) if out.ndim == 0 else out


def exact_derivative(ex: BratuExact, x, r: int = 1):
    """r-th derivative (``0 <= r <= 4``) of the closed-form solution."""
    xs = np.asarray(x, dtype=float)
    th = ex.theta
    z = (xs - 0.5) * th / 2.0
    t = np.tanh(z)
    s2 = 1.0 / np.cosh(z) ** 2
    if r == 0:
        out = np.asarray(exact_solution(ex, xs))
    elif r == 1:
        out = -th * t
    elif r == 2:
        out = -(th**2) / 2.0 * s2
    elif r == 3:
        out = th**3 / 2.0 * s2 * t
    elif r == 4:
        out = th**4 / 4.0 * s2 * (s2 - 2.0 * t**2)
    else:
        raise DomainError("exact derivatives are available for r = 0..4")
    return float(out) if out.ndim == 0 else out


def bratu_rhs(lam: float) -> RhsFunction:
    """``g(x, y) = -lam * exp(y)``; mpf arguments are evaluated in mpmath."""
    if not lam > 0.0:
        raise DomainError(f"lambda must be positive, got {lam!r}")

    def g(x, y):
        if isinstance(y, mpmath.mpf):
            return -mpmath.mpf(lam) * mpmath.exp(y)
        return -lam * math.exp(y)

    return g


def solve_bratu(lam: float, alpha: float = 2.0, m: int = 20, n_iters: int = 30,
                **kwargs) -> SolutionReport:
    """Convenience wrapper around :func:`solve_iterative` for the Bratu problem."""
    config = SolverConfig(alpha=alpha, m=m, n_iters=n_iters, **kwargs)
    return solve_iterative(config, bratu_rhs(lam))


def residual_profile(report: SolutionReport, lam: float, alpha=None, grid_size: int = 201):
    """``D^alpha y(x) + lam exp(y(x))`` on ``x_j = j / grid_size``, ``j = 1..grid_size``.

    Returns
    -------
    xs, residuals : ndarray
    max_abs : float
    """
    alpha = report.config.alpha if alpha is None else alpha
    xs = np.arange(1, grid_size + 1) / grid_size
    res = _residual(report, lam, alpha, xs)
    return xs, res, float(np.max(np.abs(res)))


def collocation_residuals(report: SolutionReport, lam: float) -> np.ndarray:
    """Residual at the collocation points, where the equation was imposed."""
    return _residual(report, lam, report.config.alpha, np.array(report.config.points))


def _residual(report: SolutionReport, lam: float, alpha, xs: np.ndarray) -> np.ndarray:
    y = report.solution
    lhs = np.atleast_1d(caputo_polynomial_at(y, alpha, xs, method="jacobi"))
    return lhs + lam * np.exp(np.atleast_1d(evaluate(y, xs)))
