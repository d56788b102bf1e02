"""Legendre reproducing-kernel collocation for fractional two-point BVPs.

Solves ``D^alpha y(x) + g(x, y) = 0`` on [0, 1] with Dirichlet data and
``1 < alpha <= 2`` (Caputo derivative) in a finite polynomial kernel space,
with the Bratu problem as the worked instance.
"""

from __future__ import annotations

from .bratu import (
    LAMBDA_CRITICAL,
    BratuExact,
    bratu_rhs,
    collocation_residuals,
    critical_lambda,
    exact_derivative,
    exact_solution,
    residual_profile,
    solve_bratu,
    solve_theta,
)
from .errors import (
    CompletenessError,
    DivergenceError,
    DomainError,
    LRKMError,
    NoRootError,
    NumericalRankError,
)
from .fractional import (
    FractionalOrder,
    caputo_monomial,
    caputo_polynomial_at,
    log_gamma,
    rl_integral_monomial,
)
from .polynomial import (
    Polynomial,
    derivative,
    evaluate,
    from_monomial,
    inner_product,
    shifted_legendre,
    shifted_legendre_monomial,
    to_monomial,
)
from .rkhs import (
    CollocationSystem,
    KernelSpace,
    boundary_basis,
    build_collocation,
    build_kernel_space,
    default_points,
    kernel_at,
)
from .solver import (
    SolutionReport,
    SolverConfig,
    evaluate_solution,
    homogenize,
    solve_iterative,
    solve_linear,
)

__version__ = "0.1.0"

__all__ = [
    "LAMBDA_CRITICAL",
    "BratuExact",
    "bratu_rhs",
    "collocation_residuals",
    "critical_lambda",
    "exact_derivative",
    "exact_solution",
    "residual_profile",
    "solve_bratu",
    "solve_theta",
    "CompletenessError",
    "DivergenceError",
    "DomainError",
    "LRKMError",
    "NoRootError",
    "NumericalRankError",
    "FractionalOrder",
    "caputo_monomial",
    "caputo_polynomial_at",
    "log_gamma",
    "rl_integral_monomial",
    "Polynomial",
    "derivative",
    "evaluate",
    "from_monomial",
    "inner_product",
    "shifted_legendre",
    "shifted_legendre_monomial",
    "to_monomial",
    "CollocationSystem",
    "KernelSpace",
    "boundary_basis",
    "build_collocation",
    "build_kernel_space",
    "default_points",
    "kernel_at",
    "SolutionReport",
    "SolverConfig",
    "evaluate_solution",
    "homogenize",
    "solve_iterative",
    "solve_linear",
]
