"""Reproducing-kernel collocation solve for ``D^alpha y = g(x, y)`` on [0, 1].

Boundary values ``y(0) = gamma0`` and ``y(1) = gamma1`` are removed with an
affine shift (the Caputo derivative of order ``alpha > 1`` annihilates affine
functions).  The homogeneous problem is then solved in the boundary-adapted
polynomial space by the fixed-point iteration

    y_n(x) = sum_i sum_{k<=i} beta_ik g(x_k, y_{n-1}(x_k)) psibar_i(x),

starting from ``y_0 = 0``.  A right-hand side that does not depend on ``y``
needs a single pass.

In extended precision the iterate values are kept as mpmath numbers and ``g``
receives them unrounded.  Right-hand sides written with ``math`` functions
still work (mpf converts to float) but then carry double-precision rounding,
which the collocation map amplifies by a few hundred.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import mpmath
import numpy as np

from . import precision as _precision
from .errors import DivergenceError, DomainError
from .fractional import FractionalOrder, caputo_polynomial_at
from .polynomial import Polynomial, derivative, evaluate
from .rkhs import CollocationSystem, build_collocation, build_kernel_space, default_points

__all__ = [
    "SolverConfig",
    "SolutionReport",
    "RhsFunction",
    "homogenize",
    "collocation_for",
    "solve_linear",
    "solve_iterative",
    "evaluate_solution",
    "residual_grid",
    "DIVERGENCE_LIMIT",
]

log = logging.getLogger(__name__)

RhsFunction = Callable[[float, float], float]

DIVERGENCE_LIMIT = 1e6
# final step size below which a run without an explicit stop_tol counts as converged
CONVERGED_DELTA = 1e-10
RESIDUAL_GRID_SIZE = 201


def residual_grid(size: int = RESIDUAL_GRID_SIZE) -> np.ndarray:
    """Cell midpoints ``(j + 1/2) / size``; strictly interior to (0, 1)."""
    return (np.arange(size) + 0.5) / size


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of one solve.

    ``initial_guess`` is the starting iterate of the homogeneous unknown
    (after the boundary shift has been removed); ``None`` means zero.
    ``stop_tol = 0`` runs exactly ``n_iters`` iterations.
    """

    alpha: float | FractionalOrder = 2.0
    m: int = 20
    n_iters: int = 30
    points: Sequence[float] | None = None
    gamma0: float = 0.0
    gamma1: float = 0.0
    stop_tol: float = 0.0
    initial_guess: Polynomial | None = None
    precision: str | None = None

    def __post_init__(self):
        order = FractionalOrder.coerce(self.alpha)
        if not 1.0 < order.alpha <= 2.0:
            raise DomainError(f"solver requires 1 < alpha <= 2, got {order.alpha}")
        object.__setattr__(self, "alpha", order)
        if self.m < 2:
            raise DomainError(f"m must be >= 2, got {self.m}")
        if self.n_iters < 1:
            raise DomainError(f"n_iters must be >= 1, got {self.n_iters}")
        if self.stop_tol < 0:
            raise DomainError("stop_tol must be non-negative")
        object.__setattr__(self, "precision", _precision.resolve(self.precision))
        pts = default_points(self.m) if self.points is None else tuple(float(x) for x in self.points)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class SolutionReport:
    """Result of a solve.

    ``solution`` includes the boundary shift; ``homogeneous`` is the iterate
    in the zero-boundary space.
    """

    config: SolverConfig
    solution: Polynomial
    homogeneous: Polynomial
    shift: Polynomial
    iterates_delta: tuple[float, ...]
    residual_max: float
    converged: bool
    iterations_used: int
    collocation_values: np.ndarray = field(repr=False)

    def __call__(self, x, r: int = 0):
        return evaluate_solution(self, x, r)


def homogenize(gamma0: float, gamma1: float, g: RhsFunction) -> tuple[RhsFunction, Polynomial]:
    """Shift the boundary values to zero.

    Returns ``g~(x, z) = g(x, z + s(x))`` and ``s(x) = gamma0 + (gamma1 - gamma0) x``.
    """
    shift = Polynomial.affine(gamma0, gamma1)
    if gamma0 == 0.0 and gamma1 == 0.0:
        return g, shift

    def shifted(x, z):
        return g(x, z + gamma0 + (gamma1 - gamma0) * x)

    return shifted, shift


def collocation_for(config: SolverConfig) -> CollocationSystem:
    return build_collocation(
        build_kernel_space(config.m), config.alpha, config.points, precision=config.precision
    )


def _residual_max(solution: Polynomial, order: FractionalOrder, g: RhsFunction) -> float:
    xs = residual_grid()
    lhs = np.atleast_1d(caputo_polynomial_at(solution, order, xs, method="jacobi"))
    ys = evaluate(solution, xs)
    res = [abs(lhs[i] - g(float(x), float(ys[i]))) for i, x in enumerate(xs)]
    return float(max(res))


def _rhs_values(g: RhsFunction, points: Sequence[float], values, hp: bool = False) -> np.ndarray:
    try:
        if hp:
            with mpmath.workdps(_precision.EXTENDED_DPS):
                out = np.array([mpmath.mpf(g(x, v)) for x, v in zip(points, values)], dtype=object)
                finite = all(mpmath.isfinite(v) and abs(v) < 1e300 for v in out)
        else:
            out = np.array([g(x, float(v)) for x, v in zip(points, values)], dtype=float)
            finite = bool(np.all(np.isfinite(out)))
    except OverflowError:
        finite = False
    if not finite:
        raise DivergenceError("right-hand side became non-finite at a collocation point")
    return out


def _as_float(values) -> np.ndarray:
    return np.array([float(v) for v in values])


def solve_linear(config: SolverConfig, f, system: CollocationSystem | None = None) -> SolutionReport:
    """Direct solve of ``D^alpha y = f(x)`` with the configured boundary values.

    ``f`` is a callable of ``x`` or a :class:`Polynomial`.
    """
    fx = f if isinstance(f, Polynomial) else None
    system = system or collocation_for(config)

    def g(x, _y):
        return fx(x) if fx is not None else f(x)

    rhs = _rhs_values(g, system.points, np.zeros(len(system.points)))
    c = system.expansion(rhs)
    at_points = _as_float(system.values_at_points(c))
    homogeneous = system.polynomial(c)
    shift = Polynomial.affine(config.gamma0, config.gamma1)
    solution = homogeneous + shift
    return SolutionReport(
        config=config,
        solution=solution,
        homogeneous=homogeneous,
        shift=shift,
        iterates_delta=(float(np.max(np.abs(at_points))),),
        residual_max=_residual_max(solution, config.alpha, g),
        converged=True,
        iterations_used=1,
        collocation_values=at_points,
    )


def solve_iterative(config: SolverConfig, g: RhsFunction,
                    system: CollocationSystem | None = None) -> SolutionReport:
    """Fixed-point iteration for ``D^alpha y = g(x, y)``.

    Raises
    ------
    DivergenceError
        When an iterate is non-finite or exceeds ``DIVERGENCE_LIMIT`` in
        magnitude at a collocation point.
    """
    system = system or collocation_for(config)
    g_h, shift = homogenize(config.gamma0, config.gamma1, g)
    pts = system.points
    hp = system.precision == _precision.EXTENDED

    if config.initial_guess is None:
        values = np.zeros(len(pts))
    else:
        values = np.atleast_1d(evaluate(config.initial_guess, np.array(pts)))
    if hp:
        values = np.array([mpmath.mpf(float(v)) for v in values], dtype=object)
    current = _as_float(values)

    deltas: list[float] = []
    c = None
    for it in range(config.n_iters):
        rhs = _rhs_values(g_h, pts, values, hp)
        c = system.expansion(rhs)
        new_values = system.values_at_points(c)
        new_float = _as_float(new_values)
        if not np.all(np.isfinite(new_float)) or np.max(np.abs(new_float)) > DIVERGENCE_LIMIT:
            raise DivergenceError(f"iteration {it + 1} left the admissible range")
        if hp:
            delta = float(max(abs(a - b) for a, b in zip(new_values, values)))
        else:
            delta = float(np.max(np.abs(new_float - current)))
        deltas.append(delta)
        values, current = new_values, new_float
        if config.stop_tol > 0 and delta < config.stop_tol:
            break

    homogeneous = system.polynomial(c)
    solution = homogeneous + shift
    final = deltas[-1]
    converged = final < config.stop_tol if config.stop_tol > 0 else final <= CONVERGED_DELTA
    if not converged:
        log.info("iteration stopped after %d steps with delta %.3e", len(deltas), final)
    return SolutionReport(
        config=config,
        solution=solution,
        homogeneous=homogeneous,
        shift=shift,
        iterates_delta=tuple(deltas),
        residual_max=_residual_max(solution, config.alpha, g),
        converged=converged,
        iterations_used=len(deltas),
        collocation_values=current,
    )


def evaluate_solution(report: SolutionReport, x, r: int = 0):
    """r-th derivative of the solution (boundary shift included) at ``x``."""
    if r < 0 or r >= report.config.m:
        raise DomainError(f"derivative order must satisfy 0 <= r < m = {report.config.m}")
    return evaluate(derivative(report.solution, r), x)
