"""Error curves of the solution and its first four derivatives."""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import numpy as np

from ..bratu import BratuExact, exact_derivative, solve_bratu
from ..errors import DomainError
from ..solver import evaluate_solution

__all__ = ["CURVE_GRID_SIZE", "run_error_curves", "write_plot_data", "format_plot_data"]

CURVE_GRID_SIZE = 401


def run_error_curves(lam: float, m: int = 20, n_iters: int = 30, alpha: float = 2.0,
                     orders: Iterable[int] = range(5), precision: str | None = None,
                     grid_size: int = CURVE_GRID_SIZE) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """``|y_m^(r)(x) - y^(r)(x)|`` on ``grid_size`` equispaced points of [0, 1].

    Raises
    ------
    DomainError
        For ``alpha != 2``: no closed-form solution exists to compare with.
    """
    if float(alpha) != 2.0:
        raise DomainError(
            f"error curves need the closed-form solution, which exists only for alpha = 2 "
            f"(got alpha = {alpha})"
        )
    report = solve_bratu(lam, alpha=2.0, m=m, n_iters=n_iters, precision=precision)
    exact = BratuExact.from_lambda(lam)
    xs = np.linspace(0.0, 1.0, grid_size)
    out = {}
    for r in orders:
        approx = np.atleast_1d(evaluate_solution(report, xs, r))
        out[r] = (xs, np.abs(approx - np.atleast_1d(exact_derivative(exact, xs, r))))
    return out


def format_plot_data(xs: np.ndarray, ys: np.ndarray, header: str | None = None) -> str:
    """Two whitespace-separated columns; an optional ``#`` comment line on top."""
    lines = [f"# {header}"] if header else []
    lines += ["%.17g %.17g" % (x, y) for x, y in zip(xs, ys)]
    return "\n".join(lines) + "\n"


def write_plot_data(path: str | Path, xs: np.ndarray, ys: np.ndarray, header: str | None = None) -> Path:
    path = Path(path)
    path.write_text(format_plot_data(xs, ys, header))
    return path
