"""Experiment runner, reference tables and command-line interface."""

from __future__ import annotations

from .curves import CURVE_GRID_SIZE, run_error_curves, write_plot_data
from .tables import (
    CheckOutcome,
    ExperimentSpec,
    TableResult,
    check_table,
    run_experiment,
    run_spec,
    run_table,
    table_spec,
)

__all__ = [
    "CURVE_GRID_SIZE",
    "CheckOutcome",
    "ExperimentSpec",
    "TableResult",
    "check_table",
    "run_error_curves",
    "run_experiment",
    "run_spec",
    "run_table",
    "table_spec",
    "write_plot_data",
]
