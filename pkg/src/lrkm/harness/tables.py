"""Experiment runner and table layouts for the Bratu benchmark.

A run is described by an :class:`ExperimentSpec`; every ``(lam, alpha, m)``
cell is solved once and sampled at the evaluation points.  The layout
functions arrange the cells like the published tables and attach the golden
values used by ``--check``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .. import precision as _precision
from ..bratu import BratuExact, collocation_residuals, solve_bratu
from ..errors import LRKMError
from . import reference

__all__ = [
    "ExperimentSpec",
    "Cell",
    "TableResult",
    "CheckOutcome",
    "OUTPUTS",
    "run_experiment",
    "table_spec",
    "run_table",
    "run_spec",
    "check_table",
]

log = logging.getLogger(__name__)

OUTPUTS = frozenset({"table", "csv", "json", "plotdata"})

# tolerances of the regression checks
EXACT_TOL = 1e-11
FRACTIONAL_TOL = 1e-6
ERROR_FACTOR = 10.0
STANDARD_ERROR_FLOOR = 1e-10
ALPHA2_FLOOR = 1e-10
RATIO_BAND = (10.0, 300.0)
LAMBDA1_M14_TOL = 5e-12
MONOTONE_M_MAX = 16


def _on_grid(points: Iterable[float]) -> list[int]:
    """Indices into the reference grid of the requested points that lie on it."""
    idx = []
    for x in points:
        for i, g in enumerate(reference.GRID):
            if abs(x - g) <= 1e-12:
                idx.append(i)
                break
    return idx


@dataclass(frozen=True)
class ExperimentSpec:
    """A sweep over ``lambdas x alphas x m_values`` with a fixed iteration count."""

    name: str
    lambdas: tuple[float, ...]
    alphas: tuple[float, ...]
    m_values: tuple[int, ...]
    n_iters: int = 30
    eval_points: tuple[float, ...] = reference.GRID
    outputs: frozenset[str] = frozenset({"table"})
    precision: str | None = None

    def __post_init__(self):
        for attr in ("lambdas", "alphas", "m_values", "eval_points"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        if not (self.lambdas and self.alphas and self.m_values):
            raise ValueError("lambdas, alphas and m_values must be non-empty")
        if any(not 0.0 < x < 1.0 for x in self.eval_points):
            raise ValueError("evaluation points must lie in the open interval (0, 1)")
        outs = frozenset(self.outputs)
        if not outs <= OUTPUTS:
            raise ValueError(f"unknown outputs {sorted(outs - OUTPUTS)}")
        object.__setattr__(self, "outputs", outs)
        object.__setattr__(self, "precision", _precision.resolve(self.precision))


@dataclass(frozen=True)
class Cell:
    """One solved ``(lam, alpha, m)`` combination sampled at the evaluation points.

    ``errors`` is ``None`` unless ``alpha == 2``.  A failed solve leaves NaN
    values and the message in ``failure``.
    """

    lam: float
    alpha: float
    m: int
    values: tuple[float, ...]
    exact: tuple[float, ...] | None
    errors: tuple[float, ...] | None
    residual_max: float
    collocation_residual: float
    converged: bool
    failure: str | None = None


def run_experiment(spec: ExperimentSpec) -> list[Cell]:
    """Solve every cell of ``spec``; a failing cell is recorded and the run continues."""
    xs = np.array(spec.eval_points, dtype=float)
    cells = []
    for lam in spec.lambdas:
        exact = None
        for alpha in spec.alphas:
            for m in spec.m_values:
                nan = tuple(math.nan for _ in xs)
                try:
                    report = solve_bratu(lam, alpha=alpha, m=m, n_iters=spec.n_iters,
                                         precision=spec.precision)
                    values = tuple(float(v) for v in np.atleast_1d(report(xs))) if xs.size else ()
                    ex = err = None
                    if alpha == 2.0:
                        if exact is None:
                            oracle = BratuExact.from_lambda(lam)
                            exact = tuple(float(v) for v in np.atleast_1d(oracle(xs))) if xs.size else ()
                        ex = exact
                        err = tuple(abs(a - b) for a, b in zip(values, exact))
                    colres = float(np.max(np.abs(collocation_residuals(report, lam))))
                    cells.append(Cell(lam, alpha, m, values, ex, err, report.residual_max,
                                      colres, report.converged))
                except (LRKMError, ArithmeticError, ValueError) as exc:
                    log.warning("cell lam=%g alpha=%g m=%d failed: %s", lam, alpha, m, exc)
                    cells.append(Cell(lam, alpha, m, nan, None, None, math.nan, math.nan,
                                      False, failure=f"{type(exc).__name__}: {exc}"))
    return cells


@dataclass
class TableResult:
    """A rectangular result table; ``columns[0]`` is always ``"x"``.

    ``kinds`` tags every column as ``"x"``, ``"value"``, ``"error"`` or
    ``"quoted"`` (published data from other methods); it only affects the
    text rendering.
    """

    table_id: int | str
    params: dict
    columns: tuple[str, ...]
    rows: list[tuple[float, ...]]
    kinds: tuple[str, ...] = ()
    failures: list[str] = field(default_factory=list)
    reference_rows: list[int] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([r[j] for r in self.rows], dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow(["%.17g" % v for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, table_id: int | str = "", params: dict | None = None) -> "TableResult":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header is None:
            raise ValueError("empty CSV")
        rows = [tuple(float(v) for v in row) for row in reader if row]
        return cls(table_id, dict(params or {}), tuple(header), rows)

    def to_json(self) -> str:
        def num(v):
            return None if math.isnan(v) else v

        doc = {
            "table_id": self.table_id,
            "params": self.params,
            "columns": list(self.columns),
            "rows": [{c: num(v) for c, v in zip(self.columns, row)} for row in self.rows],
        }
        if self.failures:
            doc["failures"] = self.failures
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "TableResult":
        doc = json.loads(text)
        cols = tuple(doc["columns"])
        rows = [
            tuple(math.nan if r[c] is None else float(r[c]) for c in cols) for r in doc["rows"]
        ]
        return cls(doc["table_id"], doc["params"], cols, rows, failures=doc.get("failures", []))

    def to_text(self) -> str:
        kinds = self.kinds or ("x",) + ("value",) * (len(self.columns) - 1)
        fmt = {"x": "{:.4g}", "value": "{:.14f}", "error": "{:.2E}", "quoted": "{:.2E}"}
        cells = [[fmt[k].format(v) if not math.isnan(v) else "failed" for k, v in zip(kinds, row)]
                 for row in self.rows]
        widths = [max([len(c)] + [len(r[j]) for r in cells]) for j, c in enumerate(self.columns)]
        title = f"table {self.table_id}: " + ", ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [title, "  ".join(c.rjust(w) for c, w in zip(self.columns, widths))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
        if not self.rows:
            lines.append("(no rows)")
        lines += [f"failed: {f}" for f in self.failures]
        return "\n".join(lines) + "\n"


def table_spec(table_id: int, m: Sequence[int] | None = None, n_iters: int = 30,
               points: Sequence[float] | None = None, precision: str | None = None) -> ExperimentSpec:
    """The sweep behind a published table, with optional overrides."""
    ref = reference.get(table_id)
    alphas = (2.0, 1.9, 1.8) if ref.kind == "values" else (2.0,)
    return ExperimentSpec(
        name=f"table{ref.table_id}",
        lambdas=(ref.lam,),
        alphas=alphas,
        m_values=tuple(m) if m else ref.m_values,
        n_iters=n_iters,
        eval_points=reference.GRID if points is None else tuple(points),
        precision=precision,
    )


def run_table(table_id: int, m: Sequence[int] | None = None, n_iters: int = 30,
              points: Sequence[float] | None = None, precision: str | None = None) -> TableResult:
    """Reproduce a published table.

    Rows are the requested ``points`` that lie on the published grid
    ``0.1 .. 0.9``; with no overlap the table is empty.
    """
    ref = reference.get(table_id)
    idx = _on_grid(reference.GRID if points is None else points)
    spec = table_spec(table_id, m, n_iters, [reference.GRID[i] for i in idx], precision)
    params = {
        "lambda": ref.lam,
        "alpha": list(spec.alphas),
        "m": list(spec.m_values),
        "n": spec.n_iters,
        "precision": spec.precision,
    }
    cells = run_experiment(spec) if idx else []
    failures = [f"lambda={c.lam:g} alpha={c.alpha:g} m={c.m}: {c.failure}" for c in cells if c.failure]
    xs = [reference.GRID[i] for i in idx]

    if ref.kind == "values":
        by_alpha = {c.alpha: c for c in cells}
        columns = ("x",) + ref.columns
        kinds = ("x",) + ("value",) * len(ref.columns)
        cols = []
        if cells:
            c2 = by_alpha[2.0]
            exact = c2.exact or tuple(BratuExact.from_lambda(ref.lam)(np.array(xs)))
            cols = [exact] + [by_alpha[a].values for a in spec.alphas]
    elif ref.kind == "errors":
        columns = ("x",) + tuple(f"m={m}" for m in spec.m_values)
        kinds = ("x",) + ("error",) * len(spec.m_values)
        cols = [c.errors or tuple(math.nan for _ in xs) for c in cells]
    else:
        columns = ("x",) + ref.columns
        kinds = ("x",) + ("quoted",) * len(ref.quoted) + ("error",)
        cols = [ref.column(q) for q in ref.quoted]
        cols = [[col[i] for i in idx] for col in cols]
        lrkm = cells[0].errors if cells else None
        cols.append(lrkm or tuple(math.nan for _ in xs))
    rows = [tuple([x] + [float(col[k]) for col in cols]) for k, x in enumerate(xs)] if cells else []
    return TableResult(ref.table_id, params, columns, rows, kinds, failures, idx)


def run_spec(spec: ExperimentSpec, table_id: str = "custom") -> TableResult:
    """Generic layout: one value column per cell plus an error column when ``alpha == 2``."""
    cells = run_experiment(spec)
    single = len(cells) == 1
    names, kinds, cols = [], [], []
    for c in cells:
        tag = "" if single else f"[lambda={c.lam:g},alpha={c.alpha:g},m={c.m}]"
        names.append("y" + tag)
        kinds.append("value")
        cols.append(c.values)
        if c.alpha == 2.0:
            nan = tuple(math.nan for _ in c.values)
            names += ["exact" + tag, "abs_error" + tag]
            kinds += ["value", "error"]
            cols += [c.exact or nan, c.errors or nan]
    rows = [tuple([x] + [col[k] for col in cols]) for k, x in enumerate(spec.eval_points)]
    params = {
        "lambda": list(spec.lambdas),
        "alpha": list(spec.alphas),
        "m": list(spec.m_values),
        "n": spec.n_iters,
        "precision": spec.precision,
    }
    failures = [f"lambda={c.lam:g} alpha={c.alpha:g} m={c.m}: {c.failure}" for c in cells if c.failure]
    return TableResult(table_id, params, ("x", *names), rows, ("x", *kinds), failures)


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _error_tolerance(published: np.ndarray, mode: str) -> np.ndarray:
    tol = ERROR_FACTOR * published
    if mode == _precision.STANDARD:
        tol = np.maximum(tol, STANDARD_ERROR_FLOOR)
    return tol


def _bounded(name: str, got: np.ndarray, tol: np.ndarray, what: str) -> CheckOutcome:
    ok = bool(np.all(np.isfinite(got)) and np.all(got <= tol))
    worst = float(np.nanmax(got / tol)) if got.size else 0.0
    return CheckOutcome(name, ok, f"{what}; worst cell at {worst:.3g} of its tolerance")


def check_table(result: TableResult) -> list[CheckOutcome]:
    """Compare ``result`` with the published table it reproduces.

    Only rows on the published grid are compared; cells computed with
    non-default ``m`` or ``n`` are not comparable and the check reports that
    as a failure rather than guessing.
    """
    ref = reference.get(int(result.table_id))
    if not result.rows:
        return []
    mode = result.params.get("precision", _precision.STANDARD)
    idx = result.reference_rows
    pub = {c: np.array([ref.column(c)[i] for i in idx]) for c in ref.columns}
    if result.params.get("n") != 30 or tuple(result.params.get("m", ())) != ref.m_values:
        return [CheckOutcome(f"table {ref.table_id} parameters", False,
                             "golden data exists only for the published m and n")]
    out: list[CheckOutcome] = []
    tid = ref.table_id

    if ref.kind == "values":
        dev = np.abs(result.column("exact") - pub["exact"])
        out.append(_bounded(f"table {tid} exact column", dev, np.full(dev.shape, EXACT_TOL),
                            f"max |diff| {np.max(dev):.2e} vs {EXACT_TOL:.0e}"))
        dev = np.abs(result.column("alpha=2") - pub["alpha=2"])
        tol = np.maximum(ERROR_FACTOR * np.abs(pub["alpha=2"] - pub["exact"]), ALPHA2_FLOOR)
        out.append(_bounded(f"table {tid} alpha=2 column", dev, tol,
                            f"max |diff| {np.max(dev):.2e}"))
        for col in ("alpha=1.9", "alpha=1.8"):
            dev = np.abs(result.column(col) - pub[col])
            out.append(_bounded(f"table {tid} {col} column", dev, np.full(dev.shape, FRACTIONAL_TOL),
                                f"max |diff| {np.max(dev):.2e} vs {FRACTIONAL_TOL:.0e}"))
    elif ref.kind == "errors":
        for col in ref.columns:
            got = result.column(col)
            out.append(_bounded(f"table {tid} {col}", got, _error_tolerance(pub[col], mode),
                                f"max error {np.max(got):.2e}, published max {np.max(pub[col]):.2e}"))
        if tid == 2:
            got = result.column("m=14")
            out.append(_bounded("table 2 m=14 absolute", got, np.full(got.shape, LAMBDA1_M14_TOL),
                                f"max error {np.max(got):.2e} vs {LAMBDA1_M14_TOL:.0e}"))
            ms = [m for m in ref.m_values if m <= MONOTONE_M_MAX]
            errs = np.stack([result.column(f"m={m}") for m in ms])
            ok = bool(np.all(np.diff(errs, axis=0) < 0))
            out.append(CheckOutcome("table 2 refinement", ok,
                                    f"errors decrease in m over {ms} at every x: {ok}"))
        else:
            lo, hi = RATIO_BAND
            errs = np.stack([result.column(c) for c in ref.columns])
            ratios = errs[:-1] / errs[1:]
            ok = bool(np.all((ratios >= lo) & (ratios <= hi)))
            out.append(CheckOutcome(
                f"table {tid} refinement ratios", ok,
                f"error ratios per m-step range {np.min(ratios):.3g}..{np.max(ratios):.3g}"
                f" at the sampled x (band {lo:g}..{hi:g})",
            ))
    else:
        got = result.column("L-RKM")
        out.append(_bounded(f"table {tid} L-RKM column", got, _error_tolerance(pub["L-RKM"], mode),
                            f"max error {np.max(got):.2e}, published max {np.max(pub['L-RKM']):.2e}"))
    if result.failures:
        out.append(CheckOutcome(f"table {tid} cells", False, "; ".join(result.failures)))
    return out
