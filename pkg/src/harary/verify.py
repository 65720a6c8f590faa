"""Differential sweeps: closed forms against the brute-force oracle over (k, n) grids.

Each cell builds H(k, n) once, runs the oracle once, and compares every
requested closed form.  A comparison row is ``Match``, ``Mismatch`` (beyond the
absolute tolerance) or ``NotCovered`` (no closed form for that cell; listed
for visibility, never a failure).  Report bytes depend only on the config,
never on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from itertools import repeat
from typing import Callable, Mapping, Optional, Sequence

from .distances import graph_stats
from .formulas import (
    DiameterRule,
    FormulaResult,
    classify_vertex,
    closeness_formula,
    diameter_formula,
    residual_formula,
    vertex_closeness_formula_odd_odd,
)
from .graphs import HararyParams, ParameterError, ParityCase, build_harary
from .oracle import graph_closeness, residual_closeness

QUANTITIES = ("closeness", "residual", "diameter", "vertex_classes")
MAX_CELLS = 10**6

CSV_COLUMNS = (
    "k",
    "n",
    "parity_case",
    "theorem_id",
    "quantity",
    "diam_formula",
    "diam_bfs",
    "formula_value",
    "oracle_value",
    "abs_diff",
    "status",
)

FormulaFn = Callable[[HararyParams, DiameterRule], FormulaResult]

DEFAULT_FORMULAS: Mapping[str, FormulaFn] = {
    "closeness": closeness_formula,
    "residual": residual_formula,
    "diameter": diameter_formula,
}


def parse_range(text: str) -> tuple[int, int]:
    """Parse an inclusive ``lo:hi`` range (a bare ``x`` means ``x:x``)."""
    lo, sep, hi = text.partition(":")
    try:
        bounds = (int(lo), int(hi) if sep else int(lo))
    except ValueError:
        raise ParameterError(f"bad range {text!r}, expected lo:hi") from None
    return bounds


@dataclass(frozen=True)
class SweepConfig:
    k_range: tuple[int, int] = (2, 12)
    n_range: tuple[int, int] = (5, 64)
    tolerance: float = 1e-9
    quantities: tuple[str, ...] = QUANTITIES
    jobs: int = 1
    diameter_rule: DiameterRule = DiameterRule.EXACT
    allow_large: bool = False

    def __post_init__(self) -> None:
        for name in ("k_range", "n_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ParameterError(f"{name} {lo}:{hi} is empty")
        if not self.tolerance > 0:
            raise ParameterError("tolerance must be positive")
        unknown = set(self.quantities) - set(QUANTITIES)
        if unknown or not self.quantities:
            raise ParameterError(f"quantities must be a nonempty subset of {QUANTITIES}")
        if self.jobs < 1:
            raise ParameterError("jobs must be at least 1")

    def cells(self) -> list[HararyParams]:
        """Valid (k, n) pairs in row order; pairs violating 2 <= k < n are skipped."""
        k_lo, k_hi = self.k_range
        n_lo, n_hi = self.n_range
        return [
            HararyParams(k, n)
            for k in range(max(k_lo, 2), k_hi + 1)
            for n in range(max(n_lo, k + 1), n_hi + 1)
        ]


@dataclass(frozen=True)
class ComparisonRow:
    """One (cell, quantity) comparison; the non-``Match`` rows are the discrepancy records."""

    k: int
    n: int
    parity_case: str
    theorem_id: str
    quantity: str
    diam_formula: Optional[int]
    diam_bfs: int
    formula_value: Optional[float]
    oracle_value: float
    abs_diff: Optional[float]
    status: str
    #: formula trace (JSON only; CSV keeps the fixed column set)
    trace: Optional[dict] = None


@dataclass(frozen=True)
class CellSummary:
    k: int
    n: int
    parity_case: str
    diam_formula: Optional[int]
    diam_bfs: int
    closeness_spread: float
    removal_spread: Optional[float] = None
    argmin: Optional[tuple[int, ...]] = None
    cut_vertices: Optional[tuple[int, ...]] = None
    apex_has_max_closeness: Optional[bool] = None
    residual_covered: Optional[bool] = None


@dataclass
class SweepReport:
    config: SweepConfig
    cells: list[CellSummary] = field(default_factory=list)
    rows: list[ComparisonRow] = field(default_factory=list)

    @property
    def discrepancies(self) -> list[ComparisonRow]:
        return [r for r in self.rows if r.status != "Match"]

    @property
    def mismatches(self) -> list[ComparisonRow]:
        return [r for r in self.rows if r.status == "Mismatch"]

    def counts(self) -> dict[str, int]:
        out = {"Match": 0, "Mismatch": 0, "NotCovered": 0}
        for r in self.rows:
            out[r.status] += 1
        return out


def _row(params, quantity, result: FormulaResult, oracle_value, diam_f, diam_b, tol) -> ComparisonRow:
    common = dict(
        k=params.k,
        n=params.n,
        parity_case=params.parity_case.value,
        theorem_id=result.trace.theorem_id,
        quantity=quantity,
        diam_formula=diam_f,
        diam_bfs=diam_b,
        oracle_value=float(oracle_value),
        trace=result.trace.as_dict(),
    )
    if not result.covered:
        return ComparisonRow(**common, formula_value=None, abs_diff=None, status="NotCovered")
    diff = abs(result.value - float(oracle_value))
    status = "Match" if diff <= tol else "Mismatch"
    return ComparisonRow(**common, formula_value=result.value, abs_diff=diff, status=status)


def _vertex_class_row(params, rule, per_vertex, diam_f, diam_b, tol) -> Optional[ComparisonRow]:
    if params.parity_case is not ParityCase.ODD_K_ODD_N:
        return None
    base = dict(
        k=params.k,
        n=params.n,
        parity_case=params.parity_case.value,
        quantity="vertex_classes",
        diam_formula=diam_f,
        diam_bfs=diam_b,
    )
    if diam_f is None or diam_f <= 2:
        return ComparisonRow(
            **base,
            theorem_id="gap-vertex-classes-diam<=2",
            trace={"theorem_id": "gap-vertex-classes-diam<=2", "diam": diam_f},
            formula_value=None,
            oracle_value=max(per_vertex),
            abs_diff=None,
            status="NotCovered",
        )
    worst = None
    for v, oracle_v in enumerate(per_vertex):
        formula_v = vertex_closeness_formula_odd_odd(params, classify_vertex(params, v, rule), rule)
        diff = abs(formula_v - oracle_v)
        if worst is None or diff > worst[0]:
            worst = (diff, formula_v, oracle_v)
    diff, formula_v, oracle_v = worst
    return ComparisonRow(
        **base,
        theorem_id="Thm2.8-classes",
        trace={"theorem_id": "Thm2.8-classes", "diam": diam_f},
        formula_value=formula_v,
        oracle_value=oracle_v,
        abs_diff=diff,
        status="Match" if diff <= tol else "Mismatch",
    )


def evaluate_cell(
    params: HararyParams,
    cfg: SweepConfig,
    formulas: Optional[Mapping[str, FormulaFn]] = None,
) -> tuple[CellSummary, list[ComparisonRow]]:
    """Oracle once, every requested formula once; all comparison rows for the cell."""
    formulas = {**DEFAULT_FORMULAS, **(formulas or {})}
    rule, tol, wanted = cfg.diameter_rule, cfg.tolerance, cfg.quantities
    g = build_harary(params)
    stats = graph_stats(g)
    clos = graph_closeness(g)
    diam_res = formulas["diameter"](params, rule)
    diam_f = int(diam_res.exact) if diam_res.covered else None
    diam_b = stats.diameter

    rows = []
    if "closeness" in wanted:
        rows.append(_row(params, "closeness", formulas["closeness"](params, rule), clos.total, diam_f, diam_b, tol))
    res = None
    res_formula = None
    if "residual" in wanted:
        res = residual_closeness(g)
        res_formula = formulas["residual"](params, rule)
        rows.append(_row(params, "residual", res_formula, res.r_value, diam_f, diam_b, tol))
    if "diameter" in wanted:
        rows.append(_row(params, "diameter", diam_res, diam_b, diam_f, diam_b, tol))
    if "vertex_classes" in wanted:
        row = _vertex_class_row(params, rule, clos.per_vertex, diam_f, diam_b, tol)
        if row is not None:
            rows.append(row)

    odd_odd = params.parity_case is ParityCase.ODD_K_ODD_N
    apex = (params.n - 1) // 2
    summary = CellSummary(
        k=params.k,
        n=params.n,
        parity_case=params.parity_case.value,
        diam_formula=diam_f,
        diam_bfs=diam_b,
        closeness_spread=max(clos.per_vertex) - min(clos.per_vertex),
        removal_spread=None if res is None else max(res.per_removal) - min(res.per_removal),
        argmin=None if res is None else res.argmin,
        cut_vertices=None if res is None else res.cut_vertices,
        apex_has_max_closeness=(clos.per_vertex[apex] == max(clos.per_vertex)) if odd_odd else None,
        residual_covered=None if res_formula is None else res_formula.covered,
    )
    return summary, rows


def verify_cell(
    params: HararyParams,
    cfg: SweepConfig,
    formulas: Optional[Mapping[str, FormulaFn]] = None,
) -> list[ComparisonRow]:
    """Discrepancy records for one cell: every ``Mismatch`` and ``NotCovered`` row."""
    _, rows = evaluate_cell(params, cfg, formulas)
    return [r for r in rows if r.status != "Match"]


def _run_cell(params: HararyParams, cfg: SweepConfig):
    return evaluate_cell(params, cfg)


def sweep(cfg: SweepConfig) -> SweepReport:
    cells = cfg.cells()
    if not cells:
        raise ParameterError("sweep grid contains no valid (k, n) cell")
    if len(cells) > MAX_CELLS and not cfg.allow_large:
        raise ParameterError(f"{len(cells)} cells exceeds the {MAX_CELLS} cell budget; pass allow_large")
    if cfg.jobs == 1 or len(cells) == 1:
        results = [evaluate_cell(p, cfg) for p in cells]
    else:
        chunk = max(1, len(cells) // (cfg.jobs * 8))
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_cell, cells, repeat(cfg), chunksize=chunk))
    report = SweepReport(cfg)
    for summary, rows in results:
        report.cells.append(summary)
        report.rows.extend(rows)
    return report


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _config_dict(cfg: SweepConfig) -> dict:
    out = asdict(cfg)
    out["diameter_rule"] = cfg.diameter_rule.value
    out["k_range"] = list(cfg.k_range)
    out["n_range"] = list(cfg.n_range)
    out["quantities"] = list(cfg.quantities)
    # worker count never influences report bytes
    del out["jobs"]
    return out


def emit_report(report: SweepReport, fmt: str = "csv") -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in report.rows:
            writer.writerow([_fmt(getattr(row, col)) for col in CSV_COLUMNS])
        return buf.getvalue()
    if fmt == "json":
        doc = {
            "config": _config_dict(report.config),
            "summary": report.counts(),
            "rows": [asdict(r) for r in report.rows],
            "cells": [asdict(c) for c in report.cells],
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    raise ParameterError(f"unknown report format {fmt!r}")


def single_cell_report(params: HararyParams, cfg: SweepConfig) -> SweepReport:
    cfg = replace(cfg, k_range=(params.k, params.k), n_range=(params.n, params.n), jobs=1)
    summary, rows = evaluate_cell(params, cfg)
    return SweepReport(cfg, [summary], rows)

