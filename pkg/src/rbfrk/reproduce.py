"""Reproduction harness: reruns every reference table and stability figure.

Each table column is rerun at the reference N-list and compared with the
reference values under the tolerances below; each figure gets its rasters,
stability intervals and an interval-ranking check.  Runs fan out over worker
processes and are collected in a fixed order, so output is deterministic.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .analysis import ConvergenceReport, observed_orders, run_one
from .methods import catalog
from .problem import builtin
from .reference import FIGURES, RANKING_3, RANKING_4, reference_table
from .stability import rasterize, stability_interval

WORKERS_ENV = "RBFRK_WORKERS"

# columns whose printed orders are erratic; graded only on the final error
ANOMALOUS_ROWS = {
    (5, "rbf-rk3-iib"): {1600, 3200},
    (5, "rbf-rk3-iiib"): "all",
    (6, "rbf-rk4-i+"): {3200, 6400},
    (6, "rbf-rk4-ii-"): "all",
}
# graded columns of the ex3 tables
EX3_GRADED = {"rbf-rk2", "rbf-rk3-i", "rbf-rk3-iiia", "rbf-rk3-iv"}
EX3_RK4 = {"rbf-rk4-i+", "rbf-rk4-i-", "rbf-rk4-ii+", "rbf-rk4-ii-"}


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "")
    if raw.strip():
        n = int(raw)
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be >= 1")
        return n
    return os.cpu_count() or 1


def _task(args):
    method, problem, N, T = args
    return run_one(method, builtin(problem), N, T)


def run_tasks(tasks, workers: int | None = None) -> list:
    """Run (method, problem, N, T) tasks; results come back in task order."""
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(tasks) < 2:
        return [_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class ColumnVerdict:
    table: int
    method: str
    graded: bool
    passed: bool
    notes: list = field(default_factory=list)

    @property
    def label(self) -> str:
        if not self.graded:
            return "INFO"
        return "PASS" if self.passed else "FAIL"


def _rel(a, b) -> float:
    return abs(a - b) / abs(b)


def _rowwise(rep, ref, rel_tol, order_tol, skip=(), floor=None, notes=None) -> bool:
    ok = True
    for row, N, e_ref, o_ref in zip(rep.rows, ref.Ns, ref.errors, ref.orders):
        if N in skip:
            continue
        if floor is not None and e_ref <= floor:
            if not row.error <= 2 * e_ref:
                ok = False
                notes.append(f"N={N}: error {row.error:.3g} above 2x floor value {e_ref:.3g}")
            continue
        if not _rel(row.error, e_ref) <= rel_tol:
            ok = False
            notes.append(f"N={N}: error {row.error:.3g} vs {e_ref:.3g}")
        if o_ref is not None and (row.order is None or abs(row.order - o_ref) > order_tol):
            ok = False
            notes.append(f"N={N}: order {row.order} vs {o_ref}")
    return ok


def _orders_only(rep, ref, order_tol, skip, notes) -> bool:
    ok = True
    for row, N, o_ref in zip(rep.rows, ref.Ns, ref.orders):
        if N in skip or o_ref is None:
            continue
        if row.order is None or abs(row.order - o_ref) > order_tol:
            ok = False
            notes.append(f"N={N}: order {row.order} vs {o_ref}")
    return ok


def grade_column(k: int, rep: ConvergenceReport, ref) -> ColumnVerdict:
    """Apply the reproduction tolerances for table ``k`` to one column."""
    m, notes = ref.method, []
    is_rbf = m.startswith("rbf")
    if k == 1:
        ok = _rowwise(rep, ref, 0.02, 0.05, notes=notes)
        return ColumnVerdict(k, m, True, ok, notes)
    if k in (2, 3):
        ok = _rowwise(rep, ref, 0.05, 0.05, floor=1e-13, notes=notes)
        return ColumnVerdict(k, m, True, ok, notes)
    if k in (4, 5, 6):
        if not is_rbf:
            return ColumnVerdict(k, m, True, _rowwise(rep, ref, 0.05, 0.05, notes=notes), notes)
        anomalous = ANOMALOUS_ROWS.get((k, m))
        if anomalous is None:
            return ColumnVerdict(k, m, True, _orders_only(rep, ref, 0.1, (), notes), notes)
        skip = set(ref.Ns) if anomalous == "all" else anomalous
        ok = _orders_only(rep, ref, 0.1, skip, notes)
        final, final_ref = rep.rows[-1].error, ref.errors[-1]
        if not (math.isfinite(final) and final_ref / 10 <= final <= final_ref * 10):
            ok = False
            notes.append(f"final error {final:.3g} not within 10x of {final_ref:.3g}")
        return ColumnVerdict(k, m, True, ok, notes)
    # ex3 tables
    if m in EX3_GRADED:
        return ColumnVerdict(k, m, True, _rowwise(rep, ref, 0.05, 0.1, notes=notes), notes)
    if m in EX3_RK4:
        last = rep.rows[-1]
        ok = True
        if last.order is None or abs(last.order - 4.0) > 0.15:
            ok = False
            notes.append(f"finest order {last.order} not within 4 +- 0.15")
        if last.fallback_count <= 0:
            ok = False
            notes.append("no fallback recorded")
        return ColumnVerdict(k, m, True, ok, notes)
    return ColumnVerdict(k, m, False, True, notes)


# ---------------------------------------------------------------------------
# tables


@dataclass
class TableResult:
    number: int
    reports: dict  # method -> ConvergenceReport
    verdicts: dict  # method -> ColumnVerdict

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values())


def reproduce_tables(numbers=range(1, 10), workers: int | None = None) -> dict:
    refs = {k: reference_table(k) for k in numbers}
    tasks, index = [], []
    for k, cols in refs.items():
        for m, ref in cols.items():
            for N in ref.Ns:
                tasks.append((m, ref.problem, N, ref.T))
                index.append((k, m))
    results = run_tasks(tasks, workers)
    rows: dict = {}
    for key, row in zip(index, results):
        rows.setdefault(key, []).append(row)
    out = {}
    for k, cols in refs.items():
        reports, verdicts = {}, {}
        for m, ref in cols.items():
            r = rows[(k, m)]
            for row, o in zip(r, observed_orders(list(ref.Ns), [x.error for x in r])):
                row.order = o
            rep = ConvergenceReport(m, ref.problem, ref.T, r)
            reports[m] = rep
            verdicts[m] = grade_column(k, rep, ref)
        out[k] = TableResult(k, reports, verdicts)
    return out


def table_csv(result: TableResult) -> str:
    refs = reference_table(result.number)
    lines = ["method,N,error,error_full,reference_error,order,reference_order,"
             "max_abs_eps2,fallback_count,verdict"]
    for m, rep in result.reports.items():
        ref, verdict = refs[m], result.verdicts[m].label
        for row, e_ref, o_ref in zip(rep.rows, ref.errors, ref.orders):
            lines.append(",".join([
                m, str(row.N), f"{row.error:.2e}", repr(row.error), f"{e_ref:.2e}",
                "" if row.order is None else f"{row.order:.4f}",
                "" if o_ref is None else f"{o_ref:.4f}",
                repr(row.max_abs_eps2), str(row.fallback_count), verdict]))
    return "\n".join(lines) + "\n"


def table_summary(result: TableResult) -> dict:
    cols = {}
    for m, rep in result.reports.items():
        finest = rep.rows[-1].order
        cols[m] = {
            "formal_order": catalog(m).order,
            "finest_observed_order": None if finest is None else round(finest, 4),
            "final_error": rep.rows[-1].error if math.isfinite(rep.rows[-1].error) else repr(rep.rows[-1].error),
            "fallbacks_at_finest": rep.rows[-1].fallback_count,
            "verdict": result.verdicts[m].label,
            "notes": result.verdicts[m].notes,
        }
    return {"table": result.number, "verdict": "PASS" if result.passed else "FAIL", "columns": cols}


# ---------------------------------------------------------------------------
# figures


@dataclass
class FigureResult:
    number: int
    grids: dict
    intervals: dict
    passed: bool
    notes: list


def reproduce_figure(k: int, window=None, res=None) -> FigureResult:
    kw = {}
    if window is not None:
        kw["window"] = window
    if res is not None:
        kw["nx"], kw["ny"] = res
    methods = FIGURES[k]
    grids = {m: rasterize(m, **kw) for m in methods}
    intervals = {m: stability_interval(m) for m in methods}
    notes = []
    if k == 1:
        rk2, rbf = intervals["rk2"].left, intervals["rbf-rk2"].left
        ok = abs(rk2 + 2) <= 1e-6 and rbf > rk2
        if not ok:
            notes.append(f"rk2 endpoint {rk2}, rbf-rk2 endpoint {rbf}")
    else:
        expected = list(RANKING_3 if k == 2 else RANKING_4)
        observed = sorted(expected, key=lambda m: intervals[m].left)
        ok = observed == expected
        if not ok:
            notes.append(f"ranking {observed} differs from {expected}")
    return FigureResult(k, grids, intervals, ok, notes)


def figure_summary(fig: FigureResult) -> dict:
    return {
        "figure": fig.number,
        "verdict": "PASS" if fig.passed else "FAIL",
        "notes": fig.notes,
        "methods": {m: {"interval_left": fig.intervals[m].left,
                        "pgm": f"figure{fig.number}_{m}.pgm",
                        "inside_fraction": float(g.mask.mean())}
                    for m, g in fig.grids.items()},
        "window": {"re_range": list(next(iter(fig.grids.values())).re_range),
                   "im_range": list(next(iter(fig.grids.values())).im_range)},
    }

