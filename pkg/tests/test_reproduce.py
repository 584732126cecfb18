import math

import pytest

from rbfrk.analysis import ConvergenceReport, ConvergenceRow, run_one
from rbfrk.problem import EX2, EX3, zero_partials
from rbfrk.reference import CORRECTIONS, TABLES, TABLE_SETUP, reference_table
from rbfrk.reproduce import (WORKERS_ENV, grade_column, reproduce_figure, reproduce_tables,
                             run_tasks, table_csv, table_summary, worker_count)


def _order(ref, i):
    return math.log(ref.errors[i - 1] / ref.errors[i]) / math.log(ref.Ns[i] / ref.Ns[i - 1])


@pytest.mark.parametrize("k", range(1, 10))
def test_reference_orders_match_reference_errors(k):
    for ref in reference_table(k).values():
        assert len(ref.Ns) == len(ref.errors) == len(ref.orders)
        for i in range(1, len(ref.Ns)):
            assert _order(ref, i) == pytest.approx(ref.orders[i], abs=0.02)


def test_corrections_fix_inconsistent_entries():
    for (k, m, N), fixed in CORRECTIONS.items():
        raw = dict((row[0], row[1]) for row in TABLES[k][m])[N]
        # each fix only moves the decimal exponent
        shift = math.log10(raw / fixed)
        assert shift == pytest.approx(round(shift)) and round(shift) != 0


def test_worker_count(monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert worker_count() == 3
    monkeypatch.setenv(WORKERS_ENV, "0")
    with pytest.raises(ValueError):
        worker_count()
    monkeypatch.delenv(WORKERS_ENV)
    assert worker_count() >= 1


def test_run_tasks_keeps_order():
    tasks = [("rk2", "ex1", N, 1.0) for N in (40, 10, 20)]
    serial = run_tasks(tasks, 1)
    parallel = run_tasks(tasks, 2)
    assert [r.N for r in parallel] == [40, 10, 20]
    assert [r.error for r in serial] == [r.error for r in parallel]


def _report(ref, errors, orders, fallbacks=0):
    rows = [ConvergenceRow(N, e, o, 0.0, fallbacks, not math.isfinite(e))
            for N, e, o in zip(ref.Ns, errors, orders)]
    return ConvergenceReport(ref.method, ref.problem, ref.T, rows)


def test_grading_table1_tolerance():
    ref = reference_table(1)["rk2"]
    ok = grade_column(1, _report(ref, [e * 1.019 for e in ref.errors], ref.orders), ref)
    bad = grade_column(1, _report(ref, [e * 1.021 for e in ref.errors], ref.orders), ref)
    assert ok.label == "PASS" and bad.label == "FAIL"


def test_grading_round_off_floor():
    ref = reference_table(3)["rbf-rk4-i+"]
    small = [i for i, e in enumerate(ref.errors) if e <= 1e-13]
    assert small
    errors = list(ref.errors)
    for i in small:
        errors[i] = 1.9 * ref.errors[i]
    assert grade_column(3, _report(ref, errors, ref.orders), ref).passed
    errors[small[-1]] = 2.1 * ref.errors[small[-1]]
    assert not grade_column(3, _report(ref, errors, ref.orders), ref).passed


def test_grading_anomalous_column_uses_final_error():
    ref = reference_table(6)["rbf-rk4-ii-"]
    orders = [None] + [9.0] * (len(ref.Ns) - 1)
    errors = list(ref.errors)
    errors[-1] = ref.errors[-1] * 9
    assert grade_column(6, _report(ref, errors, orders), ref).passed
    errors[-1] = ref.errors[-1] * 11
    assert not grade_column(6, _report(ref, errors, orders), ref).passed


def test_grading_ex3_rk4_needs_fallbacks():
    ref = reference_table(9)["rbf-rk4-ii+"]
    orders = [None] + [4.0] * (len(ref.Ns) - 1)
    assert grade_column(9, _report(ref, ref.errors, orders, fallbacks=3), ref).passed
    assert not grade_column(9, _report(ref, ref.errors, orders, fallbacks=0), ref).passed


def test_ungraded_ex3_column_is_info():
    ref = reference_table(8)["rbf-rk3-iib"]
    assert grade_column(8, _report(ref, ref.errors, ref.orders), ref).label == "INFO"


def test_reproduce_table1():
    res = reproduce_tables([1], workers=1)[1]
    assert res.passed
    csv_text = table_csv(res)
    header, first = csv_text.splitlines()[:2]
    assert header.startswith("method,N,error,error_full,reference_error,order")
    assert first.startswith("rk2,10,9.34e-04,")
    summary = table_summary(res)
    assert summary["columns"]["rbf-rk2"]["formal_order"] == 3
    assert summary["verdict"] == "PASS"


def test_figure1():
    fig = reproduce_figure(1, res=(41, 41))
    assert fig.passed
    assert fig.intervals["rk2"].left == pytest.approx(-2.0, abs=1e-6)
    assert fig.intervals["rbf-rk2"].left > -2.0


def test_ex3_tables_use_final_time_three():
    assert {TABLE_SETUP[k] for k in (7, 8, 9)} == {("ex3", 3.0)}


# Sensitivity diagnostic: the reference RBF-RK4 columns for ex2 and ex3 are
# reproduced when the fourth-order mixed partials f_tttt, f_tttu, f_ttuu,
# f_tuuu are dropped from the tower (ex3 additionally in complex arithmetic).
TRUNCATED = ["f_tttt", "f_tttu", "f_ttuu", "f_tuuu"]


@pytest.mark.parametrize("method", ["rbf-rk4-i+", "rbf-rk4-i-", "rbf-rk4-ii+", "rbf-rk4-ii-"])
def test_truncated_tower_matches_ex2_reference(method):
    ref = reference_table(6)[method]
    prob = zero_partials(EX2, TRUNCATED)
    for N, e in zip(ref.Ns, ref.errors):
        if e < 1e-10:
            continue  # round-off level rows
        assert run_one(method, prob, N, ref.T).error == pytest.approx(e, rel=0.01)


@pytest.mark.parametrize("method", ["rbf-rk4-i+", "rbf-rk4-i-", "rbf-rk4-ii+", "rbf-rk4-ii-"])
def test_truncated_tower_matches_ex3_reference(method):
    ref = reference_table(9)[method]
    prob = zero_partials(EX3, TRUNCATED)
    for N, e in zip(ref.Ns[1:], ref.errors[1:]):
        row = run_one(method, prob, N, ref.T, complex_mode=True)
        assert row.error == pytest.approx(e, rel=0.02)
