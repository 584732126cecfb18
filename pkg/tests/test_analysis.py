import json
import math
import warnings

import pytest

from rbfrk.analysis import (appendix_coefficients, check_order_conditions, convergence_study,
                            local_order_probe, observed_orders, run_one)
from rbfrk.methods import AugmentedTableau, MethodId, catalog, rk3_family
from rbfrk.problem import EX1, EX2, EX3, linear

HS = [1e-2, 5e-3, 2.5e-3, 1.25e-3]


def test_observed_orders_are_log2_ratios():
    assert observed_orders([10, 20, 40], [1e-2, 2.5e-3, 6.25e-4]) == [None, 2.0, 2.0]
    # non-doubling ladders use the actual N ratio
    assert observed_orders([10, 30], [9e-2, 1e-2])[1] == pytest.approx(2.0)


def test_rbf_rk2_convergence_on_ex1():
    rep = convergence_study(MethodId.RBF_RK2, EX1, [10, 20, 40, 80, 160, 320], 1.0)
    last = rep.rows[-1]
    assert last.N == 320
    assert last.error == pytest.approx(1.60e-9, rel=5e-3)
    assert last.order == pytest.approx(3.0078, abs=5e-4)


def test_rk3_convergence_on_ex2():
    rep = convergence_study(MethodId.RK3_I, EX2, [200, 400, 800, 1600, 3200, 6400], 0.0)
    assert rep.rows[-1].error == pytest.approx(1.49e-6, rel=5e-3)
    assert rep.rows[-1].order == pytest.approx(2.9966, abs=5e-4)


def test_zero_field_has_zero_error(method_id):
    rep = convergence_study(method_id, linear(0.0), [1, 2, 4])
    assert rep.errors == [0.0, 0.0, 0.0]


def test_report_serialization():
    rep = convergence_study(MethodId.RK2, EX1, [10, 20])
    lines = rep.to_csv().splitlines()
    assert lines[0] == "N,error,error_full,order,max_abs_eps2,fallback_count,blew_up"
    assert lines[1].startswith("10,9.34e-04,")
    assert lines[2].split(",")[3] == "2.0828"
    data = json.loads(rep.to_json())
    assert data["rows"][1]["order"] == pytest.approx(2.0828, abs=1e-4)


def test_blow_up_row_is_infinite():
    # z = -1000 per step is far outside the stability region
    row = run_one(MethodId.RK4_I, linear(-50.0), 100, T=2000.0)
    assert row.blew_up and math.isinf(row.error)


def test_max_eps2_finite_on_examples():
    for mid in (MethodId.RBF_RK3_IV, MethodId.RBF_RK4_II_plus):
        for prob, N in ((EX1, 10), (EX2, 200), (EX3, 10)):
            assert math.isfinite(run_one(mid, prob, N).max_abs_eps2)


def test_appendix_rbf_rk3_zero_patterns():
    c1 = appendix_coefficients(catalog(MethodId.RBF_RK3_I))
    assert abs(c1["A3_3"]) < 1e-15 and abs(c1["D3_3"]) < 1e-15
    c4 = appendix_coefficients(catalog(MethodId.RBF_RK3_IV))
    assert abs(c4["B3_3"]) < 1e-15 and abs(c4["D3_3"]) < 1e-15


def test_appendix_rbf_rk4_case_sums():
    tab = catalog(MethodId.RBF_RK4_I_plus)
    c = appendix_coefficients(tab)
    # designed zeros of case I; A4_4 itself is -1/3600, not zero
    for key in ("B4_4", "D4_4", "G4_4"):
        assert abs(c[key]) < 1e-15
    assert c["A4_4"] == pytest.approx(-1 / 3600, rel=1e-12)
    a, b, cc = tab.a, tab.b, tab.c
    s1 = sum(a[i][j] * b[i] * cc[j] * cc[i]**2 for i in range(4) for j in range(i))
    s2 = sum(a[i][j] * b[i] * cc[j]**2 * cc[i] for i in range(4) for j in range(i))
    assert s1 == pytest.approx(1 / 10, abs=1e-15)
    assert s2 == pytest.approx(1 / 15, abs=1e-15)
    tab2 = catalog(MethodId.RBF_RK4_II_plus)
    c2 = appendix_coefficients(tab2)
    assert abs(c2["B4_4"]) < 1e-15 and abs(c2["H4_4"]) < 1e-15


@pytest.mark.parametrize("kind, kw", [("I", {"c2": 0.5, "c3": 1.0}), ("I", {"c2": 0.3, "c3": 0.8}),
                                      ("II", {"b3": 0.4}), ("III", {"b3": 0.75})])
def test_appendix_order3_family(kind, kw):
    c = appendix_coefficients(rk3_family(kind, **kw))
    for key in ("A3_1", "A3_2", "B3_2"):
        assert abs(c[key]) < 1e-15


def test_appendix_rejects_two_stages():
    with pytest.raises(ValueError):
        appendix_coefficients(catalog(MethodId.RK2))


def test_all_methods_pass_order_conditions(method_id):
    rep = check_order_conditions(method_id)
    assert rep.passed, rep.failures


def test_rk4_ii_reports_all_classical_sums():
    rep = check_order_conditions(MethodId.RK4_II)
    assert rep.passed
    assert sum(k.startswith("order4:") for k in rep.residuals) == 7


def test_rbf_rk2_condition_present():
    rep = check_order_conditions(MethodId.RBF_RK2)
    assert rep.passed and "rbf2:b2c2^2=1/3" in rep.residuals


def test_corrupted_tableau_fails_consistency():
    good = catalog(MethodId.RK2)
    bad = AugmentedTableau("bad", good.a, (0.5, 0.4), good.c, good.shape_ratio)
    rep = check_order_conditions(bad)
    assert not rep.passed
    key = next(k for k in rep.failures if k.startswith("consistency"))
    assert rep.residuals[key] == pytest.approx(-0.1, abs=1e-15)


@pytest.mark.parametrize("mid, slope", [(MethodId.RBF_RK2, 4), (MethodId.RK2, 3)])
def test_probe_slope_double_precision(mid, slope):
    res = local_order_probe(mid, EX1, 0.0, HS)
    assert res.slope == pytest.approx(slope, abs=0.15)


def test_probe_zero_field_is_degenerate():
    res = local_order_probe(MethodId.RK4_I, linear(0.0), 0.0, HS)
    assert res.degenerate and res.slope is None and res.errors == [0.0] * 4


def test_probe_drops_round_off_points():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        res = local_order_probe(MethodId.RBF_RK4_I_plus, EX1, 0.0, [1e-2, 1e-3, 1e-4])
    assert res.dropped >= 1
    assert any(issubclass(w.category, RuntimeWarning) for w in caught)


def test_probe_requires_exact_solution():
    prob = linear(1.0)
    prob = type(prob)(prob.name, prob.rhs, prob.partials, 0.0, 1.0, 1.0, None)
    with pytest.raises(ValueError):
        local_order_probe(MethodId.RK2, prob, 0.0, HS)
