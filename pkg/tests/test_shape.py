import cmath

import pytest

from rbfrk import shape
from rbfrk.methods import MethodId, ShapeRule, catalog
from rbfrk.problem import EX1, EX2, DerivativeTower, PARTIAL_NAMES
from rbfrk.shape import Fallback, QuadraticCoeffs, compute, rk4_coeffs, solve_quadratic, stage2


def _zero_tower():
    return DerivativeTower.from_partials({k: 0.0 for k in PARTIAL_NAMES}, 4)


def test_rk2_rule_on_ex1():
    e2, reason = stage2(ShapeRule.RK2, EX1.tower(0.0, 1.0, 1), 1.0)
    assert reason is Fallback.NONE
    assert e2 == -1.0


def test_rk3_case_i_zero_curvature():
    # f = 1 - u at u = 1 gives u'' = f_t + f_u f = 0
    tower = DerivativeTower(f=0.0, f_t=0.0, f_u=-1.0, order=1)
    sp = compute(catalog(MethodId.RBF_RK3_I), tower, 1.0)
    assert not sp.fallback
    assert sp.eps2[1] == 0 and sp.eps2[2] == 0


def test_quadratic_labels():
    q = QuadraticCoeffs(1.0, -3.0, 2.0)
    assert solve_quadratic(q, +1) == (2.0, Fallback.NONE)
    assert solve_quadratic(q, -1) == (1.0, Fallback.NONE)


def test_quadratic_labels_independent_of_sign_of_alpha():
    q = QuadraticCoeffs(-1.0, 3.0, -2.0)
    assert solve_quadratic(q, +1)[0] == 2.0
    assert solve_quadratic(q, -1)[0] == 1.0


def test_negative_discriminant_real_mode():
    q = QuadraticCoeffs(1.0, 0.0, 1.0)
    assert solve_quadratic(q, +1) == (None, Fallback.COMPLEX_ROOT)
    assert solve_quadratic(q, -1) == (None, Fallback.COMPLEX_ROOT)


def test_negative_discriminant_complex_mode_gives_both_roots():
    q = QuadraticCoeffs(1.0, 0.0, 1.0)
    plus, _ = solve_quadratic(q, +1, complex_mode=True)
    minus, _ = solve_quadratic(q, -1, complex_mode=True)
    assert {plus, minus} == {1j, -1j}
    q = QuadraticCoeffs(2 + 1j, -1 + 3j, 0.5 - 2j)
    roots = [solve_quadratic(q, s, complex_mode=True)[0] for s in (1, -1)]
    assert abs(roots[0] - roots[1]) > 1e-3
    for r in roots:
        assert abs(q.residual(r)) < 1e-13


def test_degenerate_and_linear_quadratics():
    assert solve_quadratic(QuadraticCoeffs(0.0, 0.0, 0.0), 1) == (None, Fallback.QUADRATIC_DEGENERATE)
    assert solve_quadratic(QuadraticCoeffs(0.0, 0.0, 1.0), 1) == (None, Fallback.QUADRATIC_DEGENERATE)
    assert solve_quadratic(QuadraticCoeffs(1e-20, 2.0, -1.0), 1) == (0.5, Fallback.NONE)


def test_complex_root_fallback_zeroes_every_stage(monkeypatch):
    monkeypatch.setattr(shape, "rk4_coeffs", lambda *a: QuadraticCoeffs(1.0, 0.0, 1.0))
    for mid in (MethodId.RBF_RK4_II_plus, MethodId.RBF_RK4_II_minus):
        sp = compute(catalog(mid), EX1.tower(0.0, 1.0, 4), 1.0)
        assert sp.reason is Fallback.COMPLEX_ROOT
        assert sp.eps2 == (0.0, 0.0, 0.0, 0.0)


@pytest.mark.parametrize("case", ["I", "II"])
def test_rk4_coeffs_vanish_for_zero_field(case):
    q = rk4_coeffs(case, _zero_tower(), 1.0, 0.0)
    assert (q.alpha, q.beta, q.gamma) == (0.0, 0.0, 0.0)


def test_rk4_unknown_case():
    with pytest.raises(ValueError):
        rk4_coeffs("III", _zero_tower(), 1.0, 0.0)


def test_zero_denominator_guard():
    # RK2 rule divides by 2 u_n
    tower = DerivativeTower(f=1.0, f_t=0.0, f_u=0.0, order=1)
    assert stage2(ShapeRule.RK2, tower, 0.0) == (None, Fallback.ZERO_DENOMINATOR)
    sp = compute(catalog(MethodId.RBF_RK2), tower, 0.0)
    assert sp.reason is Fallback.ZERO_DENOMINATOR and sp.eps2 == (0.0, 0.0)


def test_linear_problem_rk4_i_plus_is_larger_root():
    # on u' = lam u the case-I quadratic reduces to eps^2 = lam^2 (55 +- sqrt 9185) / 112
    lam = -0.7
    tower = DerivativeTower.from_partials(
        {k: (lam if k == (0, 1) else lam * 1.0 if k == (0, 0) else 0.0) for k in PARTIAL_NAMES}, 4)
    plus, _ = stage2(ShapeRule.RK4_I_PLUS, tower, 1.0)
    minus, _ = stage2(ShapeRule.RK4_I_MINUS, tower, 1.0)
    r = 9185 ** 0.5
    assert plus == pytest.approx(lam**2 * (55 + r) / 112, rel=1e-13)
    assert minus == pytest.approx(lam**2 * (55 - r) / 112, rel=1e-12)


def test_complex_mode_continues_real_labels():
    # complex lam close to the real axis keeps the real-axis labelling
    lam = -0.7 + 1e-6j
    tower = DerivativeTower.from_partials(
        {k: (lam if k in ((0, 1), (0, 0)) else 0.0) for k in PARTIAL_NAMES}, 4)
    plus, _ = stage2(ShapeRule.RK4_I_PLUS, tower, 1.0 + 0j, complex_mode=True)
    r = 9185 ** 0.5
    assert abs(plus - lam**2 * (55 + r) / 112) < 1e-10
    assert cmath.isfinite(plus)


def test_ex2_start_uses_tower():
    # stage-2 parameter at the ex2 start is finite for every rule
    tower = EX2.tower(EX2.t0, EX2.u0, 4)
    for rule in ShapeRule:
        e2, reason = stage2(rule, tower, EX2.u0)
        assert reason is Fallback.COMPLEX_ROOT or cmath.isfinite(e2)
