import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from rbfrk.analysis import local_order_probe
from rbfrk.integrator import step
from rbfrk.methods import MethodId, catalog
from rbfrk.problem import EX1, EX2, EX3, linear, u_second
from rbfrk.shape import ShapeParams, compute, rk4_coeffs
from rbfrk.stability import stability_closed, stability_generic

from conftest import ALL_IDS, RBF_IDS

RK3_RBF = [m for m in RBF_IDS if catalog(m).s == 3]
RK4_RBF = [m for m in RBF_IDS if catalog(m).s == 4]
methods = st.sampled_from(ALL_IDS)
rbf_methods = st.sampled_from(RBF_IDS)


@st.composite
def ex_points(draw):
    """(problem, t, u) near a solution curve of one of the three examples."""
    prob = draw(st.sampled_from([EX1, EX2, EX3]))
    lo, hi = {"ex1": (0.0, 1.0), "ex2": (-10.0, 0.0), "ex3": (1.0, 3.0)}[prob.name]
    t = draw(st.floats(lo, hi))
    u = prob.exact(t) * draw(st.floats(0.8, 1.2))
    return prob, t, u


@st.composite
def disk_points(draw, r_min=1e-3, r_max=2.0):
    r = draw(st.floats(r_min, r_max))
    theta = draw(st.floats(-math.pi, math.pi))
    return cmath.rect(r, theta)


@given(rbf_methods, ex_points(), st.floats(1e-4, 0.1))
def test_zero_shape_reduces_to_standard_bit_exact(mid, pt, h):
    prob, t, u = pt
    rbf, std = catalog(mid), catalog(mid.standard)
    a = step(rbf, prob, t, u, h, shape=ShapeParams.zeros(rbf.s))
    b = step(std, prob, t, u, h)
    assert a.v_next == b.v_next
    assert a.k == b.k


@given(methods, disk_points(), st.floats(0.5, 2.0), st.complex_numbers(min_magnitude=0.1,
                                                                      max_magnitude=10))
def test_linear_step_factorizes(mid, z, h, v0):
    rec = step(catalog(mid), linear(z / h), 0.0, v0, h, complex_mode=True)
    assert not rec.shape.fallback
    expected = stability_closed(mid, z) * v0
    assert abs(rec.v_next - expected) <= 1e-12 * abs(expected)


@pytest.mark.parametrize("mid", ALL_IDS, ids=lambda m: m.value)
def test_generic_matches_closed_on_disk(mid):
    rng = np.random.default_rng(2024)
    r = 2.0 * np.sqrt(rng.uniform(0, 1, 200))
    zs = r * np.exp(1j * rng.uniform(-np.pi, np.pi, 200))
    for z in zs:
        g, c = stability_generic(mid, z), stability_closed(mid, complex(z))
        assert abs(g - c) <= 1e-12 * abs(c)


@given(methods, disk_points(r_min=0.0, r_max=3.0))
def test_conjugate_symmetry(mid, z):
    r, rc = stability_closed(mid, z), stability_closed(mid, z.conjugate())
    assert abs(rc - r.conjugate()) <= 1e-13 * max(1.0, abs(r))
    if z != 0:
        g, gc = stability_generic(mid, z), stability_generic(mid, z.conjugate())
        assert abs(gc - g.conjugate()) <= 1e-13 * max(1.0, abs(g))


@given(rbf_methods, ex_points())
def test_shape_ratio_proportionality(mid, pt):
    prob, t, u = pt
    tab = catalog(mid)
    sp = compute(tab, prob.tower(t, u, tab.derivative_order_needed), u)
    assume(not sp.fallback and sp.eps2[1] != 0)
    for i in range(2, tab.s):
        assert sp.eps2[i] / sp.eps2[1] == pytest.approx(tab.shape_ratio[i], rel=1e-12)


@given(st.sampled_from(RK3_RBF), ex_points())
def test_rk3_ratio_condition(mid, pt):
    prob, t, u = pt
    tab = catalog(mid)
    sp = compute(tab, prob.tower(t, u, tab.derivative_order_needed), u)
    assume(not sp.fallback)
    b, c, e = tab.b, tab.c, sp.eps2
    terms = [b[1] * c[1]**2 * e[1], b[2] * c[2]**2 * e[2]]
    assert abs(sum(terms)) <= 1e-12 * max(abs(x) for x in terms) + 1e-300


@given(st.sampled_from(RK4_RBF), ex_points())
def test_rk4_extra_restrictions(mid, pt):
    prob, t, u = pt
    tab = catalog(mid)
    sp = compute(tab, prob.tower(t, u, 4), u)
    assume(not sp.fallback)
    a, b, c, e = tab.a, tab.b, tab.c, sp.eps2
    sums = [
        [b[i] * c[i]**2 * e[i] for i in (1, 2, 3)],
        [b[i] * c[i]**3 * e[i] for i in (1, 2, 3)],
        [a[2][1] * b[2] * c[1]**2 * e[1], a[3][1] * b[3] * c[1]**2 * e[1],
         a[3][2] * b[3] * c[2]**2 * e[2]],
    ]
    for terms in sums:
        assert abs(sum(terms)) <= 1e-12 * max(abs(x) for x in terms) + 1e-300


@given(st.sampled_from(RK4_RBF), ex_points())
def test_rk4_root_property(mid, pt):
    prob, t, u = pt
    tab = catalog(mid)
    tower = prob.tower(t, u, 4)
    sp = compute(tab, tower, u)
    assume(not sp.fallback)
    q = rk4_coeffs(tab.shape_rule.rk4_case, tower, u, u_second(tower))
    x = sp.eps2[1]
    parts = [q.alpha * x * x, q.beta * x, q.gamma]
    assert abs(sum(parts)) <= 1e-10 * max(abs(p) for p in parts)


@given(st.sampled_from(RK4_RBF), disk_points(r_min=0.05))
def test_complex_mode_roots_solve_quadratic(mid, lam):
    prob = linear(lam)
    tower = prob.tower(0.0, 1.0 + 0j, 4)
    tab = catalog(mid)
    sp = compute(tab, tower, 1.0 + 0j, complex_mode=True)
    assert not sp.fallback
    q = rk4_coeffs(tab.shape_rule.rk4_case, tower, 1.0 + 0j, u_second(tower))
    x = sp.eps2[1]
    parts = [q.alpha * x * x, q.beta * x, q.gamma]
    assert abs(sum(parts)) <= 1e-10 * max(abs(p) for p in parts)


@pytest.mark.parametrize("mid", ALL_IDS, ids=lambda m: m.value)
def test_local_order_slope(mid):
    # high precision keeps the sixth-order one-step errors above round-off
    res = local_order_probe(mid, EX1, 0.0, [1e-2, 5e-3, 2.5e-3, 1.25e-3], dps=60)
    assert res.slope == pytest.approx(catalog(mid).order + 1, abs=0.15)
