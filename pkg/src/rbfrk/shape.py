"""Per-step shape parameters eps2_{n,i} for the RBF Runge-Kutta rules.

Each rule gives eps2 for stage 2 in closed form from the derivative tower at
(t_n, v_n); later stages follow by the fixed ratios stored on the tableau.
When a formula cannot be evaluated (vanishing denominator, complex root in
real mode, degenerate quadratic) the step falls back to eps2 = 0, i.e. to the
standard Runge-Kutta stage, and the reason is reported in-band.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _scalar
from .methods import AugmentedTableau, ShapeRule
from .problem import DerivativeTower, u_second

DENOMINATOR_GUARD = 1e-12
QUADRATIC_GUARD = 1e-14


class Fallback(enum.Enum):
    NONE = "none"
    ZERO_DENOMINATOR = "zero_denominator"
    COMPLEX_ROOT = "complex_root"
    QUADRATIC_DEGENERATE = "quadratic_degenerate"


@dataclass(frozen=True)
class ShapeParams:
    eps2: tuple
    reason: Fallback = Fallback.NONE

    @property
    def fallback(self) -> bool:
        return self.reason is not Fallback.NONE

    @classmethod
    def zeros(cls, s: int, reason: Fallback = Fallback.NONE, like=0.0) -> "ShapeParams":
        zero = like * 0
        return cls((zero,) * s, reason)


@dataclass(frozen=True)
class QuadraticCoeffs:
    """alpha eps^4 + beta eps^2 + gamma = 0 for the stage-2 parameter."""

    alpha: object
    beta: object
    gamma: object

    def residual(self, x):
        return self.alpha * x * x + self.beta * x + self.gamma


def _stage2_rational(rule: ShapeRule, t: DerivativeTower, u, upp):
    """Numerator and denominator of eps2_{n2} for the two- and three-stage rules."""
    if rule in (ShapeRule.RK2, ShapeRule.RK3_I):
        return -upp, 2 * u
    f, ft, fu = t.f, t.f_t, t.f_u
    if rule in (ShapeRule.RK3_IIA, ShapeRule.RK3_IIB):
        r33 = _scalar.sqrt(_scalar.lift(33, u))
        k = 3 - r33 if rule is ShapeRule.RK3_IIA else 3 + r33
        m = 15 - r33 if rule is ShapeRule.RK3_IIA else 15 + r33
        g = t.f_tu + t.f_uu * f
        num = -2 * k * g * ft + k * (t.f_tt - t.f_uu * f * f) * fu - 12 * fu * fu * upp
        den = 2 * (2 * k * g + m * fu * fu) * u
        return num, den
    if rule is ShapeRule.RK3_IIIA:
        g = t.f_tu + t.f_uu * f
        num = g * ft - (t.f_tt + t.f_tu * f) * fu - 3 * fu * fu * upp
        den = 2 * (2 * fu * fu - t.f_tu - t.f_uu * f) * u
        return num, den
    if rule is ShapeRule.RK3_IIIB:
        g = t.f_tu + t.f_uu * f
        num = -g * ft + (t.f_tt + t.f_tu * f) * fu - fu * fu * upp
        den = 2 * (2 * fu * fu + t.f_tu + t.f_uu * f) * u
        return num, den
    if rule is ShapeRule.RK3_IV:
        num = -(t.f_ttt + t.f_uuu * f**3 + 3 * (t.f_ttu + t.f_tuu * f) * f + 12 * fu * fu * upp)
        den = 6 * (4 * fu * fu - t.f_tu - t.f_uu * f) * u
        return num, den
    raise ValueError(f"{rule} is not a rational rule")


def rk4_coeffs(case: str, tower: DerivativeTower, u_n, upp) -> QuadraticCoeffs:
    """Quadratic coefficients for the four-stage rules (case 'I' or 'II')."""
    t = tower
    f, ft, fu, fuu = t.f, t.f_t, t.f_u, t.f_uu
    fu2, fu3 = fu * fu, fu * fu * fu
    if case == "I":
        alpha = 672 * (fu + fuu * u_n) * u_n
        beta = -(132 * t.f_ttu + 264 * t.f_tuu * f - 924 * t.f_tu * fu - 540 * ft * fuu
                 - 1464 * fu * fuu * f + 132 * t.f_uuu * f**2 + 660 * fu3) * u_n
        gamma = (11 * t.f_tttt + 44 * t.f_tttu * f + 66 * t.f_ttuu * f**2 + 44 * t.f_tuuu * f**3
                 - 44 * t.f_ttt * fu - 132 * t.f_ttu * fu * f + 330 * ft * t.f_tu * fu
                 - 132 * fu * t.f_tuu * f**2 + 330 * t.f_tu * fu2 * f + 135 * ft * ft * fuu
                 + 600 * ft * fu * fuu * f + 465 * fu2 * fuu * f**2 - 44 * fu * t.f_uuu * f**3
                 + 11 * t.f_uuuu * f**4 - 330 * fu3 * upp)
    elif case == "II":
        alpha = 12 * (fu + fuu * u_n) * u_n
        beta = -(12 * t.f_ttu + 24 * t.f_tuu * f - 84 * t.f_tu * fu - 84 * fu * fuu * f
                 + 12 * t.f_uuu * f**2 + 60 * fu3) * u_n
        gamma = (t.f_tttt + 4 * t.f_tttu * f + 6 * t.f_ttuu * f**2 + 18 * t.f_tt * t.f_tu
                 + 36 * t.f_tu**2 * f + 4 * t.f_tuuu * f**3 - 4 * t.f_ttt * fu
                 - 12 * t.f_ttu * fu * f + 48 * ft * t.f_tu * fu - 12 * fu * t.f_tuu * f**2
                 - 18 * t.f_tt * fu2 + 12 * t.f_tu * fu2 * f + 18 * t.f_tt * fuu * f
                 + 54 * t.f_tu * fuu * f**2 + 48 * ft * fu * fuu * f + 30 * fu2 * fuu * f**2
                 + 18 * fuu**2 * f**3 - 4 * fu * t.f_uuu * f**3 - 48 * fu3 * upp)
    else:
        raise ValueError(f"unknown four-stage case {case!r}")
    return QuadraticCoeffs(alpha, beta, gamma)


def solve_quadratic(q: QuadraticCoeffs, sign: int, complex_mode: bool = False, reference=None):
    """Pick the (+) or (-) root of the shape quadratic; returns (root, Fallback).

    With real coefficients, (+) is the larger root, -beta/(2 alpha) +
    sqrt(disc)/(2|alpha|).  In complex arithmetic "larger" has no meaning, so
    the square-root branch w is taken with Re(w / (alpha * reference)) >= 0,
    where ``reference`` is u''/u (the natural scale of eps^2); on the linear
    test equation this continues the real-axis labelling analytically.
    """
    a, b, c = q.alpha, q.beta, q.gamma
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0:
        return None, Fallback.QUADRATIC_DEGENERATE
    if abs(a) < QUADRATIC_GUARD * scale:
        if abs(b) < QUADRATIC_GUARD * scale:
            return None, Fallback.QUADRATIC_DEGENERATE
        return -c / b, Fallback.NONE
    disc = b * b - 4 * a * c
    real = not any(_scalar.is_complex(x) for x in (a, disc))
    if real and disc >= 0:
        w = _scalar.sqrt(disc)
        if a < 0:
            w = -w
    elif not complex_mode:
        return None, Fallback.COMPLEX_ROOT
    else:
        w = _scalar.sqrt(disc)
        ref = a * (reference if reference is not None and reference != 0 else 1)
        if (w / ref).real < 0:
            w = -w
    return (-b + sign * w) / (2 * a), Fallback.NONE


def stage2(rule: ShapeRule, tower: DerivativeTower, u_n, complex_mode: bool = False):
    """eps2_{n2} for ``rule`` plus the fallback reason (value None on fallback)."""
    upp = u_second(tower)
    case = rule.rk4_case
    if case is not None:
        ref = upp / u_n if u_n != 0 else None
        return solve_quadratic(rk4_coeffs(case, tower, u_n, upp), rule.sign, complex_mode, ref)
    num, den = _stage2_rational(rule, tower, u_n, upp)
    if abs(den) < DENOMINATOR_GUARD * (1 + abs(num)):
        return None, Fallback.ZERO_DENOMINATOR
    return num / den, Fallback.NONE


def compute(tab: AugmentedTableau, tower: DerivativeTower, u_n,
            complex_mode: bool = False) -> ShapeParams:
    """Shape parameters for every stage of ``tab`` at the current step."""
    if tab.shape_rule is None:
        return ShapeParams.zeros(tab.s, like=u_n)
    e2, reason = stage2(tab.shape_rule, tower, u_n, complex_mode)
    if reason is not Fallback.NONE:
        return ShapeParams.zeros(tab.s, reason, like=u_n)
    return ShapeParams(tuple(r * e2 for r in tab.shape_ratio), Fallback.NONE)
