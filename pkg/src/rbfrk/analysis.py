"""Convergence studies, order-condition residuals and local-order probes.

These are the empirical checks behind the order claims of the RBF methods:
global error and observed order under step doubling, residuals of the
classical order conditions and of the extra conditions each RBF case is built
on, and the slope of the one-step error against h.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
import warnings
from dataclasses import asdict, dataclass, field

from .integrator import NonFiniteStateError, integrate, step
from .methods import AugmentedTableau, MethodId, ShapeRule, catalog
from .problem import ProblemSpec

ORDER_TOL = 1e-13


# ---------------------------------------------------------------------------
# convergence studies


@dataclass
class ConvergenceRow:
    N: int
    error: float
    order: float | None = None
    max_abs_eps2: float = 0.0
    fallback_count: int = 0
    blew_up: bool = False


@dataclass
class ConvergenceReport:
    method: str
    problem: str
    T: float
    rows: list = field(default_factory=list)

    @property
    def errors(self) -> list:
        return [r.error for r in self.rows]

    @property
    def orders(self) -> list:
        return [r.order for r in self.rows]

    def to_csv(self) -> str:
        """One row per N; errors both rounded to 3 digits and at full precision."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "error", "error_full", "order", "max_abs_eps2", "fallback_count", "blew_up"])
        for r in self.rows:
            w.writerow([r.N, f"{r.error:.2e}", repr(r.error),
                        "" if r.order is None else f"{r.order:.4f}",
                        repr(r.max_abs_eps2), r.fallback_count, int(r.blew_up)])
        return buf.getvalue()

    def as_dict(self) -> dict:
        return {"method": self.method, "problem": self.problem, "T": self.T,
                "rows": [_json_row(asdict(r)) for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def _json_row(d: dict) -> dict:
    # JSON has no inf; keep the value readable and round-trippable
    return {k: (repr(v) if isinstance(v, float) and not math.isfinite(v) else v)
            for k, v in d.items()}


def observed_orders(Ns, errors) -> list:
    """log2(e_{k-1}/e_k) scaled by the step ratio; None where undefined."""
    out = [None]
    for k in range(1, len(Ns)):
        e0, e1 = errors[k - 1], errors[k]
        if not (math.isfinite(e0) and math.isfinite(e1)) or e0 <= 0 or e1 <= 0:
            out.append(None)
            continue
        out.append(math.log(e0 / e1) / math.log(Ns[k] / Ns[k - 1]))
    return out


def run_one(method, prob: ProblemSpec, N: int, T=None, complex_mode: bool = False) -> ConvergenceRow:
    """Global error of a single run; blow-up is recorded as an infinite error."""
    if prob.exact is None:
        raise ValueError(f"problem {prob.name} has no exact solution")
    T = prob.default_T if T is None else T
    try:
        traj = integrate(method, prob, N, T, complex_mode=complex_mode)
    except NonFiniteStateError as exc:
        part = exc.partial
        return ConvergenceRow(N, math.inf, None, part.max_abs_eps2, part.fallback_count, True)
    err = abs(traj.states[-1] - prob.exact(T))
    return ConvergenceRow(N, float(err), None, traj.max_abs_eps2, traj.fallback_count)


def convergence_study(method, prob: ProblemSpec, Ns, T=None, *, complex_mode: bool = False,
                      map_fn=map) -> ConvergenceReport:
    """Global errors at ``T`` for each N in ``Ns`` and the observed orders.

    ``map_fn`` lets callers fan the independent runs out over workers; results
    are collected in the order of ``Ns``.
    """
    Ns = list(Ns)
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("Ns must be strictly increasing")
    if prob.exact is None:
        raise ValueError(f"problem {prob.name} has no exact solution")
    T = prob.default_T if T is None else T
    name = method.value if isinstance(method, MethodId) else str(getattr(method, "name", method))
    rows = list(map_fn(lambda n: run_one(method, prob, n, T, complex_mode), Ns))
    for r, o in zip(rows, observed_orders(Ns, [r.error for r in rows])):
        r.order = o
    return ConvergenceReport(name, prob.name, float(T), rows)


# ---------------------------------------------------------------------------
# appendix coefficients and order conditions


def appendix_coefficients(tab: AugmentedTableau) -> dict:
    """Truncation-error coefficients A, B, D, E, F, G, H for 3- and 4-stage tableaus.

    Keys read ``A3_1`` for the coefficient A with superscript 3 and subscript 1.
    """
    a, b, c = tab.a, tab.b, tab.c
    if tab.s == 3:
        b2, b3 = b[1], b[2]
        c2, c3 = c[1], c[2]
        a32 = a[2][1]
        return {
            "A3_1": 0.5 - b2 * c2 - b3 * c3,
            "A3_2": 1 / 6 - b2 * c2**2 / 2 - b3 * c3**2 / 2,
            "B3_2": 1 / 6 - a32 * b3 * c2,
            "A3_3": 1 / 24 - b2 * c2**3 / 6 - b3 * c3**3 / 6,
            "B3_3": 1 / 8 - a32 * b3 * c2 * c3,
            "D3_3": 1 / 24 - a32 * b3 * c2**2 / 2,
        }
    if tab.s == 4:
        b2, b3, b4 = b[1], b[2], b[3]
        c2, c3, c4 = c[1], c[2], c[3]
        a32, a42, a43 = a[2][1], a[3][1], a[3][2]
        return {
            "A4_1": 0.5 - b2 * c2 - b3 * c3 - b4 * c4,
            "A4_2": 1 / 6 - (b2 * c2**2 + b3 * c3**2 + b4 * c4**2) / 2,
            "B4_2": 1 / 6 - a32 * b3 * c2 - a42 * b4 * c2 - a43 * b4 * c3,
            "A4_3": 1 / 24 - (b2 * c2**3 + b3 * c3**3 + b4 * c4**3) / 6,
            "B4_3": 1 / 8 - a32 * b3 * c2 * c3 - a42 * b4 * c2 * c4 - a43 * b4 * c3 * c4,
            "D4_3": 1 / 24 - (a32 * b3 * c2**2 + a42 * b4 * c2**2 + a43 * b4 * c3**2) / 2,
            "E4_3": 1 / 24 - a32 * a43 * b4 * c2,
            "A4_4": 1 / 120 - (b2 * c2**4 + b3 * c3**4 + b4 * c4**4) / 24,
            "B4_4": 1 / 20 - (a32 * b3 * c2 * c3**2 + a42 * b4 * c2 * c4**2
                              + a43 * b4 * c3 * c4**2) / 2,
            "D4_4": 1 / 30 - (a32 * b3 * c2**2 * c3 + a42 * b4 * c2**2 * c4
                              + a43 * b4 * c3**2 * c4) / 2,
            "E4_4": 1 / 120 - (a32 * b3 * c2**3 + a42 * b4 * c2**3 + a43 * b4 * c3**3) / 6,
            "F4_4": 7 / 120 - a32 * a43 * b4 * c2 * c3 - a32 * a43 * b4 * c2 * c4,
            "G4_4": 1 / 120 - a32 * a43 * b4 * c2**2 / 2,
            "H4_4": 1 / 40 - (a32**2 * b3 * c2**2 + a42**2 * b4 * c2**2
                              + a43**2 * b4 * c3**2) / 2 - a42 * a43 * b4 * c2 * c3,
        }
    raise ValueError(f"appendix coefficients exist for 3 and 4 stages, not s={tab.s}")


def _classical_conditions(tab: AugmentedTableau) -> dict:
    a, b, c, s = tab.a, tab.b, tab.c, tab.s
    out = {}
    if s == 2:
        out["order2:b2c2=1/2"] = b[1] * c[1] - 0.5
    elif s == 3:
        out["order3:bc=1/2"] = b[1] * c[1] + b[2] * c[2] - 0.5
        out["order3:bc2=1/3"] = b[1] * c[1]**2 + b[2] * c[2]**2 - 1 / 3
        out["order3:a32b3c2=1/6"] = a[2][1] * b[2] * c[1] - 1 / 6
    elif s == 4:
        b2, b3, b4 = b[1], b[2], b[3]
        c2, c3, c4 = c[1], c[2], c[3]
        a32, a42, a43 = a[2][1], a[3][1], a[3][2]
        out["order4:bc=1/2"] = b2 * c2 + b3 * c3 + b4 * c4 - 0.5
        out["order4:bc2=1/3"] = b2 * c2**2 + b3 * c3**2 + b4 * c4**2 - 1 / 3
        out["order4:bc3=1/4"] = b2 * c2**3 + b3 * c3**3 + b4 * c4**3 - 0.25
        out["order4:bac=1/6"] = a32 * b3 * c2 + a42 * b4 * c2 + a43 * b4 * c3 - 1 / 6
        out["order4:bcac=1/8"] = (a32 * b3 * c2 * c3 + a42 * b4 * c2 * c4
                                  + a43 * b4 * c3 * c4 - 0.125)
        out["order4:bac2=1/12"] = a32 * b3 * c2**2 + a42 * b4 * c2**2 + a43 * b4 * c3**2 - 1 / 12
        out["order4:baac=1/24"] = a32 * a43 * b4 * c2 - 1 / 24
    return out


# Appendix combinations each three-stage RBF case is designed to annihilate
_RK3_ZEROS = {
    ShapeRule.RK3_I: (("A3_3", 1, None, 0), ("D3_3", 1, None, 0)),
    ShapeRule.RK3_IIA: (("A3_3", 1, None, 0), ("B3_3+2D3_3", 1, "D3_3", 2)),
    ShapeRule.RK3_IIB: (("A3_3", 1, None, 0), ("B3_3+2D3_3", 1, "D3_3", 2)),
    ShapeRule.RK3_IIIA: (("A3_3", 1, None, 0), ("B3_3+D3_3", 1, "D3_3", 1)),
    ShapeRule.RK3_IIIB: (("A3_3", 1, None, 0), ("B3_3+D3_3", 1, "D3_3", 1)),
    ShapeRule.RK3_IV: (("B3_3", 1, None, 0), ("D3_3", 1, None, 0)),
}


def _rbf_conditions(tab: AugmentedTableau) -> dict:
    rule = tab.shape_rule
    a, b, c, r = tab.a, tab.b, tab.c, tab.shape_ratio
    out = {}
    if rule is ShapeRule.RK2:
        out["rbf2:b2c2^2=1/3"] = b[1] * c[1]**2 - 1 / 3
        return out
    coeffs = appendix_coefficients(tab)
    if tab.s == 3:
        for label, w1, second, w2 in _RK3_ZEROS[rule]:
            first = label.split("+")[0]
            value = w1 * coeffs[first] + (w2 * coeffs[second] if second else 0)
            out[f"appendix:{label}=0"] = value
        out["ratio:b2c2^2r2+b3c3^2r3=0"] = b[1] * c[1]**2 * r[1] + b[2] * c[2]**2 * r[2]
        return out
    # four-stage cases
    out["rk4:c4=1"] = c[3] - 1
    if rule.rk4_case == "I":
        out["appendix:B4_4=0"] = coeffs["B4_4"]
        out["appendix:D4_4=0"] = coeffs["D4_4"]
    else:
        out["appendix:B4_4=0"] = coeffs["B4_4"]
        out["appendix:H4_4=0"] = coeffs["H4_4"]
    a32, a42, a43 = a[2][1], a[3][1], a[3][2]
    out["ratio:sum b c^2 r=0"] = sum(b[i] * c[i]**2 * r[i] for i in (1, 2, 3))
    out["ratio:sum b c^3 r=0"] = sum(b[i] * c[i]**3 * r[i] for i in (1, 2, 3))
    out["ratio:sum a b c^2 r=0"] = (a32 * b[2] * c[1]**2 * r[1] + a42 * b[3] * c[1]**2 * r[1]
                                    + a43 * b[3] * c[2]**2 * r[2])
    return out


@dataclass
class OrderConditionReport:
    method: str
    residuals: dict
    tol: float = ORDER_TOL

    @property
    def passed(self) -> bool:
        return all(abs(v) <= self.tol for v in self.residuals.values())

    @property
    def failures(self) -> dict:
        return {k: v for k, v in self.residuals.items() if not abs(v) <= self.tol}

    def as_dict(self) -> dict:
        return {"method": self.method, "pass": self.passed, "tol": self.tol,
                "residuals": {k: float(v) for k, v in self.residuals.items()}}


def check_order_conditions(method, tol: float = ORDER_TOL) -> OrderConditionReport:
    """Residual suite for a cataloged id or an explicit tableau.

    Checks consistency, row sums, the classical order-s conditions and, for
    RBF tableaus, the case-specific extra conditions plus the linear relations
    the shape ratios must satisfy.
    """
    tab = method if isinstance(method, AugmentedTableau) else catalog(method)
    res = {"consistency:sum b=1": sum(tab.b) - 1}
    for i in range(tab.s):
        res[f"row_sum:{i + 1}"] = sum(tab.a[i]) - tab.c[i]
    for i in range(tab.s):
        for j in range(i, tab.s):
            if tab.a[i][j] != 0:
                res[f"explicit:a{i + 1}{j + 1}=0"] = tab.a[i][j]
    res.update(_classical_conditions(tab))
    if tab.shape_rule is not None:
        res.update(_rbf_conditions(tab))
    return OrderConditionReport(tab.name, {k: float(v) for k, v in res.items()}, tol)


# ---------------------------------------------------------------------------
# local order probe


@dataclass
class ProbeResult:
    slope: float | None
    hs: list
    errors: list
    degenerate: bool = False
    dropped: int = 0


def local_order_probe(method, prob: ProblemSpec, t, hs, *, dps: int | None = None,
                      complex_mode: bool = False) -> ProbeResult:
    """Least-squares slope of log|one-step error| against log h.

    The step starts on the exact solution at ``t``.  With ``dps`` set, tableau,
    state and derivatives are evaluated in mpmath at that many digits; the
    fifth- and sixth-order methods otherwise hit round-off at modest h.  Points whose
    error sits within 100 ulps of the solution are dropped with a warning.
    """
    if prob.exact is None:
        raise ValueError(f"problem {prob.name} has no exact solution")
    if dps is None:
        return _probe(method, prob, t, hs, None, complex_mode)
    import mpmath

    with mpmath.workdps(dps):
        return _probe(method, prob, t, hs, mpmath.mp, complex_mode)


def _probe(method, prob, t, hs, ctx, complex_mode) -> ProbeResult:
    if isinstance(method, AugmentedTableau):
        tab = method
    else:
        tab = catalog(method, ctx)
    conv = (lambda x: x) if ctx is None else ctx.mpf
    eps = 2.0**-52 if ctx is None else ctx.eps
    t = conv(t)
    u0 = prob.exact(t)
    hs_sorted = sorted((conv(h) for h in hs), reverse=True)
    errors = []
    for h in hs_sorted:
        rec = step(tab, prob, t, u0, h, complex_mode=complex_mode)
        errors.append(abs(rec.v_next - prob.exact(t + h)))
    if all(e == 0 for e in errors):
        return ProbeResult(None, [float(h) for h in hs_sorted], [0.0] * len(errors), True)
    floor = 100 * eps * max(abs(u0), 1)
    keep = len(errors)
    while keep > 0 and errors[keep - 1] <= floor:
        keep -= 1
    dropped = len(errors) - keep
    if dropped:
        warnings.warn(f"{dropped} probe step(s) below the round-off floor were dropped",
                      RuntimeWarning, stacklevel=3)
    if keep < 2:
        return ProbeResult(None, [float(h) for h in hs_sorted], [float(e) for e in errors],
                           True, dropped)
    xs = [float(ctx.log(h)) if ctx else math.log(h) for h in hs_sorted[:keep]]
    ys = [float(ctx.log(e)) if ctx else math.log(e) for e in errors[:keep]]
    slope = statistics.linear_regression(xs, ys).slope
    return ProbeResult(slope, [float(h) for h in hs_sorted], [float(e) for e in errors], False, dropped)
