"""Single steps and fixed-step trajectories for cataloged methods."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from . import _scalar
from .methods import AugmentedTableau, MethodId, catalog
from .problem import ProblemSpec
from .shape import ShapeParams, compute


class NonFiniteStateError(ArithmeticError):
    """A step produced inf/nan; carries the step index and offending values."""

    def __init__(self, index, t, v, partial=None):
        self.index, self.t, self.v = index, t, v
        self.partial = partial
        super().__init__(f"non-finite state at step {index}: t={t!r}, v={v!r}")


@dataclass(frozen=True)
class StepRecord:
    t_n: object
    v_n: object
    h: object
    shape: ShapeParams
    k: tuple
    v_next: object


def step(tab: AugmentedTableau, prob: ProblemSpec, t_n, v_n, h, *,
         shape: ShapeParams | None = None, complex_mode: bool = False) -> StepRecord:
    """Advance one step of size ``h`` from (t_n, v_n).

    Stage i evaluates f at ``v_n * exp(-eps2_i (c_i h)^2) + h * sum_j a_ij k_j``.
    ``shape`` overrides the computed shape parameters (used to check that a
    zero shape reproduces the standard method bit for bit).
    """
    if shape is None:
        if tab.shape_rule is None:
            shape = ShapeParams.zeros(tab.s, like=v_n)
        else:
            tower = prob.tower(t_n, v_n, tab.derivative_order_needed)
            shape = compute(tab, tower, v_n, complex_mode)
    f = prob.rhs
    a, c, eps2 = tab.a, tab.c, shape.eps2
    k = [f(t_n, v_n)]
    for i in range(1, tab.s):
        acc = a[i][0] * k[0]
        for j in range(1, i):
            acc = acc + a[i][j] * k[j]
        ch = c[i] * h
        k.append(f(t_n + ch, v_n * _scalar.exp(-eps2[i] * (ch * ch)) + h * acc))
    total = tab.b[0] * k[0]
    for i in range(1, tab.s):
        total = total + tab.b[i] * k[i]
    return StepRecord(t_n, v_n, h, shape, tuple(k), v_n + h * total)


@dataclass
class Trajectory:
    method: MethodId | str
    times: list
    states: list
    shapes: list = field(default_factory=list)
    max_abs_eps2: float = 0.0
    fallback_count: int = 0

    def to_csv(self) -> str:
        """CSV with columns t, v, eps2_2..eps2_s, fallback (one row per step start)."""
        s = len(self.shapes[0].eps2) if self.shapes else 0
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "v"] + [f"eps2_{i}" for i in range(2, s + 1)] + ["fallback"])
        for n, (t, v) in enumerate(zip(self.times, self.states)):
            if n < len(self.shapes):
                sh = self.shapes[n]
                extra = [_fmt(e) for e in sh.eps2[1:]] + [sh.reason.value]
            else:
                extra = [""] * (s - 1) + [""]
            w.writerow([_fmt(t), _fmt(v)] + extra)
        return buf.getvalue()


def _fmt(x) -> str:
    if isinstance(x, complex):
        return repr(x)
    return repr(float(x)) if isinstance(x, float) else str(x)


def integrate(method: MethodId | str | AugmentedTableau, prob: ProblemSpec, N: int,
              T=None, *, complex_mode: bool = False, ctx=None) -> Trajectory:
    """N uniform steps from prob.t0 to T (default: the problem's final time).

    Raises NonFiniteStateError if the state leaves the finite numbers; the
    partial trajectory is attached to the exception.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if isinstance(method, AugmentedTableau):
        tab, mid = method, method.name
    else:
        mid = MethodId.parse(method) if isinstance(method, str) else method
        tab = catalog(mid, ctx)
    t0 = prob.t0 if ctx is None else ctx.mpf(prob.t0)
    u0 = prob.u0 if ctx is None else ctx.mpf(prob.u0)
    T = prob.default_T if T is None else T
    if ctx is not None:
        T = ctx.mpf(T)
    if T == t0:
        raise ValueError("T must differ from t0")
    h = (T - t0) / N
    times, states, shapes = [t0], [u0], []
    max_eps, fallbacks = 0.0, 0
    v = u0
    for n in range(N):
        t = t0 + n * h
        try:
            rec = step(tab, prob, t, v, h, complex_mode=complex_mode)
        except (OverflowError, ZeroDivisionError) as exc:
            traj = Trajectory(mid, times, states, shapes, max_eps, fallbacks)
            raise NonFiniteStateError(n, t, v, traj) from exc
        v = rec.v_next
        shapes.append(rec.shape)
        if rec.shape.fallback:
            fallbacks += 1
        for e in rec.shape.eps2:
            max_eps = max(max_eps, float(abs(e)))
        times.append(t0 + (n + 1) * h)
        states.append(v)
        if not _scalar.is_finite(v):
            traj = Trajectory(mid, times, states, shapes, max_eps, fallbacks)
            raise NonFiniteStateError(n, t, v, traj)
    return Trajectory(mid, times, states, shapes, max_eps, fallbacks)
