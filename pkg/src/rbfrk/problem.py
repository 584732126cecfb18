"""Scalar initial value problems u' = f(t, u) with exact derivative towers.

The shape-parameter formulas need mixed partials of f up to total order 4 at
the current point.  Built-in problems supply them in closed form; user
problems can fall back on :func:`finite_difference_tower`.

Everything here is plain arithmetic, so the same problem evaluates on floats,
complex numbers and mpmath numbers.
"""

from __future__ import annotations

import math
import dataclasses
from dataclasses import dataclass, field, fields
from typing import Callable

from . import _scalar

# (i, j) -> attribute name, for d^i/dt^i d^j/du^j f
PARTIAL_NAMES = {
    (i, j): "f" + ("_" + "t" * i + "u" * j if i + j else "")
    for n in range(5)
    for i in range(n, -1, -1)
    for j in [n - i]
}


class SingularInputError(ValueError):
    """Raised when f (or its tower) is evaluated where it is undefined."""


@dataclass(frozen=True)
class DerivativeTower:
    """Point values of f and its mixed partials; unset orders stay None."""

    f: object = None
    f_t: object = None
    f_u: object = None
    f_tt: object = None
    f_tu: object = None
    f_uu: object = None
    f_ttt: object = None
    f_ttu: object = None
    f_tuu: object = None
    f_uuu: object = None
    f_tttt: object = None
    f_tttu: object = None
    f_ttuu: object = None
    f_tuuu: object = None
    f_uuuu: object = None
    order: int = field(default=0, compare=False)

    @classmethod
    def from_partials(cls, partials: dict, order: int) -> "DerivativeTower":
        kw = {PARTIAL_NAMES[ij]: v for ij, v in partials.items() if sum(ij) <= order}
        return cls(order=order, **kw)

    def partial(self, i: int, j: int):
        return getattr(self, PARTIAL_NAMES[(i, j)])

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)
                if f.name != "order" and getattr(self, f.name) is not None}


def u_second(tower: DerivativeTower):
    """u'' = f_t + f_u f along the solution through the tower's point."""
    return tower.f_t + tower.f_u * tower.f


PartialsFn = Callable[[object, object, int], dict]


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    rhs: Callable
    partials: PartialsFn
    t0: float
    u0: float
    default_T: float
    exact: Callable | None = None

    def tower(self, t, u, max_order: int = 4) -> DerivativeTower:
        return DerivativeTower.from_partials(self.partials(t, u, max_order), max_order)


def _zeros(order, like):
    zero = like * 0
    return {ij: zero for ij in PARTIAL_NAMES if sum(ij) <= order}


# ---------------------------------------------------------------------------
# Example 1: u' = -u^2, u(0) = 1, u = 1/(t+1)


def _ex1_rhs(t, u):
    return -u * u


def _ex1_partials(t, u, order):
    p = _zeros(order, u)
    p[(0, 0)] = -u * u
    if order >= 1:
        p[(0, 1)] = -2 * u
    if order >= 2:
        p[(0, 2)] = -2 + 0 * u
    return p


def _ex1_exact(t):
    return 1 / (t + 1)


# ---------------------------------------------------------------------------
# Example 2: u' = -4 t^3 u^2, u(-10) = 1/10001, u = 1/(t^4+1)


def _ex2_rhs(t, u):
    return -4 * t**3 * u * u


def _ex2_partials(t, u, order):
    p = _zeros(order, t * u)
    p[(0, 0)] = -4 * t**3 * u**2
    if order >= 1:
        p[(1, 0)] = -12 * t**2 * u**2
        p[(0, 1)] = -8 * t**3 * u
    if order >= 2:
        p[(2, 0)] = -24 * t * u**2
        p[(1, 1)] = -24 * t**2 * u
        p[(0, 2)] = -8 * t**3
    if order >= 3:
        p[(3, 0)] = -24 * u**2
        p[(2, 1)] = -48 * t * u
        p[(1, 2)] = -24 * t**2
    if order >= 4:
        p[(3, 1)] = -48 * u
        p[(2, 2)] = -48 * t
    return p


def _ex2_exact(t):
    return 1 / (t**4 + 1)


# ---------------------------------------------------------------------------
# Example 3: u' = (2t^2 - u)/(t^2 u - t), u(1) = 2


def _ex3_rhs(t, u):
    den = t * t * u - t
    if den == 0:
        raise SingularInputError(f"t^2 u - t vanishes at t={t}, u={u}")
    return (2 * t * t - u) / den


def _ex3_partials(t, u, order):
    # numerator / denominator partials, (i, j) -> value; missing keys are zero
    num = {(0, 0): 2 * t * t - u, (1, 0): 4 * t, (0, 1): -1 + 0 * t, (2, 0): 4 + 0 * t}
    den = {(0, 0): t * t * u - t, (1, 0): 2 * t * u - 1, (0, 1): t * t,
           (2, 0): 2 * u, (1, 1): 2 * t, (2, 1): 2 + 0 * t}
    d0 = den[(0, 0)]
    if d0 == 0:
        raise SingularInputError(f"t^2 u - t vanishes at t={t}, u={u}")
    zero = 0 * d0
    # Leibniz rule on f * den = num, solved for the highest partial of f
    p = {}
    for n in range(order + 1):
        for i in range(n, -1, -1):
            j = n - i
            acc = num.get((i, j), zero)
            for k in range(i + 1):
                for l in range(j + 1):
                    if (k, l) == (i, j):
                        continue
                    dv = den.get((i - k, j - l))
                    if dv is not None:
                        acc = acc - math.comb(i, k) * math.comb(j, l) * p[(k, l)] * dv
            p[(i, j)] = acc / d0
    return p


def _ex3_exact(t):
    return 1 / t + _scalar.sqrt(1 / (t * t) + 4 * t - 4)


# ---------------------------------------------------------------------------


def linear(lam, t0=0.0, u0=1.0, T=1.0) -> ProblemSpec:
    """The test equation u' = lam u (lam may be complex)."""

    def rhs(t, u):
        return lam * u

    def partials(t, u, order):
        p = _zeros(order, u * lam)
        p[(0, 0)] = lam * u
        if order >= 1:
            p[(0, 1)] = lam + 0 * u
        return p

    def exact(t):
        return u0 * _scalar.exp(lam * (t - t0))

    return ProblemSpec(f"linear({lam})", rhs, partials, t0, u0, T, exact)


EX1 = ProblemSpec("ex1", _ex1_rhs, _ex1_partials, 0.0, 1.0, 1.0, _ex1_exact)
EX2 = ProblemSpec("ex2", _ex2_rhs, _ex2_partials, -10.0, 1 / 10001, 0.0, _ex2_exact)
EX3 = ProblemSpec("ex3", _ex3_rhs, _ex3_partials, 1.0, 2.0, 2.0, _ex3_exact)

_BUILTIN = {"ex1": EX1, "ex2": EX2, "ex3": EX3}


def builtin(name: str) -> ProblemSpec:
    """Look up ``ex1``, ``ex2``, ``ex3`` or ``linear(<lam>)``."""
    key = name.strip().lower()
    if key in _BUILTIN:
        return _BUILTIN[key]
    if key.startswith("linear(") and key.endswith(")"):
        try:
            lam = complex(key[7:-1].replace(" ", ""))
        except ValueError:
            raise ValueError(f"bad linear coefficient in {name!r}") from None
        return linear(lam.real if lam.imag == 0 else lam)
    raise ValueError(f"unknown problem {name!r}")


def zero_partials(prob: ProblemSpec, names) -> ProblemSpec:
    """Copy of ``prob`` whose tower reports the named partials (e.g. "f_tttu") as 0.

    A sensitivity tool: it shows how much a shape formula leans on individual
    partials.  The right-hand side and exact solution are unchanged.
    """
    by_name = {v: k for k, v in PARTIAL_NAMES.items()}
    unknown = [n for n in names if n not in by_name]
    if unknown:
        raise ValueError(f"unknown partials {unknown}")
    keys = {by_name[n] for n in names}
    inner = prob.partials

    def partials(t, u, order):
        p = inner(t, u, order)
        for k in keys:
            if k in p:
                p[k] = 0 * p[k]
        return p

    tag = ",".join(sorted(names))
    return dataclasses.replace(prob, name=f"{prob.name}[zero:{tag}]", partials=partials)


def finite_difference_tower(rhs, t, u, max_order: int = 4, scale: float = 1.0) -> DerivativeTower:
    """Tower from nested central differences of ``rhs``.

    A fallback for problems without closed-form partials.  The k-th order
    estimates lose roughly (k+2)/k of the available digits, so fourth-order
    partials carry only ~5 significant digits in double precision, which caps
    the accuracy an RBF-RK4 rule can reach.
    """
    p = {}
    for (i, j) in PARTIAL_NAMES:
        k = i + j
        if k > max_order:
            continue
        if k == 0:
            p[(0, 0)] = rhs(t, u)
            continue
        h = scale * 1e-16 ** (1.0 / (k + 2))
        total = 0.0
        for m in range(i + 1):
            for n in range(j + 1):
                w = (-1) ** (m + n) * math.comb(i, m) * math.comb(j, n)
                total += w * rhs(t + (i / 2 - m) * h, u + (j / 2 - n) * h)
        p[(i, j)] = total / h**k
    return DerivativeTower.from_partials(p, max_order)
