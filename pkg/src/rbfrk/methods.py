"""Catalog of standard and RBF Runge-Kutta methods.

Every RBF method shares its Butcher tableau with a standard counterpart; it
only adds a per-stage Gaussian damping factor ``exp(-eps2_i * (c_i h)^2)``
whose shape parameters are chosen each step (see :mod:`rbfrk.shape`).

Tableaus are built from exact rational/radical recipes.  ``catalog(id)``
evaluates them in double precision; ``catalog(id, ctx=mpmath.mp)`` evaluates
the same recipes in the working precision of an mpmath context, which is what
the high-precision local-order probes use.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class ShapeRule(enum.Enum):
    """Which closed form supplies the stage-2 shape parameter."""

    RK2 = "rk2"
    RK3_I = "rk3-i"
    RK3_IIA = "rk3-iia"
    RK3_IIB = "rk3-iib"
    RK3_IIIA = "rk3-iiia"
    RK3_IIIB = "rk3-iiib"
    RK3_IV = "rk3-iv"
    RK4_I_PLUS = "rk4-i+"
    RK4_I_MINUS = "rk4-i-"
    RK4_II_PLUS = "rk4-ii+"
    RK4_II_MINUS = "rk4-ii-"

    @property
    def derivative_order(self) -> int:
        return _RULE_ORDER[self]

    @property
    def rk4_case(self) -> str | None:
        """'I' or 'II' for the four-stage quadratic rules, else None."""
        if self in (ShapeRule.RK4_I_PLUS, ShapeRule.RK4_I_MINUS):
            return "I"
        if self in (ShapeRule.RK4_II_PLUS, ShapeRule.RK4_II_MINUS):
            return "II"
        return None

    @property
    def sign(self) -> int:
        return -1 if self in (ShapeRule.RK4_I_MINUS, ShapeRule.RK4_II_MINUS) else 1


_RULE_ORDER = {
    ShapeRule.RK2: 1,
    ShapeRule.RK3_I: 1,
    ShapeRule.RK3_IIA: 2,
    ShapeRule.RK3_IIB: 2,
    ShapeRule.RK3_IIIA: 2,
    ShapeRule.RK3_IIIB: 2,
    ShapeRule.RK3_IV: 3,
    ShapeRule.RK4_I_PLUS: 4,
    ShapeRule.RK4_I_MINUS: 4,
    ShapeRule.RK4_II_PLUS: 4,
    ShapeRule.RK4_II_MINUS: 4,
}


class MethodId(enum.Enum):
    RK2 = "rk2"
    RBF_RK2 = "rbf-rk2"
    RK3_I = "rk3-i"
    RK3_IIa = "rk3-iia"
    RK3_IIb = "rk3-iib"
    RK3_IIIa = "rk3-iiia"
    RK3_IIIb = "rk3-iiib"
    RK3_IV = "rk3-iv"
    RBF_RK3_I = "rbf-rk3-i"
    RBF_RK3_IIa = "rbf-rk3-iia"
    RBF_RK3_IIb = "rbf-rk3-iib"
    RBF_RK3_IIIa = "rbf-rk3-iiia"
    RBF_RK3_IIIb = "rbf-rk3-iiib"
    RBF_RK3_IV = "rbf-rk3-iv"
    RK4_I = "rk4-i"
    RK4_II = "rk4-ii"
    RBF_RK4_I_plus = "rbf-rk4-i+"
    RBF_RK4_I_minus = "rbf-rk4-i-"
    RBF_RK4_II_plus = "rbf-rk4-ii+"
    RBF_RK4_II_minus = "rbf-rk4-ii-"

    @property
    def is_rbf(self) -> bool:
        return self.name.startswith("RBF_")

    @property
    def standard(self) -> "MethodId":
        """The standard counterpart (same tableau, no shape parameters)."""
        if not self.is_rbf:
            return self
        base = self.name[4:]
        for suffix in ("_plus", "_minus"):
            base = base.removesuffix(suffix)
        return MethodId[base]

    @property
    def label(self) -> str:
        """Human-readable label, e.g. ``RBF-RK4 II (+)``."""
        return _LABELS[self]

    @classmethod
    def parse(cls, text: str) -> "MethodId":
        key = text.strip().lower().replace("_", "-").replace(" ", "")
        key = key.replace("(+)", "+").replace("(-)", "-")
        key = key.replace("-plus", "+").replace("-minus", "-")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown method id {text!r}")


def _label(m: MethodId) -> str:
    name, sign = m.name, ""
    for suffix, mark in (("_plus", " (+)"), ("_minus", " (-)")):
        if name.endswith(suffix):
            name, sign = name.removesuffix(suffix), mark
    parts = name.split("_")
    text = "RBF-" if parts[0] == "RBF" else ""
    parts = parts[1:] if text else parts
    text += parts[0]
    if len(parts) > 1:
        case = parts[1]
        roman = case.rstrip("ab")
        text += f" {roman}" + (f" ({case[len(roman):]})" if case != roman else "")
    return text + sign


_LABELS = {m: _label(m) for m in MethodId}


@dataclass(frozen=True)
class AugmentedTableau:
    """Butcher tableau plus the shape-parameter structure of an RBF method.

    ``shape_ratio[i]`` is eps2_i / eps2_2 (entry 0 is always 0, entry 1 is 1
    for RBF tableaus).  Standard tableaus carry ``shape_rule=None`` and an
    all-zero ratio vector.
    """

    name: str
    a: tuple[tuple, ...]
    b: tuple
    c: tuple
    shape_ratio: tuple
    shape_rule: ShapeRule | None = None

    @property
    def s(self) -> int:
        return len(self.b)

    @property
    def order(self) -> int:
        """Formal order: s for standard methods, s + 1 with shape parameters."""
        return self.s + (1 if self.shape_rule is not None else 0)

    @property
    def derivative_order_needed(self) -> int:
        return 0 if self.shape_rule is None else self.shape_rule.derivative_order

    def as_standard(self) -> "AugmentedTableau":
        zeros = tuple(0 * r for r in self.shape_ratio)
        return AugmentedTableau(self.name, self.a, self.b, self.c, zeros, None)


# ---------------------------------------------------------------------------
# construction helpers


class _Float:
    """Evaluates recipes in double precision."""

    @staticmethod
    def q(p, d=1):
        return p / d

    @staticmethod
    def sqrt(n):
        return math.sqrt(n)


class _Ctx:
    def __init__(self, ctx):
        self.ctx = ctx

    def q(self, p, d=1):
        return self.ctx.mpf(p) / d

    def sqrt(self, n):
        return self.ctx.sqrt(n)


def _make(name, rows, c, b, rule=None, ratio=None) -> AugmentedTableau:
    s = len(b)
    zero = b[0] * 0
    a = tuple(tuple(row) + (zero,) * (s - len(row)) for row in rows)
    if ratio is None:
        ratio = (zero,) * s
    else:
        ratio = (zero,) + tuple(ratio)
    return AugmentedTableau(name, a, tuple(b), tuple(c), tuple(ratio), rule)


def _ralston(n):
    return [[], [n.q(2, 3)]], [n.q(0), n.q(2, 3)], [n.q(1, 4), n.q(3, 4)]


def _rk3_case(case, n):
    q = n.q
    if case == "I":
        rows = [[], [q(1, 2)], [q(-1), q(2)]]
        c = [q(0), q(1, 2), q(1)]
        b = [q(1, 6), q(2, 3), q(1, 6)]
        ratio = [q(1), q(-1)]
    elif case in ("IIa", "IIb"):
        r33 = n.sqrt(33)
        sg = -1 if case == "IIa" else 1
        # IIa takes the "-sqrt(33)" root for c2, IIb the "+" one
        rows = [[],
                [(15 + sg * r33) / 24],
                [(-147 + sg * 29 * r33) / 768, (627 - sg * 61 * r33) / 768]]
        c = [q(0), (15 + sg * r33) / 24, (15 - sg * r33) / 24]
        b = [q(1, 8), (77 - sg * 3 * r33) / 176, (77 + sg * 3 * r33) / 176]
        ratio = [q(1), -(7 + sg * r33) / 4]
    elif case == "IIIa":
        rows = [[], [q(1, 3)], [q(-5, 12), q(5, 4)]]
        c = [q(0), q(1, 3), q(5, 6)]
        b = [q(1, 10), q(1, 2), q(2, 5)]
        ratio = [q(1), q(-1, 5)]
    elif case == "IIIb":
        rows = [[], [q(1)], [q(1, 4), q(1, 4)]]
        c = [q(0), q(1), q(1, 2)]
        b = [q(1, 6), q(1, 6), q(2, 3)]
        ratio = [q(1), q(-1)]
    elif case == "IV":
        rows = [[], [q(1, 2)], [q(0), q(3, 4)]]
        c = [q(0), q(1, 2), q(3, 4)]
        b = [q(2, 9), q(1, 3), q(4, 9)]
        ratio = [q(1), q(-1, 3)]
    else:
        raise ValueError(case)
    return rows, c, b, ratio


def _rk4_case(case, n):
    q = n.q
    if case == "I":
        rows = [[], [q(2, 5)], [q(-3, 20), q(3, 4)], [q(19, 44), q(-15, 44), q(10, 11)]]
        c = [q(0), q(2, 5), q(3, 5), q(1)]
        b = [q(11, 72), q(25, 72), q(25, 72), q(11, 72)]
        ratio = [q(1), q(-2, 3), q(2, 11)]
    elif case == "II":
        rows = [[], [q(1, 4)], [q(-6, 25), q(21, 25)], [q(6, 5), q(-57, 35), q(10, 7)]]
        c = [q(0), q(1, 4), q(3, 5), q(1)]
        b = [q(1, 9), q(16, 63), q(125, 252), q(5, 36)]
        ratio = [q(1), q(-1, 6), q(1, 10)]
    else:
        raise ValueError(case)
    return rows, c, b, ratio


_RK3_CASE = {
    "I": ShapeRule.RK3_I,
    "IIa": ShapeRule.RK3_IIA,
    "IIb": ShapeRule.RK3_IIB,
    "IIIa": ShapeRule.RK3_IIIA,
    "IIIb": ShapeRule.RK3_IIIB,
    "IV": ShapeRule.RK3_IV,
}

_RK4_RULE = {
    MethodId.RBF_RK4_I_plus: ShapeRule.RK4_I_PLUS,
    MethodId.RBF_RK4_I_minus: ShapeRule.RK4_I_MINUS,
    MethodId.RBF_RK4_II_plus: ShapeRule.RK4_II_PLUS,
    MethodId.RBF_RK4_II_minus: ShapeRule.RK4_II_MINUS,
}


def _build(mid: MethodId, n) -> AugmentedTableau:
    std = mid.standard
    if std is MethodId.RK2:
        rows, c, b = _ralston(n)
        if not mid.is_rbf:
            return _make(mid.value, rows, c, b)
        return _make(mid.value, rows, c, b, ShapeRule.RK2, [n.q(1)])
    kind, _, case = std.name.partition("_")
    if kind == "RK3":
        rows, c, b, ratio = _rk3_case(case, n)
        rule = _RK3_CASE[case]
    else:
        rows, c, b, ratio = _rk4_case(case, n)
        rule = _RK4_RULE.get(mid)
    if not mid.is_rbf:
        return _make(mid.value, rows, c, b)
    return _make(mid.value, rows, c, b, rule, ratio)


@lru_cache(maxsize=None)
def _catalog_float(mid: MethodId) -> AugmentedTableau:
    return _build(mid, _Float)


def catalog(mid: MethodId | str, ctx=None) -> AugmentedTableau:
    """Return the augmented tableau for ``mid``.

    ``ctx`` may be an mpmath context (e.g. ``mpmath.mp``); the entries are then
    evaluated at that context's working precision instead of as doubles.
    """
    if isinstance(mid, str):
        mid = MethodId.parse(mid)
    if ctx is None:
        return _catalog_float(mid)
    return _build(mid, _Ctx(ctx))


# ---------------------------------------------------------------------------
# parameterized families


def rk2_family(c2) -> AugmentedTableau:
    """Two-stage second-order method with node ``c2`` (c2=2/3 is Ralston)."""
    if c2 == 0:
        raise ValueError("c2 must be nonzero")
    b2 = 1 / (2 * c2)
    return _make(f"rk2(c2={c2})", [[], [c2]], [0 * c2, c2], [1 - b2, b2])


def rk3_family(kind: str, *, c2=None, c3=None, b3=None) -> AugmentedTableau:
    """Three-stage third-order methods.

    kind ``"I"`` takes nodes ``c2, c3`` (c2 not in {0, 2/3}, c3 != 0, c2 != c3);
    kinds ``"II"`` (c2 = c3 = 2/3) and ``"III"`` (c2 = 2/3, c3 = 0) take the
    free weight ``b3 != 0``.  Passing :class:`fractions.Fraction` arguments
    keeps every entry exact.
    """
    kind = kind.upper()
    if kind == "I":
        if c2 is None or c3 is None:
            raise ValueError("family I needs c2 and c3")
        if c2 == 0 or c3 == 0 or c2 == c3 or 3 * c2 == 2:
            raise ValueError(f"family I requires c2 not in {{0, 2/3}}, c3 != 0, c2 != c3; got {c2=}, {c3=}")
        a32 = c3 * (c3 - c2) / (c2 * (2 - 3 * c2))
        a31 = c3 * (3 * c2 - 3 * c2**2 - c3) / (c2 * (2 - 3 * c2))
        b1 = (6 * c2 * c3 - 3 * c2 - 3 * c3 + 2) / (6 * c2 * c3)
        b2 = (3 * c3 - 2) / (6 * c2 * (c3 - c2))
        b3_ = (2 - 3 * c2) / (6 * c3 * (c3 - c2))
        return _make(f"rk3-I(c2={c2},c3={c3})", [[], [c2], [a31, a32]],
                     [0 * c2, c2, c3], [b1, b2, b3_])
    if kind in ("II", "III"):
        if b3 is None or b3 == 0:
            raise ValueError(f"family {kind} requires b3 != 0")
        # Fraction constants keep exact inputs exact and decay to float otherwise
        two3, quarter = Fraction(2, 3), 1 / (4 * b3)
        if isinstance(b3, float):
            two3 = float(two3)
        if kind == "II":
            rows = [[], [two3], [two3 - quarter, quarter]]
            c = [0 * two3, two3, two3]
            b = [Fraction(1, 4) + 0 * b3, Fraction(3, 4) - b3, b3]
        else:
            rows = [[], [two3], [-quarter, quarter]]
            c = [0 * two3, two3, 0 * two3]
            b = [Fraction(1, 4) - b3, Fraction(3, 4) + 0 * b3, b3]
        return _make(f"rk3-{kind}(b3={b3})", rows, c, b)
    raise ValueError(f"unknown rk3 family {kind!r}")
