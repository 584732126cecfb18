"""Stability functions, stability regions and negative-real stability intervals.

Two independent evaluations of R(z) are provided: closed forms written out as
sums ``coef * exp(expo * z^2) * z^k``, and a generic evaluator that takes one
complex step of the method on u' = lam u.  The generic path exercises the
same shape-parameter code that the integrator uses.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from . import _scalar
from .integrator import step
from .methods import MethodId, _Ctx, _Float, catalog
from .problem import linear

DEFAULT_WINDOW = (-5.0, 2.0, -4.0, 4.0)
DEFAULT_RES = (801, 801)
SCAN_STEP = 1e-3
BISECT_TOL = 1e-10
SCAN_CAP = -50.0


class StabilityPoleError(ArithmeticError):
    """The shape-parameter formula is singular at this z."""


# ---------------------------------------------------------------------------
# closed forms


def _terms(mid: MethodId, n) -> list:
    """(power, coef, expo) triples with R(z) = 1 + sum coef e^{expo z^2} z^power."""
    q = n.q
    one = q(1)
    zero = q(0)
    if not mid.is_rbf:
        s = {"rk2": 2}.get(mid.value, 3 if mid.value.startswith("rk3") else 4)
        out, fact = [], one
        for k in range(1, s + 1):
            fact = fact * k
            out.append((k, one / fact, zero))
        return out
    if mid is MethodId.RBF_RK2:
        return [(1, q(1, 4), zero), (1, q(3, 4), q(2, 9)), (2, q(1, 2), zero)]
    if mid is MethodId.RBF_RK3_I:
        return [(1, q(1, 6), zero), (1, q(2, 3), q(1, 8)), (1, q(1, 6), -q(1, 2)),
                (2, q(1, 6), zero), (2, q(1, 3), q(1, 8)), (3, q(1, 6), zero)]
    if mid in (MethodId.RBF_RK3_IIa, MethodId.RBF_RK3_IIb):
        r = n.sqrt(33)
        sg = -1 if mid is MethodId.RBF_RK3_IIa else 1
        e = (15 + sg * r) / 96
        return [(1, q(1, 8), zero), (1, (77 - sg * 3 * r) / 176, e),
                (1, (77 + sg * 3 * r) / 176, (-111 + sg * r) / 768),
                (2, (9 + sg * r) / 48, zero), (2, (15 - sg * r) / 48, e), (3, q(1, 6), zero)]
    if mid is MethodId.RBF_RK3_IIIa:
        return [(1, q(1, 10), zero), (1, q(1, 2), q(1, 12)), (1, q(2, 5), -q(5, 48)),
                (2, q(1, 2), q(1, 12)), (3, q(1, 6), zero)]
    if mid is MethodId.RBF_RK3_IIIb:
        return [(1, q(1, 6), zero), (1, q(1, 6), q(1, 4)), (1, q(2, 3), -q(1, 16)),
                (2, q(1, 3), zero), (2, q(1, 6), q(1, 4)), (3, q(1, 6), zero)]
    if mid is MethodId.RBF_RK3_IV:
        return [(1, q(2, 9), zero), (1, q(1, 3), q(1, 8)), (1, q(4, 9), -q(3, 32)),
                (2, q(1, 6), zero), (2, q(1, 3), q(1, 8)), (3, q(1, 6), zero)]
    sg = 1 if mid.value.endswith("+") else -1
    if mid in (MethodId.RBF_RK4_I_plus, MethodId.RBF_RK4_I_minus):
        r = n.sqrt(9185)
        e1, e2, e3 = -(55 + sg * r) / 700, (165 + sg * 3 * r) / 1400, -(55 + sg * r) / 616
        return [(1, q(11, 72), zero), (1, q(25, 72), e1), (1, q(25, 72), e2), (1, q(11, 72), e3),
                (2, q(11, 72), zero), (2, q(25, 96), e1), (2, -q(5, 96), e1), (2, q(5, 36), e2),
                (3, q(1, 16), zero), (3, q(5, 48), e1), (4, q(1, 24), zero)]
    r = n.sqrt(41)
    e1, e2, e3 = -(5 + sg * r) / 32, (15 + sg * 3 * r) / 100, -(5 + sg * r) / 20
    return [(1, q(1, 9), zero), (1, q(16, 63), e1), (1, q(125, 252), e2), (1, q(5, 36), e3),
            (2, q(1, 9), zero), (2, q(5, 12), e1), (2, -q(19, 84), e1), (2, q(25, 126), e2),
            (3, q(1, 6), e1), (4, q(1, 24), zero)]


_FLOAT_TERMS = {m: _terms(m, _Float) for m in MethodId}


def stability_closed(mid: MethodId | str, z, ctx=None):
    """Closed-form R(z).

    With an mpmath ``ctx`` (normally ``mpmath.mp`` inside ``workdps``) the
    constants and exponentials carry its working precision.
    """
    mid = MethodId.parse(mid) if isinstance(mid, str) else mid
    terms = _FLOAT_TERMS[mid] if ctx is None else _terms(mid, _Ctx(ctx))
    exp = _scalar.exp
    if ctx is not None:
        z, exp = ctx.mpmathify(z), ctx.exp
    z2 = z * z
    total = 1 + 0 * z
    for k, coef, expo in terms:
        fac = coef if expo == 0 else coef * exp(expo * z2)
        total = total + fac * z**k
    return total


def stability_closed_array(mid: MethodId | str, z: np.ndarray) -> np.ndarray:
    """Vectorized closed form over a numpy array of complex points."""
    mid = MethodId.parse(mid) if isinstance(mid, str) else mid
    z = np.asarray(z, dtype=complex)
    z2 = z * z
    total = np.ones_like(z)
    for k, coef, expo in _FLOAT_TERMS[mid]:
        fac = coef if expo == 0 else coef * np.exp(expo * z2)
        total = total + fac * z**k
    return total


# ---------------------------------------------------------------------------
# generic evaluation


def stability_generic(mid: MethodId | str, z):
    """R(z) as one complex step of the method on u' = lam u from v0 = 1.

    The step uses |lam| = 1 and h = |z|, so the shape formulas are evaluated
    at unit scale and never hit the small-denominator guard for z != 0.
    Raises :class:`StabilityPoleError` if a shape formula is singular.
    """
    mid = MethodId.parse(mid) if isinstance(mid, str) else mid
    z = complex(z)
    if z == 0:
        return 1 + 0j
    h = abs(z)
    lam = z / h
    rec = step(catalog(mid), linear(lam), 0.0, 1 + 0j, h, complex_mode=True)
    if rec.shape.fallback:
        raise StabilityPoleError(f"{mid.value}: shape formula singular at z={z} ({rec.shape.reason.value})")
    return rec.v_next


# ---------------------------------------------------------------------------
# regions


@dataclass
class RegionGrid:
    method: str
    re_range: tuple
    im_range: tuple
    nx: int
    ny: int
    mask: np.ndarray  # shape (nx, ny): mask[i, j] is z = re[i] + i im[j]

    @property
    def re(self) -> np.ndarray:
        return _axis(*self.re_range, self.nx)

    @property
    def im(self) -> np.ndarray:
        return _axis(*self.im_range, self.ny)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["re", "im", "inside"])
        re, im = self.re, self.im
        for i in range(self.nx):
            for j in range(self.ny):
                w.writerow([repr(float(re[i])), repr(float(im[j])), int(self.mask[i, j])])
        return buf.getvalue()

    def to_pgm(self) -> bytes:
        """Binary graymap, top row = largest Im z, 255 inside and 0 outside."""
        img = np.where(self.mask.T[::-1, :], 255, 0).astype(np.uint8)
        header = f"P5\n{self.nx} {self.ny}\n255\n".encode("ascii")
        return header + img.tobytes()

    def metadata(self) -> dict:
        return {"method": self.method, "re_range": list(self.re_range),
                "im_range": list(self.im_range), "nx": self.nx, "ny": self.ny,
                "pgm_orientation": "row 0 = max imag, column 0 = min real",
                "inside_fraction": float(self.mask.mean())}

    def metadata_json(self) -> str:
        return json.dumps(self.metadata(), indent=2, sort_keys=True)


def _axis(lo, hi, n) -> np.ndarray:
    x = lo + (hi - lo) * np.arange(n) / (n - 1)
    if lo == -hi:
        # mirror so the grid is exactly symmetric about 0
        half = n // 2
        x[:half] = -x[::-1][:half]
        if n % 2:
            x[half] = 0.0
    return x


def rasterize(mid: MethodId | str, window=DEFAULT_WINDOW, nx: int = DEFAULT_RES[0],
              ny: int = DEFAULT_RES[1]) -> RegionGrid:
    """Mask of |R(z)| <= 1 on a uniform nx-by-ny grid over ``window`` = (re0, re1, im0, im1)."""
    mid = MethodId.parse(mid) if isinstance(mid, str) else mid
    if nx < 2 or ny < 2:
        raise ValueError("resolution must be at least 2x2")
    re0, re1, im0, im1 = (float(w) for w in window)
    if not (re0 < re1 and im0 < im1):
        raise ValueError(f"bad window {window}")
    re, im = _axis(re0, re1, nx), _axis(im0, im1, ny)
    z = re[:, None] + 1j * im[None, :]
    with np.errstate(over="ignore", invalid="ignore"):
        mask = np.abs(stability_closed_array(mid, z)) <= 1
    return RegionGrid(mid.value, (re0, re1), (im0, im1), nx, ny, mask)


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class StabilityInterval:
    method: str
    left: float | None  # None when the scan reached the cap
    bounded: bool = True

    def as_dict(self) -> dict:
        return {"method": self.method, "left": self.left, "bounded": self.bounded}


def _amp(mid, x) -> float:
    return abs(stability_closed(mid, x))


def stability_interval(mid: MethodId | str) -> StabilityInterval:
    """Leftmost x* < 0 with |R| <= 1 on [x*, 0]: coarse scan, then bisection."""
    mid = MethodId.parse(mid) if isinstance(mid, str) else mid
    k = 1
    while True:
        x = -k * SCAN_STEP
        if x < SCAN_CAP:
            return StabilityInterval(mid.value, None, False)
        if _amp(mid, x) > 1:
            break
        k += 1
    inside, outside = -(k - 1) * SCAN_STEP, x
    while inside - outside > BISECT_TOL:
        mid_x = 0.5 * (inside + outside)
        if _amp(mid, mid_x) > 1:
            outside = mid_x
        else:
            inside = mid_x
    return StabilityInterval(mid.value, inside)


def exp_deviation_ratios(mid: MethodId | str, zs=(1e-1, 1e-2, 1e-3), dps: int = 50) -> list:
    """|R(z) - e^z| / |z|^(p+1) for each z; roughly constant for a method of order p.

    In double precision the deviation drowns in round-off for high p, so the
    closed form is evaluated with ``dps`` significant digits.
    """
    import mpmath

    mid = MethodId.parse(mid) if isinstance(mid, str) else mid
    p = catalog(mid).order
    out = []
    with mpmath.workdps(dps):
        for z in zs:
            zz = mpmath.mpf(z)
            dev = abs(stability_closed(mid, zz, mpmath.mp) - mpmath.exp(zz))
            out.append(float(dev / abs(zz) ** (p + 1)))
    return out
