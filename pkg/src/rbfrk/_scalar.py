"""Scalar helpers that work for float, complex and mpmath numbers alike."""

import cmath
import math


def _is_builtin(x):
    return isinstance(x, (int, float, complex))


def is_complex(x) -> bool:
    if isinstance(x, complex):
        return True
    if _is_builtin(x):
        return False
    return type(x).__name__ == "mpc"


def exp(x):
    if isinstance(x, (int, float)):
        return math.exp(x)
    if isinstance(x, complex):
        return cmath.exp(x)
    import mpmath
    return mpmath.exp(x)


def sqrt(x):
    """Principal square root; negative reals stay real only for mpmath/complex input."""
    if isinstance(x, (int, float)):
        if x < 0:
            return cmath.sqrt(x)
        return math.sqrt(x)
    if isinstance(x, complex):
        return cmath.sqrt(x)
    import mpmath
    return mpmath.sqrt(x)


def lift(value, like):
    """Return ``value`` converted to the numeric type family of ``like``."""
    if _is_builtin(like):
        return value
    import mpmath
    return mpmath.mpf(value) if isinstance(value, (int, float)) else mpmath.mpmathify(value)


def is_finite(x) -> bool:
    if isinstance(x, (int, float)):
        return math.isfinite(x)
    if isinstance(x, complex):
        return cmath.isfinite(x)
    import mpmath
    return bool(mpmath.isfinite(x)) if not is_complex(x) else (
        bool(mpmath.isfinite(x.real)) and bool(mpmath.isfinite(x.imag)))


__all__ = ["exp", "is_complex", "is_finite", "lift", "sqrt"]
