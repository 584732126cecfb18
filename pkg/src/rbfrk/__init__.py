"""Standard and RBF-enhanced explicit Runge-Kutta methods with shape parameters chosen per step."""

from .integrator import NonFiniteStateError, Trajectory, integrate, step
from .methods import AugmentedTableau, MethodId, ShapeRule, catalog, rk2_family, rk3_family
from .problem import EX1, EX2, EX3, DerivativeTower, ProblemSpec, SingularInputError, builtin, linear
from .shape import Fallback, ShapeParams

__all__ = [
    "AugmentedTableau", "DerivativeTower", "EX1", "EX2", "EX3", "Fallback", "MethodId",
    "NonFiniteStateError", "ProblemSpec", "ShapeParams", "ShapeRule", "SingularInputError",
    "Trajectory", "builtin", "catalog", "integrate", "linear", "rk2_family", "rk3_family", "step",
]
