"""Lorentz-cone primitives: membership with margins, angles, halfspaces,
and the elementary product inequalities of cone vectors.

The cone in dimension n is {x : x_n >= 0, sum_{i<n} x_i^2 <= x_n^2},
equivalently {x : ||x|| <= sqrt(2) x_n}.  The margin of a vector is
sqrt(2)*x_n - ||x||: positive inside, zero on the boundary, negative outside.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import DimensionError

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Tolerances:
    """Base tolerances; membership bands scale them by (1 + ||x||).

    eps_mem bounds how far outside the cone a vector may sit and still count
    as a member; eps_strict is the wider band separating Interior from
    Boundary; eps_eq is the absolute tolerance for equality comparisons.
    """

    eps_mem: float = 1e-9
    eps_strict: float = 1e-7
    eps_eq: float = 1e-9

    def __post_init__(self):
        if not (self.eps_mem > 0 and self.eps_strict > 0 and self.eps_eq > 0):
            raise ValueError("tolerances must be strictly positive")
        if self.eps_strict < self.eps_mem:
            raise ValueError("eps_strict must be >= eps_mem")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class LorentzCone:
    """Second-order cone in dimension n >= 2 (n = 1 degenerates to a halfline)."""

    n: int

    def __post_init__(self):
        if int(self.n) < 2:
            raise DimensionError(f"Lorentz cone needs dimension >= 2, got {self.n}")


class MembershipClass(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class Membership:
    cls: MembershipClass
    margin: float


class HalfspaceClass(Enum):
    UPPER_OPEN = "upper_open"
    LOWER = "lower"
    ON_H0 = "on_h0"


def as_vector(x, n=None):
    v = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if v.ndim != 1:
        raise DimensionError(f"expected a vector, got shape {v.shape}")
    if n is not None and v.shape[0] != n:
        raise DimensionError(f"expected length {n}, got {v.shape[0]}")
    return v


def as_square_matrix(A, min_n=2):
    M = np.atleast_2d(np.asarray(A, dtype=np.float64))
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    if M.shape[0] < min_n:
        raise DimensionError(f"matrix dimension must be >= {min_n}, got {M.shape[0]}")
    return M


def lorentz_margin(x):
    """sqrt(2)*x_n - ||x||; sign classifies membership."""
    x = as_vector(x)
    return SQRT2 * float(x[-1]) - float(np.linalg.norm(x))


def membership(x, cone=None, tol=DEFAULT_TOL):
    """Three-way classification of x against the cone, with its margin.

    Interior requires margin > eps_strict*(1+||x||) (and x_n > 0); Boundary
    tolerates |margin| within that band as long as x_n >= -eps_mem*(1+||x||);
    everything else is Exterior.  Boundary is a deliberate verdict, not
    noise: equality cases of the product inequalities and extremality tests
    depend on it.
    """
    x = as_vector(x, None if cone is None else cone.n)
    if x.shape[0] < 2:
        raise DimensionError("membership needs dimension >= 2")
    nx = float(np.linalg.norm(x))
    margin = SQRT2 * float(x[-1]) - nx
    eps_s = tol.eps_strict * (1.0 + nx)
    eps_m = tol.eps_mem * (1.0 + nx)
    if margin > eps_s and x[-1] > 0:
        cls = MembershipClass.INTERIOR
    elif abs(margin) <= eps_s and x[-1] >= -eps_m:
        cls = MembershipClass.BOUNDARY
    else:
        cls = MembershipClass.EXTERIOR
    return Membership(cls, margin)


def in_lorentz(x, tol=DEFAULT_TOL):
    """Closed membership within the eps_mem band (no interior requirement)."""
    x = as_vector(x)
    nx = float(np.linalg.norm(x))
    eps_m = tol.eps_mem * (1.0 + nx)
    return SQRT2 * float(x[-1]) - nx >= -eps_m and x[-1] >= -eps_m


def project(x):
    """Euclidean projection onto the cone (closed form)."""
    return _kernels.project_cone(as_vector(x))


def angle(x, y):
    """Angle in [0, pi] between nonzero vectors of equal length.

    The cosine is clamped into [-1, 1] before arccos to absorb rounding on
    colinear inputs.
    """
    x = as_vector(x)
    y = as_vector(y, x.shape[0])
    nx, ny = float(np.linalg.norm(x)), float(np.linalg.norm(y))
    if nx == 0.0 or ny == 0.0:
        raise ValueError("angle is undefined for the zero vector")
    c = float(x @ y) / (nx * ny)
    return math.acos(min(1.0, max(-1.0, c)))


def entrywise_power(x, l):
    """(x_1^l, ..., x_n^l).  Maps cone members to cone members."""
    x = as_vector(x)
    if int(l) < 1:
        raise ValueError("power must be a positive integer")
    return x ** int(l)


def halfspace_classify(x, tol=DEFAULT_TOL):
    """Position of x against the hyperplane {x_n = 0}."""
    x = as_vector(x)
    if x.shape[0] < 2:
        raise DimensionError("halfspace classification needs dimension >= 2")
    t = float(x[-1])
    if t > tol.eps_eq:
        return HalfspaceClass.UPPER_OPEN
    if t < -tol.eps_eq:
        return HalfspaceClass.LOWER
    return HalfspaceClass.ON_H0


@dataclass(frozen=True)
class ProductBound:
    lhs: float
    rhs: float


def _require_member(v, tol, name):
    if not in_lorentz(v, tol):
        raise ValueError(f"{name} is outside the cone (margin {lorentz_margin(v):.3e})")


def pairwise_product_bound(x, y, tol=DEFAULT_TOL):
    """For cone members: sum_{k<n} x_k y_k <= x_n y_n.

    Returns both sides; equality holds on colinear boundary rays.
    """
    x = as_vector(x)
    y = as_vector(y, x.shape[0])
    _require_member(x, tol, "x")
    _require_member(y, tol, "y")
    lhs = float(x[:-1] @ y[:-1])
    rhs = float(x[-1] * y[-1])
    return ProductBound(lhs, rhs)


def triple_product_bound(x, y, z, tol=DEFAULT_TOL):
    """Three-factor version: sum_{k<n} x_k y_k z_k <= x_n y_n z_n."""
    x = as_vector(x)
    y = as_vector(y, x.shape[0])
    z = as_vector(z, x.shape[0])
    for v, name in ((x, "x"), (y, "y"), (z, "z")):
        _require_member(v, tol, name)
    lhs = float(np.sum(x[:-1] * y[:-1] * z[:-1]))
    rhs = float(x[-1] * y[-1] * z[-1])
    return ProductBound(lhs, rhs)
