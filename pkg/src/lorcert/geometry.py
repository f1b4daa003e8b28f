"""Cone geometry: ellipsoidal representations, inertia, preimage cones,
extremal mapping, cone invariance, and monotonicity.

Every invertible X carries the Lorentz cone to the ellipsoidal cone X(L),
which is also {z : z^T Q z <= 0, u^T z >= 0} for Q = X^{-T} J X^{-1}
(J = diag(1,...,1,-1)) with inertia (n-1, 0, 1) and u the unit eigenvector
of the single negative eigenvalue, oriented by an interior point.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._optim import golden_min
from .cones import (
    DEFAULT_TOL,
    LorentzCone,
    Membership,
    MembershipClass,
    as_square_matrix,
    as_vector,
    in_lorentz,
    membership,
)
from .errors import DimensionError, PreconditionError, SingularMatrixError, StructureError

_COND_LIMIT = 1e8


@dataclass(frozen=True)
class OrthantCone:
    """Nonnegative orthant in dimension n."""

    n: int

    def __post_init__(self):
        if int(self.n) < 1:
            raise DimensionError("orthant dimension must be >= 1")


class LinearImageCone:
    """X(L) for an invertible, well-conditioned X over the Lorentz cone L."""

    def __init__(self, X):
        X = as_square_matrix(X)
        s = np.linalg.svd(X, compute_uv=False)
        if s[-1] <= 0 or s[0] / s[-1] > _COND_LIMIT:
            raise SingularMatrixError(
                "cone map must be invertible with condition number below 1e8"
            )
        self.X = X
        self.X_inv = np.linalg.inv(X)

    @property
    def n(self):
        return self.X.shape[0]


def _mirror_j(n):
    J = np.eye(n)
    J[-1, -1] = -1.0
    return J


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_zero: int
    n_minus: int

    def astuple(self):
        return (self.n_plus, self.n_zero, self.n_minus)


def inertia(Q, tol=DEFAULT_TOL):
    """Counts of eigenvalues above, within, and below +/- eps_eq*||Q||."""
    Q = as_square_matrix(Q, min_n=1)
    if np.max(np.abs(Q - Q.T)) > tol.eps_eq * (1.0 + float(np.max(np.abs(Q)))):
        raise StructureError("inertia requires a symmetric matrix")
    eigs = np.linalg.eigvalsh(0.5 * (Q + Q.T))
    band = tol.eps_eq * float(np.max(np.abs(eigs), initial=0.0))
    n_plus = int(np.sum(eigs > band))
    n_minus = int(np.sum(eigs < -band))
    return Inertia(n_plus, Q.shape[0] - n_plus - n_minus, n_minus)


@dataclass
class EllipsoidalRep:
    """Quadratic representation {z : z^T Q z <= 0, u^T z >= 0} of an
    ellipsoidal cone; ``lam`` is Q's unique negative eigenvalue and u its
    unit eigenvector, oriented so interior points have u^T z > 0."""

    Q: np.ndarray
    u: np.ndarray
    lam: float

    def contains(self, z, tol=DEFAULT_TOL):
        z = as_vector(z, self.Q.shape[0])
        nz = float(np.linalg.norm(z))
        scale_q = float(np.max(np.abs(self.Q))) * (1.0 + nz) ** 2
        return (
            float(z @ self.Q @ z) <= tol.eps_eq * (1.0 + scale_q)
            and float(self.u @ z) >= -tol.eps_eq * (1.0 + nz)
        )


def ellipsoidal_rep_from_map(X, tol=DEFAULT_TOL):
    """Representation of X(L): Q = X^{-T} J X^{-1}, oriented by X e_n."""
    cone = LinearImageCone(X)
    n = cone.n
    J = _mirror_j(n)
    Q = cone.X_inv.T @ J @ cone.X_inv
    Q = 0.5 * (Q + Q.T)
    sig = inertia(Q, tol)
    if sig.astuple() != (n - 1, 0, 1):
        raise SingularMatrixError(
            f"representation is numerically degenerate (inertia {sig.astuple()})"
        )
    eigvals, eigvecs = np.linalg.eigh(Q)
    lam = float(eigvals[0])
    u = eigvecs[:, 0]
    witness = cone.X[:, -1]
    if float(u @ witness) < 0:
        u = -u
    return EllipsoidalRep(Q, u, lam)


def _orthant_membership(x, tol):
    x = as_vector(x)
    nx = float(np.linalg.norm(x))
    margin = float(np.min(x))
    eps_s = tol.eps_strict * (1.0 + nx)
    eps_m = tol.eps_mem * (1.0 + nx)
    if margin > eps_s:
        cls = MembershipClass.INTERIOR
    elif margin >= -eps_m:
        cls = MembershipClass.BOUNDARY
    else:
        cls = MembershipClass.EXTERIOR
    return Membership(cls, margin)


def cone_membership(K, x, tol=DEFAULT_TOL):
    """Membership of x in a Lorentz, orthant, or linear-image cone."""
    if isinstance(K, LorentzCone):
        return membership(x, K, tol)
    if isinstance(K, OrthantCone):
        return _orthant_membership(as_vector(x, K.n), tol)
    if isinstance(K, LinearImageCone):
        return membership(K.X_inv @ as_vector(x, K.n), tol=tol)
    raise TypeError(f"unsupported cone descriptor {type(K).__name__}")


def preimage_membership(A, K, x, tol=DEFAULT_TOL):
    """Membership of Ax in K: classification of x in the preimage cone."""
    A = as_square_matrix(A)
    x = as_vector(x, A.shape[1])
    return cone_membership(K, A @ x, tol)


def semipositive_cone_membership(A, K, x, tol=DEFAULT_TOL):
    """True when x and Ax both belong to K (non-exterior)."""
    A = as_square_matrix(A)
    x = as_vector(x, A.shape[1])
    return (
        cone_membership(K, x, tol).cls is not MembershipClass.EXTERIOR
        and cone_membership(K, A @ x, tol).cls is not MembershipClass.EXTERIOR
    )


def is_extremal(K, x, tol=DEFAULT_TOL):
    """Extreme-ray test: boundary rays for the Lorentz cone and its linear
    images, coordinate axes for the orthant."""
    x = as_vector(x)
    if float(np.linalg.norm(x)) == 0.0:
        raise ValueError("extremality is undefined at the origin")
    if isinstance(K, LorentzCone):
        return membership(x, K, tol).cls is MembershipClass.BOUNDARY
    if isinstance(K, OrthantCone):
        x = as_vector(x, K.n)
        i = int(np.argmax(np.abs(x)))
        alpha = float(x[i])
        if alpha <= 0:
            return False
        rest = np.delete(x, i)
        return float(np.max(np.abs(rest), initial=0.0)) <= tol.eps_eq * (1.0 + alpha)
    if isinstance(K, LinearImageCone):
        return membership(K.X_inv @ as_vector(x, K.n), tol=tol).cls is MembershipClass.BOUNDARY
    raise TypeError(f"unsupported cone descriptor {type(K).__name__}")


def extremal_pushforward(A, K, x, tol=DEFAULT_TOL):
    """Map an extremal x of K to A^{-1} x, an extremal of the preimage cone
    {z : Az in K}; certified through the image condition A x' on K's
    boundary (boundary ray / extreme ray)."""
    A = as_square_matrix(A)
    x = as_vector(x, A.shape[0])
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= 1e-12 * max(s[0], 1.0):
        raise SingularMatrixError("pushforward requires an invertible matrix")
    if not is_extremal(K, x, tol):
        raise PreconditionError("x is not an extremal of K")
    x_new = np.linalg.solve(A, x)
    image = A @ x_new
    if isinstance(K, OrthantCone):
        ok = is_extremal(K, image, tol)
    else:
        ok = cone_membership(K, image, tol).cls is MembershipClass.BOUNDARY
    if not ok:
        raise ArithmeticError("pushforward certification failed numerically")
    return x_new


def _null_space(A):
    _, s, vh = np.linalg.svd(A)
    cutoff = max(A.shape) * np.finfo(np.float64).eps * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].T


def is_invariant(A, tol=DEFAULT_TOL):
    """Does A map the cone into itself?

    Decided by (a) an exact kernel check: a kernel direction through the
    cone's interior forces the image to be a full subspace, so only the
    zero matrix passes; (b) the orientation check A e_n in the cone; and
    (c) existence of mu >= 0 with A^T J A - mu J negative semidefinite
    (exact for the double cone {x^T J x <= 0}), searched over
    mu in [0, 4 ||A||^2] where the largest eigenvalue is convex in mu.
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    if not A.any():
        return True
    N = _null_space(A)
    if N.shape[1] > 0:
        row = N[-1, :]
        if np.sqrt(2.0) * float(np.linalg.norm(row)) > 1.0 + tol.eps_strict:
            return False
    e_n = np.zeros(n)
    e_n[-1] = 1.0
    if not in_lorentz(A @ e_n, tol):
        return False
    J = _mirror_j(n)
    M = A.T @ (J @ A)
    M = 0.5 * (M + M.T)
    s1 = float(np.linalg.norm(A, 2))
    mu_hi = 4.0 * s1 * s1

    def h(mu):
        return float(np.linalg.eigvalsh(M - mu * J)[-1])

    _, h_star = golden_min(h, 0.0, mu_hi, xatol=1e-12 * (1.0 + mu_hi))
    h_min = min(h_star, h(0.0), h(mu_hi))
    return h_min <= tol.eps_eq * (1.0 + s1 * s1)


def is_monotone(A, tol=DEFAULT_TOL):
    """Ax in the cone forces x in the cone; equivalently A is invertible
    and A^{-1} leaves the cone invariant.  Singular matrices are simply
    not monotone."""
    A = as_square_matrix(A)
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= 1e-12 * max(s[0], 1.0):
        return False
    return is_invariant(np.linalg.inv(A), tol)


@dataclass
class SConeReport:
    ellipsoidal: bool
    rep: Optional[EllipsoidalRep]


def s_cone_is_ellipsoidal(A, tol=DEFAULT_TOL):
    """The preimage cone {x : Ax in L} is ellipsoidal exactly when A is
    invertible, in which case it is A^{-1}(L)."""
    A = as_square_matrix(A)
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= 1e-12 * max(s[0], 1.0):
        return SConeReport(False, None)
    return SConeReport(True, ellipsoidal_rep_from_map(np.linalg.inv(A), tol))


@dataclass
class KConeReport:
    coincides: bool
    rep: Optional[EllipsoidalRep]
    separator: Optional[np.ndarray]


def _boundary_ray_grid(n, count, seed):
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, n - 1))
    norms = np.linalg.norm(dirs, axis=1)
    norms[norms == 0] = 1.0
    dirs /= norms[:, None]
    rays = np.column_stack([dirs, np.ones(count)]) / np.sqrt(2.0)
    axes = []
    for i in range(n - 1):
        for sign in (1.0, -1.0):
            d = np.zeros(n - 1)
            d[i] = sign
            axes.append(np.append(d, 1.0) / np.sqrt(2.0))
    return np.vstack([np.array(axes), rays])


def k_cone_under_monotone(A, tol=DEFAULT_TOL, samples=2000, seed=7):
    """Compare {x in L : Ax in L} with the full preimage {x : Ax in L}.

    For a monotone A the two coincide and the common cone is ellipsoidal.
    Otherwise a separator x with Ax in L but x outside L is searched: the
    kernel supplies one when A is singular, and boundary rays pulled back
    through A^{-1} cover the invertible case.
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    if is_monotone(A, tol):
        return KConeReport(True, s_cone_is_ellipsoidal(A, tol).rep, None)
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= 1e-12 * max(s[0], 1.0):
        v = _null_space(A)[:, 0]
        sep = v if membership(v, tol=tol).cls is MembershipClass.EXTERIOR else -v
        return KConeReport(False, None, sep)
    rays = _boundary_ray_grid(n, samples, seed)
    pulled = np.linalg.solve(A, rays.T).T
    margins = np.sqrt(2.0) * pulled[:, -1] - np.linalg.norm(pulled, axis=1)
    worst = int(np.argmin(margins))
    x = pulled[worst]
    if membership(x, tol=tol).cls is MembershipClass.EXTERIOR:
        return KConeReport(False, None, x)
    return KConeReport(True, None, None)
