"""Structure-driven semipositivity screens.

Each function realizes one constructive sufficient condition or one
necessary condition as a certificate generator or refuter.  Every
constructed witness is re-verified numerically before being emitted; a
construction that fails re-verification (possible near strict-inequality
boundaries in floating point) degrades to NO_VERDICT rather than emitting
an unverified certificate.
"""

from dataclasses import dataclass

import numpy as np

from .certificate import Certificate, Verdict
from .cones import (
    DEFAULT_TOL,
    MembershipClass,
    as_square_matrix,
    as_vector,
    in_lorentz,
    membership,
)
from .engine import (
    DecideOptions,
    decide,
    verify_primal,
    verify_dual,
    _dual_margin,
    _unit_axis,
)
from .errors import DimensionError, PreconditionError, StructureError

_NO_VERDICT = "no_verdict"


def _certify_primal(A, x, tol, method):
    check = verify_primal(A, x, tol)
    if check.ok:
        return Certificate(Verdict.SEMIPOSITIVE, method, check.margin, primal=np.asarray(x, float))
    return None


def _certify_dual(A, y, tol, method):
    y = np.asarray(y, float)
    if np.linalg.norm(y) > 0 and verify_dual(A, y, tol):
        return Certificate(Verdict.NOT_SEMIPOSITIVE, method, _dual_margin(A, y), dual=y)
    return None


def _opts_for(tol):
    return DecideOptions(tol=tol)


def structural_screen(A, tol=DEFAULT_TOL):
    """Cheap screens run in fixed order.

    1. last row inside the reflected cone -> refuted with dual -e_n;
    2. last column interior -> witness e_n;
    3. last column in the cone and some other column interior ->
       witness e_n + e_k/2;
    4. small leading rows (sum of squared row norms below half the squared
       last-row norm, with a nonnegative corner) -> witness built from the
       normalized last row lifted by e_n.
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    e_n = _unit_axis(n)

    if in_lorentz(-A[-1], tol):
        cert = _certify_dual(A, -e_n, tol, "bottom_row_refuter")
        if cert:
            return cert

    last_col = A[:, -1]
    m_last = membership(last_col, tol=tol)
    if m_last.cls is MembershipClass.INTERIOR:
        cert = _certify_primal(A, e_n, tol, "last_column_interior")
        if cert:
            return cert
    if m_last.cls is not MembershipClass.EXTERIOR:
        for k in range(n - 1):
            if membership(A[:, k], tol=tol).cls is MembershipClass.INTERIOR:
                x = e_n.copy()
                x[k] = 0.5
                cert = _certify_primal(A, x, tol, "column_pair")
                if cert:
                    return cert
                break

    head_sq = float(np.sum(A[:-1] ** 2))
    a_n = A[-1]
    norm_an = float(np.linalg.norm(a_n))
    if norm_an > 0 and head_sq < 0.5 * norm_an**2 and A[-1, -1] >= 0:
        y = a_n / norm_an + e_n
        cert = _certify_primal(A, y, tol, "row_norm_bound")
        if cert:
            return cert

    return Certificate(Verdict.NO_VERDICT, "structural_screen")


def rank_one_certificate(u, v, tol=DEFAULT_TOL):
    """Decide semipositivity of the rank-one matrix u v^T with u_n >= 0.

    Semipositive exactly when u is interior and v is not in the reflected
    cone; the witness is constructed from v (axis point, lifted v, or the
    tilted axis point for v_n < 0).  Refutations delegate the dual witness
    to the general decision engine.
    """
    u = as_vector(u)
    v = as_vector(v, u.shape[0])
    if u.shape[0] < 2:
        raise DimensionError("rank-one test needs dimension >= 2")
    if np.linalg.norm(u) == 0.0 or np.linalg.norm(v) == 0.0:
        raise ValueError("u and v must be nonzero")
    if u[-1] < 0:
        raise PreconditionError("u_n must be nonnegative; use decide() instead")
    A = np.outer(u, v)

    u_interior = membership(u, tol=tol).cls is MembershipClass.INTERIOR
    v_in_reflected = membership(-v, tol=tol).cls is not MembershipClass.EXTERIOR
    if u_interior and not v_in_reflected:
        if membership(v, tol=tol).cls is not MembershipClass.EXTERIOR:
            if v[-1] > 0:
                x = _unit_axis(u.shape[0])
            else:
                x = v + float(np.linalg.norm(v)) * _unit_axis(u.shape[0])
            method = "rank_one_member"
        elif v[-1] >= 0:
            x = v + float(np.linalg.norm(v)) * _unit_axis(u.shape[0])
            method = "rank_one_lift"
        else:
            nv2 = float(v @ v)
            s = nv2 - float(v[-1]) ** 2
            r = abs(float(v[-1])) * np.sqrt(s)
            eps_gap = 0.5 * (s - r)
            x = (nv2 - eps_gap) * _unit_axis(u.shape[0]) - float(v[-1]) * v
            method = "rank_one_tilt"
        cert = _certify_primal(A, x, tol, method)
        if cert:
            return cert
        return Certificate(Verdict.NO_VERDICT, method)

    general = decide(A, _opts_for(tol))
    if general.verdict is Verdict.NOT_SEMIPOSITIVE:
        return Certificate(
            Verdict.NOT_SEMIPOSITIVE, "rank_one_refuter", general.margin, dual=general.dual
        )
    return Certificate(Verdict.NO_VERDICT, "rank_one_refuter")


def _require_diagonal(D, tol):
    D = as_square_matrix(D)
    off = D - np.diag(np.diag(D))
    if np.max(np.abs(off)) > tol.eps_eq * (1.0 + float(np.max(np.abs(D)))):
        raise StructureError("matrix is not diagonal")
    return D


def diagonal_certificate(D, tol=DEFAULT_TOL):
    """Diagonal matrices are semipositive exactly when the corner entry is
    positive; either way the axis vector settles it."""
    D = _require_diagonal(D, tol)
    n = D.shape[0]
    e_n = _unit_axis(n)
    if D[-1, -1] > 0:
        cert = _certify_primal(D, e_n, tol, "diagonal_corner")
        if cert:
            return cert
        return Certificate(Verdict.NO_VERDICT, "diagonal_corner")
    cert = _certify_dual(D, -e_n, tol, "diagonal_corner_refuter")
    if cert:
        return cert
    return Certificate(Verdict.NO_VERDICT, "diagonal_corner_refuter")


def orthogonal_certificate(Q, tol=DEFAULT_TOL):
    """Orthogonal matrices are semipositive exactly when the corner entry is
    positive.

    The witness is the midpoint of the last row and the axis point, which
    sits interior and makes an angle below pi/4 with the last row whenever
    the corner is positive.  A negative corner is refuted by the mirrored
    construction on -Q^T.  Corners inside the numerical band are left to
    ``decide``.
    """
    Q = as_square_matrix(Q)
    n = Q.shape[0]
    if np.max(np.abs(Q.T @ Q - np.eye(n))) > max(tol.eps_eq, 1e-12) * 10:
        raise StructureError("matrix is not orthogonal within tolerance")
    e_n = _unit_axis(n)
    corner = float(Q[-1, -1])
    band = 2.0 * tol.eps_strict
    if corner > band:
        z = 0.5 * (Q[-1] + e_n)
        cert = _certify_primal(Q, z, tol, "orthogonal_corner")
        if cert:
            return cert
        return Certificate(Verdict.NO_VERDICT, "orthogonal_corner")
    if corner < -band:
        B = -Q.T
        z = 0.5 * (B[-1] + e_n)
        cert = _certify_dual(Q, -z, tol, "orthogonal_corner_refuter")
        if cert:
            return cert
        general = decide(Q, _opts_for(tol))
        if general.verdict is Verdict.NOT_SEMIPOSITIVE:
            return Certificate(
                Verdict.NOT_SEMIPOSITIVE,
                "orthogonal_corner_refuter",
                general.margin,
                dual=general.dual,
            )
        return Certificate(Verdict.NO_VERDICT, "orthogonal_corner_refuter")
    return Certificate(Verdict.NO_VERDICT, "orthogonal_corner_band")


def _require_lower_triangular(A, tol):
    A = as_square_matrix(A)
    upper = np.triu(A, k=1)
    if np.max(np.abs(upper)) > tol.eps_eq * (1.0 + float(np.max(np.abs(A)))):
        raise StructureError("matrix is not lower triangular")
    return A


def _triangular_gap_witness(A, k):
    """Condition: column-head norm plus the negated corner stays below the
    bottom entry of column k.  The witness puts the midpoint coefficient on
    coordinate k."""
    n = A.shape[0]
    alpha_k = float(np.linalg.norm(A[:-1, k]))
    beta = -float(A[-1, -1])
    a_nk = float(A[-1, k])
    c = (alpha_k + beta + a_nk) / (2.0 * a_nk)
    x = np.zeros(n)
    x[k] = c
    x[-1] = 1.0
    return x


def _triangular_row_witness(A):
    """Condition: total squared head-row mass plus twice the negated corner
    stays below the last-row norm.  The witness blends the normalized last
    row with the axis point."""
    n = A.shape[0]
    a_n = A[-1]
    return a_n / (3.0 * float(np.linalg.norm(a_n))) + (2.0 / 3.0) * _unit_axis(n)


def lower_triangular_certificate(A, tol=DEFAULT_TOL):
    """Lower-triangular screens: positive corner settles it with the axis
    point; otherwise two sufficient gap conditions are tried in order."""
    A = _require_lower_triangular(A, tol)
    n = A.shape[0]
    if A[-1, -1] > 0:
        cert = _certify_primal(A, _unit_axis(n), tol, "triangular_corner")
        if cert:
            return cert
        return Certificate(Verdict.NO_VERDICT, "triangular_corner")

    beta = -float(A[-1, -1])
    for k in range(n):
        a_nk = float(A[-1, k])
        if a_nk > 0 and float(np.linalg.norm(A[:-1, k])) + beta < a_nk:
            cert = _certify_primal(A, _triangular_gap_witness(A, k), tol, "triangular_column_gap")
            if cert:
                return cert
            break
    gamma = float(np.sum(A[:-1] ** 2))
    norm_an = float(np.linalg.norm(A[-1]))
    if norm_an > 0 and gamma + 2.0 * beta < norm_an:
        cert = _certify_primal(A, _triangular_row_witness(A), tol, "triangular_row_norm")
        if cert:
            return cert
    return Certificate(Verdict.NO_VERDICT, "lower_triangular")


def perturbation_transfer(A, D, x, tol=DEFAULT_TOL):
    """Transfer a witness x of A to A + D for a diagonal D whose diagonal
    vector lies in the cone.  Hypothesis violations raise; a witness that
    fails re-verification for A + D degrades to NO_VERDICT."""
    A = as_square_matrix(A)
    D = _require_diagonal(D, tol)
    if D.shape[0] != A.shape[0]:
        raise DimensionError("A and D must have the same shape")
    x = as_vector(x, A.shape[0])
    d = np.diag(D)
    if not in_lorentz(d, tol):
        raise PreconditionError("diagonal vector of D is outside the cone")
    if not verify_primal(A, x, tol).ok:
        raise PreconditionError("x is not a semipositivity vector of A")
    cert = _certify_primal(A + D, x, tol, "diagonal_perturbation")
    if cert:
        return cert
    return Certificate(Verdict.NO_VERDICT, "diagonal_perturbation")


def block_embed_certificate(A, k, x22, tol=DEFAULT_TOL):
    """Lift a witness of the trailing k x k block to the full matrix by
    padding with zeros.  Requires the upper-right block to vanish."""
    A = as_square_matrix(A)
    n = A.shape[0]
    k = int(k)
    if not 2 <= k <= n:
        raise DimensionError("block size k must satisfy 2 <= k <= n")
    if k < n:
        upper_right = A[: n - k, n - k :]
        if np.max(np.abs(upper_right)) > tol.eps_eq * (1.0 + float(np.max(np.abs(A)))):
            raise StructureError("upper-right block is not zero")
    x22 = as_vector(x22, k)
    A22 = A[n - k :, n - k :]
    if not verify_primal(A22, x22, tol).ok:
        raise PreconditionError("x22 is not a semipositivity vector of the trailing block")
    z = np.concatenate([np.zeros(n - k), x22])
    cert = _certify_primal(A, z, tol, "block_embedding")
    if cert:
        return cert
    return Certificate(Verdict.NO_VERDICT, "block_embedding")


def copositive_screen(A, tol=DEFAULT_TOL):
    """Positive-semidefinite screen: a symmetric PSD matrix whose quadratic
    form is positive somewhere inside the cone is semipositive.  The screen
    only asserts the verdict; the witness itself always comes from the
    decision engine, so a vanishing form (e.g. a PSD matrix with a cone
    direction in its kernel) falls back to NO_VERDICT."""
    A = as_square_matrix(A)
    n = A.shape[0]
    if np.max(np.abs(A - A.T)) > tol.eps_eq * (1.0 + float(np.max(np.abs(A)))):
        raise StructureError("matrix is not symmetric")
    eigs = np.linalg.eigvalsh(A)
    scale = 1.0 + float(np.max(np.abs(eigs), initial=0.0))
    if eigs[0] < -tol.eps_eq * scale:
        return Certificate(Verdict.NO_VERDICT, "copositive_psd")
    probes = [_unit_axis(n)]
    for i in range(n - 1):
        p = _unit_axis(n)
        p[i] = 0.5
        probes.append(p)
    if not any(float(p @ A @ p) > tol.eps_eq * scale for p in probes):
        return Certificate(Verdict.NO_VERDICT, "copositive_psd")
    general = decide(A, _opts_for(tol))
    if general.verdict is Verdict.SEMIPOSITIVE:
        return Certificate(
            Verdict.SEMIPOSITIVE, "copositive_psd", general.margin, primal=general.primal
        )
    return Certificate(Verdict.NO_VERDICT, "copositive_psd")


@dataclass
class InvarianceReport:
    scaled: Certificate
    permuted: Certificate


def invariance_properties(A, x, alpha, P, tol=DEFAULT_TOL):
    """Check that a witness survives positive scaling and row permutations
    fixing the last coordinate.  Both transfers are re-verified, not
    assumed."""
    A = as_square_matrix(A)
    n = A.shape[0]
    x = as_vector(x, n)
    if not alpha > 0:
        raise PreconditionError("scaling factor must be positive")
    P = as_square_matrix(P)
    if P.shape[0] != n:
        raise DimensionError("P must match A's shape")
    is_perm = (
        np.all((np.abs(P) < 1e-12) | (np.abs(P - 1.0) < 1e-12))
        and np.all(np.abs(P.sum(axis=0) - 1.0) < 1e-12)
        and np.all(np.abs(P.sum(axis=1) - 1.0) < 1e-12)
    )
    if not is_perm or abs(P[-1, -1] - 1.0) > 1e-12:
        raise PreconditionError("P must be a permutation matrix fixing the last coordinate")
    if not verify_primal(A, x, tol).ok:
        raise PreconditionError("x is not a semipositivity vector of A")

    scaled = _certify_primal(alpha * A, x, tol, "scaling_invariance")
    if scaled is None:
        scaled = Certificate(Verdict.NO_VERDICT, "scaling_invariance")
    permuted = _certify_primal(P @ A, x, tol, "row_permutation_invariance")
    if permuted is None:
        permuted = Certificate(Verdict.NO_VERDICT, "row_permutation_invariance")
    return InvarianceReport(scaled, permuted)
