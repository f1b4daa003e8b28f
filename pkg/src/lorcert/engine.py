"""Semipositivity decisions with verified certificates.

A square matrix A is semipositive over the cone when some cone vector x has
Ax in the cone's interior.  Exactly one of the following holds: such an x
exists, or some nonzero y has -y and A^T y both in the cone (the cone is
self-dual).  ``decide`` searches both sides and returns whichever witness
verifies first; witnesses are always re-checked against the membership
predicates before being emitted, so the search method cannot compromise
soundness.

For n = 2 the cone's unit cap is the arc x(theta) = (cos t, sin t),
t in [pi/4, 3pi/4], and the decision reduces to an exact one-dimensional
sweep.  For n >= 3 both sides run multi-start projected supergradient
ascent of the concave margin x -> (Cx)_n - ||(Cx)_{1:n-1}|| over the cap
(C = A for the primal side, C = -A^T for the dual side), in alternating
budget slices, followed by a Polyak polishing pass near the boundary.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from . import _kernels
from ._optim import golden_max
from .certificate import Certificate, Verdict
from .cones import (
    DEFAULT_TOL,
    SQRT2,
    Tolerances,
    as_square_matrix,
    as_vector,
    in_lorentz,
    lorentz_margin,
    membership,
    MembershipClass,
)
from .errors import DimensionError, PreconditionError, SingularMatrixError

_SWEEP_RESOLUTION = 10_000
_STALL_WINDOW = 250
_POLISH_ITERS = 400
_CHUNK = 16


def _slice_width(max_starts):
    """Budget-slice width for the multi-start searches.

    The compiled backend interleaves the primal and dual sides in narrow
    slices; the pure backend runs one wide lockstep block per side, since
    its per-iteration overhead is amortized across starts."""
    if _kernels.backend_name() == "pure":
        return max_starts
    return min(_CHUNK, max_starts)


@dataclass(frozen=True)
class DecideOptions:
    max_starts: int = 64
    max_iters: int = 2000
    step_init: float = 0.5
    seed: int = 42
    tol: Tolerances = field(default_factory=Tolerances)

    def __post_init__(self):
        if self.max_starts < 1 or self.max_iters < 1:
            raise ValueError("max_starts and max_iters must be >= 1")
        if not self.step_init > 0:
            raise ValueError("step_init must be positive")


DEFAULT_OPTIONS = DecideOptions()


@dataclass(frozen=True)
class PrimalCheck:
    ok: bool
    margin: float


def margin_objective(A, x):
    """(Ax)_n - ||(Ax)_{1:n-1}||; positive somewhere on the cap iff A is
    semipositive."""
    A = as_square_matrix(A)
    y = A @ as_vector(x, A.shape[0])
    return float(y[-1]) - float(np.linalg.norm(y[:-1]))


def verify_primal(A, x, tol=DEFAULT_TOL):
    """Check that x certifies semipositivity: x in the cone, Ax interior."""
    A = as_square_matrix(A)
    x = as_vector(x, A.shape[0])
    y = A @ x
    margin = SQRT2 * float(y[-1]) - float(np.linalg.norm(y))
    ok = (
        membership(x, tol=tol).cls is not MembershipClass.EXTERIOR
        and membership(y, tol=tol).cls is MembershipClass.INTERIOR
    )
    return PrimalCheck(ok, margin)


def verify_dual(A, y, tol=DEFAULT_TOL):
    """Check the alternative witness: -y and A^T y in the cone (eps_mem band)."""
    A = as_square_matrix(A)
    y = as_vector(y, A.shape[0])
    if float(np.linalg.norm(y)) == 0.0:
        raise ValueError("dual witness must be nonzero")
    return in_lorentz(-y, tol) and in_lorentz(A.T @ y, tol)


def _dual_margin(A, y):
    return min(lorentz_margin(-y), lorentz_margin(A.T @ y))


def _unit_axis(n):
    e = np.zeros(n)
    e[-1] = 1.0
    return e


def _make_starts(C, count, seed_key):
    """Deterministic start block: axis point, a row-informed point, then
    seeded Gaussian directions (the kernel projects them onto the cap)."""
    n = C.shape[0]
    rng = np.random.default_rng(np.random.SeedSequence(seed_key))
    starts = rng.standard_normal((count, n))
    starts[0] = _unit_axis(n)
    if count > 1:
        lifted = C[-1].copy()
        lifted[-1] += float(np.linalg.norm(C[-1])) or 1.0
        starts[1] = lifted
    return starts


def _cap_point(theta):
    return np.array([math.cos(theta), math.sin(theta)])


@lru_cache(maxsize=4)
def _cap_arc(resolution):
    theta = np.linspace(math.pi / 4.0, 3.0 * math.pi / 4.0, resolution)
    X = np.column_stack([np.cos(theta), np.sin(theta)])
    theta.flags.writeable = False
    X.flags.writeable = False
    return theta, X


def _sweep_cap_2d(C, resolution=_SWEEP_RESOLUTION):
    """Exact n=2 search: dense sweep of the cap arc plus local refinement
    of every sampled maximum down to 1e-12 in the angle."""
    theta, X = _cap_arc(resolution)
    Y = X @ C.T
    vals = Y[:, 1] - np.abs(Y[:, 0])

    def f(t):
        y = C @ _cap_point(t)
        return float(y[1]) - abs(float(y[0]))

    interior = (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
    candidates = set(np.flatnonzero(interior) + 1)
    candidates.update((0, resolution - 1))
    best_t = float(theta[int(np.argmax(vals))])
    best_v = float(np.max(vals))
    top = sorted(candidates, key=lambda i: -vals[i])[:8]
    for i in top:
        lo = float(theta[max(i - 1, 0)])
        hi = float(theta[min(i + 1, resolution - 1)])
        if hi <= lo:
            continue
        t_ref, v_ref = golden_max(f, lo, hi)
        if v_ref > best_v:
            best_v = float(v_ref)
            best_t = float(t_ref)
    return _cap_point(best_t), best_v


def _stop_levels(A, tol):
    scale = 1.0 + float(np.linalg.norm(A))
    return 20.0 * tol.eps_strict * scale, 1e3 * tol.eps_mem * scale


def _try_primal_cert(A, x, tol, method):
    check = verify_primal(A, x, tol)
    if check.ok:
        return Certificate(Verdict.SEMIPOSITIVE, method, check.margin, primal=x.copy())
    return None


def _try_dual_cert(A, y, tol, method):
    if float(np.linalg.norm(y)) == 0.0:
        return None
    if verify_dual(A, y, tol):
        return Certificate(
            Verdict.NOT_SEMIPOSITIVE, method, _dual_margin(A, y), dual=y.copy()
        )
    return None


def search_primal(A, opts=DEFAULT_OPTIONS):
    """Best primal candidate over the full budget: (unit x, margin value)."""
    A = as_square_matrix(A)
    if A.shape[0] == 2:
        return _sweep_cap_2d(A)
    stop_p, _ = _stop_levels(A, opts.tol)
    val, x = _ascent_search(A, opts, stream=0, stop_value=stop_p)
    return x, val


def search_dual(A, opts=DEFAULT_OPTIONS):
    """Best dual candidate over the full budget: (y, margin value of A^T y
    at -y's side).  The candidate is y = -z for the searched cap point z."""
    A = as_square_matrix(A)
    B = -A.T
    if A.shape[0] == 2:
        z, val = _sweep_cap_2d(B)
        return -z, val
    _, stop_d = _stop_levels(A, opts.tol)
    val, z = _ascent_search(B, opts, stream=1, stop_value=stop_d)
    return -z, val


def _ascent_search(C, opts, stream, stop_value):
    starts = _make_starts(C, opts.max_starts, (opts.seed, stream))
    best_val, best_x = -np.inf, _unit_axis(C.shape[0])
    width = _slice_width(opts.max_starts)
    for lo in range(0, opts.max_starts, width):
        val, x = _kernels.ascent(
            C, starts[lo : lo + width], opts.max_iters, opts.step_init,
            stop_value, _STALL_WINDOW,
        )
        if val > best_val:
            best_val, best_x = val, x
        if best_val >= stop_value:
            return best_val, best_x
    val, x = _kernels.polish(C, best_x, stop_value, _POLISH_ITERS)
    if val > best_val:
        best_val, best_x = val, x
    return best_val, best_x


def _decide_2x2(A, opts):
    tol = opts.tol
    x, _ = _sweep_cap_2d(A)
    cert = _try_primal_cert(A, x, tol, "angle_sweep")
    if cert:
        return cert
    z, _ = _sweep_cap_2d(-A.T)
    cert = _try_dual_cert(A, -z, tol, "angle_sweep_dual")
    if cert:
        return cert
    return Certificate(Verdict.UNDECIDED, "angle_sweep", lorentz_margin(A @ x))


def decide(A, opts=None):
    """Decide semipositivity, returning a verified certificate.

    Returns SEMIPOSITIVE with a primal witness, NOT_SEMIPOSITIVE with a dual
    witness, or UNDECIDED carrying the best membership margin found when
    both searches stall inside the numerical boundary band.  Deterministic
    for fixed (A, opts.seed).
    """
    A = as_square_matrix(A)
    opts = opts or DEFAULT_OPTIONS
    tol = opts.tol
    n = A.shape[0]
    if n == 2:
        return _decide_2x2(A, opts)

    B = -A.T
    stop_p, stop_d = _stop_levels(A, tol)
    starts_p = _make_starts(A, opts.max_starts, (opts.seed, 0))
    starts_d = _make_starts(B, opts.max_starts, (opts.seed, 1))
    best_p = (-np.inf, _unit_axis(n))
    best_d = (-np.inf, _unit_axis(n))

    # Alternate budget slices between the primal and dual searches; the
    # first verified certificate wins (fixed order, so deterministic).
    width = _slice_width(opts.max_starts)
    for lo in range(0, opts.max_starts, width):
        for side in ("primal", "dual"):
            C = A if side == "primal" else B
            starts = starts_p if side == "primal" else starts_d
            stop = stop_p if side == "primal" else stop_d
            val, x = _kernels.ascent(
                C, starts[lo : lo + width], opts.max_iters, opts.step_init,
                stop, _STALL_WINDOW,
            )
            if side == "primal":
                if val > best_p[0]:
                    best_p = (val, x)
                cert = _try_primal_cert(A, best_p[1], tol, "projected_ascent")
            else:
                if val > best_d[0]:
                    best_d = (val, x)
                cert = _try_dual_cert(A, -best_d[1], tol, "projected_ascent_dual")
            if cert:
                return cert

    # Polishing endgame for near-boundary instances.
    val, x = _kernels.polish(A, best_p[1], stop_p, _POLISH_ITERS)
    if val > best_p[0]:
        best_p = (val, x)
    cert = _try_primal_cert(A, best_p[1], tol, "projected_ascent")
    if cert:
        return cert
    val, z = _kernels.polish(B, best_d[1], max(stop_d, 0.0), _POLISH_ITERS)
    if val > best_d[0]:
        best_d = (val, z)
    cert = _try_dual_cert(A, -best_d[1], tol, "projected_ascent_dual")
    if cert:
        return cert
    return Certificate(
        Verdict.UNDECIDED, "projected_ascent", lorentz_margin(A @ best_p[1])
    )


def verify_factorization(A, X, Y, opts=None):
    """Check A = Y X^{-1} with X invertible and X, Y both semipositive."""
    A = as_square_matrix(A)
    X = as_square_matrix(X)
    Y = as_square_matrix(Y)
    n = A.shape[0]
    if X.shape[0] != n or Y.shape[0] != n:
        raise DimensionError("A, X, Y must share one square shape")
    opts = opts or DEFAULT_OPTIONS
    s = np.linalg.svd(X, compute_uv=False)
    if s[-1] <= 1e-12 * max(s[0], 1.0):
        raise SingularMatrixError("X is numerically singular")
    if float(np.linalg.norm(A @ X - Y)) > opts.tol.eps_eq * (
        1.0 + float(np.linalg.norm(Y))
    ):
        return False
    if decide(X, opts).verdict is not Verdict.SEMIPOSITIVE:
        return False
    return decide(Y, opts).verdict is Verdict.SEMIPOSITIVE


# --- 2x2 similarity transfer between the orthant and the cone -------------

_T_MIX = np.array([[1.0, -1.0], [1.0, 1.0]])
_T_MIX_INV = np.array([[0.5, 0.5], [-0.5, 0.5]])


class TransferDirection(Enum):
    TO_LORENTZ = "to_lorentz"
    FROM_LORENTZ = "from_lorentz"


@dataclass
class TransferResult:
    C: np.ndarray
    certificate: Certificate


def _orthant_witness_2x2(A, resolution=4001):
    """Maximize min((Ax)_1, (Ax)_2) over the segment x = (t, 1-t).

    The objective is concave piecewise-linear, so a dense sweep plus local
    refinement is exact.
    """
    ts = np.linspace(0.0, 1.0, resolution)
    X = np.column_stack([ts, 1.0 - ts])
    vals = (X @ A.T).min(axis=1)
    i = int(np.argmax(vals))

    def f(t):
        return float(min(A[0, 0] * t + A[0, 1] * (1 - t), A[1, 0] * t + A[1, 1] * (1 - t)))

    lo, hi = float(ts[max(i - 1, 0)]), float(ts[min(i + 1, resolution - 1)])
    best_t, best_v = float(ts[i]), float(vals[i])
    if hi > lo:
        t_ref, v_ref = golden_max(f, lo, hi)
        if v_ref > best_v:
            best_t, best_v = float(t_ref), float(v_ref)
    return np.array([best_t, 1.0 - best_t]), best_v


def _orthant_cert(C, w, tol):
    v = C @ w
    val = float(np.min(v))
    if float(np.min(w)) >= -tol.eps_mem and val > tol.eps_strict * (
        1.0 + float(np.linalg.norm(C))
    ):
        return Certificate(Verdict.SEMIPOSITIVE, "orthant_witness", val, primal=w.copy())
    return None


def similarity_transfer_2x2(A, direction, opts=None):
    """Carry a 2x2 semipositivity certificate across T = [[1,-1],[1,1]].

    TO_LORENTZ requires A semipositive over the nonnegative orthant and
    returns C = T A T^{-1} with a verified cone certificate; FROM_LORENTZ
    requires A semipositive over the cone and returns C = T^{-1} A T with a
    verified orthant certificate.
    """
    A = as_square_matrix(A)
    if A.shape[0] != 2:
        raise DimensionError("similarity transfer is a 2x2 operation")
    opts = opts or DEFAULT_OPTIONS
    tol = opts.tol
    direction = TransferDirection(direction)

    if direction is TransferDirection.TO_LORENTZ:
        w, val = _orthant_witness_2x2(A)
        if val <= tol.eps_strict * (1.0 + float(np.linalg.norm(A))):
            raise PreconditionError("input is not semipositive over the orthant")
        C = _T_MIX @ A @ _T_MIX_INV
        x = _T_MIX @ w
        nx = float(np.linalg.norm(x))
        if nx > 0:
            x = x / nx
        cert = _try_primal_cert(C, x, tol, "similarity_transfer")
        if cert is None:
            cert = decide(C, opts)
        return TransferResult(C, cert)

    base = decide(A, opts)
    if base.verdict is not Verdict.SEMIPOSITIVE:
        raise PreconditionError("input is not semipositive over the cone")
    C = _T_MIX_INV @ A @ _T_MIX
    w = _T_MIX_INV @ base.primal
    w = np.clip(w, 0.0, None)
    s = float(np.sum(w))
    if s > 0:
        w = w / s
    cert = _orthant_cert(C, w, tol)
    if cert is None:
        w2, val2 = _orthant_witness_2x2(C)
        cert = _orthant_cert(C, w2, tol)
    if cert is None:
        cert = Certificate(Verdict.NO_VERDICT, "similarity_transfer", 0.0)
    return TransferResult(C, cert)
