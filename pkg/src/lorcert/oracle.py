"""Brute-force reference implementations.

These referee the analytical operations in tests: a seeded in-cone sampler,
a grid/refinement decision sweep for n <= 4, and a boundary-ray invariance
check.  They are deliberately written against the raw membership margin
sqrt(2) v_n - ||v|| rather than reusing the engine's search machinery.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .certificate import Certificate, Verdict
from .cones import DEFAULT_TOL, SQRT2, as_square_matrix
from .errors import DimensionError

_REFINE_ROUNDS = 24
_REFINE_BATCH = 400


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    count: int = 100
    resolution: int = 200

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.resolution < 10:
            raise ValueError("resolution must be >= 10")


def sample_lorentz(n, cfg=SamplerConfig()):
    """Seeded cone samples: heights uniform on (0, 1], head coordinates
    uniform in the disk of radius equal to the height."""
    n = int(n)
    if n < 2:
        raise DimensionError("sampler needs dimension >= 2")
    rng = np.random.default_rng(cfg.seed)
    t = 1.0 - rng.random(cfg.count)
    dirs = rng.standard_normal((cfg.count, n - 1))
    norms = np.linalg.norm(dirs, axis=1)
    norms[norms == 0] = 1.0
    dirs /= norms[:, None]
    radii = t * rng.random(cfg.count) ** (1.0 / (n - 1))
    return np.column_stack([dirs * radii[:, None], t])


def _margins(C, X):
    Y = X @ C.T
    return SQRT2 * Y[:, -1] - np.sqrt(np.einsum("ij,ij->i", Y, Y))


@lru_cache(maxsize=8)
def _cap_grid(n, resolution):
    """Unit vectors covering the cone's spherical cap for n in {2, 3, 4}.

    The grid is matrix-independent, so it is cached (and frozen) across
    calls."""
    grid = _build_cap_grid(n, resolution)
    grid.flags.writeable = False
    return grid


def _build_cap_grid(n, resolution):
    if n == 2:
        theta = np.linspace(np.pi / 4.0, 3.0 * np.pi / 4.0, resolution)
        return np.column_stack([np.cos(theta), np.sin(theta)])
    if n == 3:
        p = max(40, resolution // 4)
        phi = np.linspace(0.0, np.pi / 4.0, p)
        psi = np.linspace(0.0, 2.0 * np.pi, 4 * p, endpoint=False)
        PHI, PSI = np.meshgrid(phi, psi, indexing="ij")
        return np.column_stack(
            [
                (np.sin(PHI) * np.cos(PSI)).ravel(),
                (np.sin(PHI) * np.sin(PSI)).ravel(),
                np.cos(PHI).ravel(),
            ]
        )
    # n == 4: product of a polar grid with a Fibonacci covering of S^2
    p = max(24, resolution // 8)
    phi = np.linspace(0.0, np.pi / 4.0, p)
    count = max(256, 4 * p * p // p)
    k = np.arange(count)
    golden = (1.0 + np.sqrt(5.0)) / 2.0
    z = 1.0 - (2.0 * k + 1.0) / count
    r = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    ang = 2.0 * np.pi * k / golden
    dirs = np.column_stack([r * np.cos(ang), r * np.sin(ang), z])
    grid = np.empty((p * count, 4))
    for i, ph in enumerate(phi):
        grid[i * count : (i + 1) * count, :3] = np.sin(ph) * dirs
        grid[i * count : (i + 1) * count, 3] = np.cos(ph)
    return grid


def _project_rows(X):
    W, t = X[:, :-1], X[:, -1]
    nw = np.linalg.norm(W, axis=1)
    inside = nw <= t
    polar = nw <= -t
    c = 0.5 * (nw + t)
    scale = np.where(inside, 1.0, c / np.maximum(nw, 1e-300))
    scale = np.where(polar, 0.0, scale)
    out = np.empty_like(X)
    out[:, :-1] = W * scale[:, None]
    out[:, -1] = np.where(inside, t, np.where(polar, 0.0, c))
    norms = np.linalg.norm(out, axis=1)
    dead = norms <= 1e-300
    out[dead] = 0.0
    out[dead, -1] = 1.0
    norms[dead] = 1.0
    return out / norms[:, None]


def _zoom_2d(C, theta_lo, theta_hi, points=2001, xatol=1e-12):
    """Repeated zoom grids around the running argmax, down to xatol in the
    angle."""
    best_t, best_v = theta_lo, -np.inf
    lo, hi = theta_lo, theta_hi
    for _ in range(8):
        theta = np.linspace(lo, hi, points)
        X = np.column_stack([np.cos(theta), np.sin(theta)])
        vals = _margins(C, X)
        i = int(np.argmax(vals))
        if vals[i] > best_v:
            best_v, best_t = float(vals[i]), float(theta[i])
        step = (hi - lo) / (points - 1)
        if step <= xatol:
            break
        lo = max(theta_lo, best_t - 2 * step)
        hi = min(theta_hi, best_t + 2 * step)
    return np.array([np.cos(best_t), np.sin(best_t)]), best_v


def _best_on_cap(C, cfg, rng):
    n = C.shape[0]
    if n == 2:
        grid = _cap_grid(2, max(cfg.resolution, 100))
        vals = _margins(C, grid)
        i = int(np.argmax(vals))
        theta = np.pi / 4.0 + (i / (len(grid) - 1)) * (np.pi / 2.0)
        step = (np.pi / 2.0) / (len(grid) - 1)
        x, v = _zoom_2d(C, max(np.pi / 4, theta - 2 * step), min(3 * np.pi / 4, theta + 2 * step))
        if vals[i] > v:
            return grid[i], float(vals[i])
        return x, v
    grid = _cap_grid(n, cfg.resolution)
    vals = _margins(C, grid)
    i = int(np.argmax(vals))
    best_x, best_v = grid[i].copy(), float(vals[i])
    sigma = 0.4
    for _ in range(_REFINE_ROUNDS):
        cloud = _project_rows(best_x[None, :] + sigma * rng.standard_normal((_REFINE_BATCH, n)))
        vals = _margins(C, cloud)
        j = int(np.argmax(vals))
        if vals[j] > best_v:
            best_v, best_x = float(vals[j]), cloud[j].copy()
        sigma *= 0.75
    return best_x, best_v


def brute_force_decide(A, cfg=SamplerConfig(resolution=400)):
    """Exhaustive-search decision for n in {2, 3, 4}.

    Sweeps the cone's unit cap maximizing the membership margin of Ax, and
    symmetrically the alternative system on -A^T; verdicts require the
    winning margin to clear the strict band, otherwise UNDECIDED.
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    if n > 4:
        raise DimensionError("brute force decision is limited to n <= 4")
    tol = DEFAULT_TOL
    rng = np.random.default_rng(cfg.seed)

    x, pv = _best_on_cap(A, cfg, rng)
    scale_p = 1.0 + float(np.linalg.norm(A @ x))
    if pv > tol.eps_strict * scale_p:
        return Certificate(Verdict.SEMIPOSITIVE, "oracle_sweep", pv, primal=x)

    z, dv = _best_on_cap(-A.T, cfg, rng)
    scale_d = 1.0 + float(np.linalg.norm(A.T @ z))
    if dv > tol.eps_strict * scale_d:
        return Certificate(Verdict.NOT_SEMIPOSITIVE, "oracle_sweep_dual", dv, dual=-z)
    return Certificate(Verdict.UNDECIDED, "oracle_sweep", pv)


def brute_force_invariant(A, cfg=SamplerConfig(count=10_000)):
    """Boundary-ray invariance check: every sampled boundary ray must map
    into the cone within the membership band."""
    A = as_square_matrix(A)
    n = A.shape[0]
    if n > 4:
        raise DimensionError("brute force invariance is limited to n <= 4")
    tol = DEFAULT_TOL
    rng = np.random.default_rng(cfg.seed)
    dirs = rng.standard_normal((cfg.count, n - 1))
    norms = np.linalg.norm(dirs, axis=1)
    norms[norms == 0] = 1.0
    dirs /= norms[:, None]
    axes = []
    for i in range(n - 1):
        for sign in (1.0, -1.0):
            d = np.zeros(n - 1)
            d[i] = sign
            axes.append(d)
    rays = np.column_stack([np.vstack([np.array(axes), dirs]), np.ones(cfg.count + len(axes))])
    rays /= np.sqrt(2.0)
    images = rays @ A.T
    margins = SQRT2 * images[:, -1] - np.linalg.norm(images, axis=1)
    bands = tol.eps_mem * (1.0 + np.linalg.norm(images, axis=1))
    return bool(np.all(margins >= -bands) and np.all(images[:, -1] >= -bands))
