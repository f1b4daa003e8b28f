"""Pure numpy implementation of the search kernels.

Same contract as the compiled extension ``_fastkernels``: closed-form
second-order-cone projection, lockstep multi-start projected supergradient
ascent of the cone margin x -> (Cx)_n - ||(Cx)_{1:n-1}||, and a Polyak
polishing loop that pushes a single iterate toward a target margin level.
"""

import numpy as np

BACKEND = "pure"

_TINY = 1e-300
_IMPROVE_RTOL = 1e-12


def project_cone(x):
    """Euclidean projection onto {(w, t): ||w|| <= t}."""
    x = np.asarray(x, dtype=np.float64)
    w, t = x[:-1], x[-1]
    nw = float(np.linalg.norm(w))
    if nw <= t:
        return x.copy()
    if nw <= -t:
        return np.zeros_like(x)
    c = 0.5 * (nw + t)
    out = np.empty_like(x)
    out[:-1] = w * (c / nw)
    out[-1] = c
    return out


def _row_norms(W):
    return np.sqrt(np.einsum("ij,ij->i", W, W))


def _project_rows(X):
    W, t = X[:, :-1], X[:, -1]
    nw = _row_norms(W)
    inside = nw <= t
    if inside.all():  # common once iterates settle inside the cone
        return X
    polar = nw <= -t
    c = 0.5 * (nw + t)
    scale = np.where(inside, 1.0, c / np.maximum(nw, _TINY))
    scale = np.where(polar, 0.0, scale)
    out = np.empty_like(X)
    out[:, :-1] = W * scale[:, None]
    out[:, -1] = np.where(inside, t, np.where(polar, 0.0, c))
    return out


def _renormalize_rows(X):
    n = X.shape[1]
    norms = _row_norms(X)
    dead = norms <= _TINY
    if np.any(dead):
        X = X.copy()
        X[dead] = 0.0
        X[dead, n - 1] = 1.0
        norms = np.where(dead, 1.0, norms)
    return X / norms[:, None]


def _margins(C, X):
    Y = X @ C.T
    W, t = Y[:, :-1], Y[:, -1]
    nw = _row_norms(W)
    return t - nw, W, nw


def ascent(C, X0, max_iters, step_init, stop_value, stall_window):
    """Multi-start projected ascent of x -> (Cx)_n - ||(Cx)_{1:n-1}||.

    All starts are stepped in lockstep on the unit-sphere cap of the cone
    (project onto the cone, then renormalize, every step) with diminishing
    steps step_init/sqrt(iter).  Returns (best value, best unit vector).
    Stops early once the best value reaches ``stop_value`` or no start has
    improved the best value for ``stall_window`` iterations.
    """
    C = np.asarray(C, dtype=np.float64)
    X = _renormalize_rows(_project_rows(np.asarray(X0, dtype=np.float64)))
    head, last = C[:-1], C[-1]
    best_val = -np.inf
    best_x = X[0].copy()
    last_improve = 0
    for it in range(1, int(max_iters) + 1):
        vals, W, nw = _margins(C, X)
        j = int(np.argmax(vals))
        v = float(vals[j])
        if v > best_val:
            if v > best_val + _IMPROVE_RTOL * (1.0 + abs(best_val)):
                last_improve = it
            best_val = v
            best_x = X[j].copy()
        if best_val >= stop_value:
            break
        if it - last_improve >= stall_window:
            break
        U = W / np.maximum(nw, _TINY)[:, None]
        G = last[None, :] - U @ head
        X = _renormalize_rows(_project_rows(X + (step_init / np.sqrt(it)) * G))
    else:
        vals, _, _ = _margins(C, X)
        j = int(np.argmax(vals))
        if float(vals[j]) > best_val:
            best_val = float(vals[j])
            best_x = X[j].copy()
    return best_val, best_x


def polish(C, x0, level, max_iters):
    """Polyak-step refinement toward margin ``level`` from a single iterate."""
    C = np.asarray(C, dtype=np.float64)
    x = _renormalize_rows(_project_rows(np.asarray(x0, dtype=np.float64)[None, :]))[0]
    head, last = C[:-1], C[-1]
    best_val = -np.inf
    best_x = x.copy()
    for _ in range(int(max_iters)):
        y = C @ x
        w = y[:-1]
        nw = float(np.linalg.norm(w))
        val = float(y[-1]) - nw
        if val > best_val:
            best_val = val
            best_x = x.copy()
        if best_val >= level:
            break
        g = last - (w / max(nw, _TINY)) @ head
        gn2 = float(g @ g)
        if gn2 <= _TINY:
            break
        x = x + ((level - val) / gn2) * g
        x = _renormalize_rows(_project_rows(x[None, :]))[0]
    return best_val, best_x
