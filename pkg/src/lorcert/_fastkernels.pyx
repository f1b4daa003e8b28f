# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled search kernels (see _purekernels for the reference semantics)."""

from libc.math cimport sqrt, INFINITY

import numpy as np

BACKEND = "ext"

cdef double _TINY = 1e-300
cdef double _IMPROVE_RTOL = 1e-12


cdef inline void _project_inplace(double* x, Py_ssize_t n) noexcept nogil:
    cdef double nw = 0.0
    cdef double t = x[n - 1]
    cdef double c, s
    cdef Py_ssize_t i
    for i in range(n - 1):
        nw += x[i] * x[i]
    nw = sqrt(nw)
    if nw <= t:
        return
    if nw <= -t:
        for i in range(n):
            x[i] = 0.0
        return
    c = 0.5 * (nw + t)
    s = c / nw
    for i in range(n - 1):
        x[i] *= s
    x[n - 1] = c


cdef inline void _renormalize_inplace(double* x, Py_ssize_t n) noexcept nogil:
    cdef double nrm = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        nrm += x[i] * x[i]
    nrm = sqrt(nrm)
    if nrm <= _TINY:
        for i in range(n - 1):
            x[i] = 0.0
        x[n - 1] = 1.0
        return
    for i in range(n):
        x[i] /= nrm


def project_cone(x):
    """Euclidean projection onto {(w, t): ||w|| <= t}."""
    out = np.array(x, dtype=np.float64, copy=True)
    cdef double[::1] o = out
    _project_inplace(&o[0], o.shape[0])
    return out


def ascent(C, X0, max_iters, step_init, stop_value, stall_window):
    """Lockstep multi-start projected ascent; see _purekernels.ascent."""
    cdef double[:, ::1] Cm = np.ascontiguousarray(C, dtype=np.float64)
    X_arr = np.array(X0, dtype=np.float64, copy=True, order="C")
    cdef double[:, ::1] X = X_arr
    cdef Py_ssize_t m = X.shape[0]
    cdef Py_ssize_t n = X.shape[1]
    cdef Py_ssize_t iters = max_iters
    cdef Py_ssize_t window = stall_window
    cdef double step0 = step_init
    cdef double stop = stop_value

    best_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] best_x = best_arr
    work = np.empty(n, dtype=np.float64)
    cdef double[::1] y = work
    grad = np.empty(n, dtype=np.float64)
    cdef double[::1] g = grad
    vals_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] vals = vals_arr
    # cached head-row margins for the gradient pass
    W_arr = np.empty((m, n), dtype=np.float64)
    cdef double[:, ::1] Yc = W_arr

    cdef double best_val = -INFINITY
    cdef Py_ssize_t last_improve = 0
    cdef Py_ssize_t it, j, i, k
    cdef double v, nw, alpha, acc
    cdef bint stopped = False

    for j in range(m):
        _project_inplace(&X[j, 0], n)
        _renormalize_inplace(&X[j, 0], n)
    for i in range(n):
        best_x[i] = X[0, i]

    for it in range(1, iters + 1):
        # evaluate every start
        for j in range(m):
            for i in range(n):
                acc = 0.0
                for k in range(n):
                    acc += Cm[i, k] * X[j, k]
                Yc[j, i] = acc
            nw = 0.0
            for i in range(n - 1):
                nw += Yc[j, i] * Yc[j, i]
            vals[j] = Yc[j, n - 1] - sqrt(nw)
        j = 0
        for k in range(1, m):
            if vals[k] > vals[j]:
                j = k
        v = vals[j]
        if v > best_val:
            if v > best_val + _IMPROVE_RTOL * (1.0 + (best_val if best_val >= 0 else -best_val)):
                last_improve = it
            best_val = v
            for i in range(n):
                best_x[i] = X[j, i]
        if best_val >= stop:
            stopped = True
            break
        if it - last_improve >= window:
            stopped = True
            break
        # supergradient step, project, renormalize
        alpha = step0 / sqrt(<double> it)
        for j in range(m):
            nw = 0.0
            for i in range(n - 1):
                nw += Yc[j, i] * Yc[j, i]
            nw = sqrt(nw)
            if nw < _TINY:
                nw = _TINY
            for i in range(n):
                acc = Cm[n - 1, i]
                for k in range(n - 1):
                    acc -= (Yc[j, k] / nw) * Cm[k, i]
                g[i] = acc
            for i in range(n):
                X[j, i] += alpha * g[i]
            _project_inplace(&X[j, 0], n)
            _renormalize_inplace(&X[j, 0], n)

    if not stopped:
        for j in range(m):
            for i in range(n):
                acc = 0.0
                for k in range(n):
                    acc += Cm[i, k] * X[j, k]
                y[i] = acc
            nw = 0.0
            for i in range(n - 1):
                nw += y[i] * y[i]
            v = y[n - 1] - sqrt(nw)
            if v > best_val:
                best_val = v
                for i in range(n):
                    best_x[i] = X[j, i]

    return best_val, best_arr


def polish(C, x0, level, max_iters):
    """Polyak-step refinement toward margin ``level``; see _purekernels.polish."""
    cdef double[:, ::1] Cm = np.ascontiguousarray(C, dtype=np.float64)
    x_arr = np.array(x0, dtype=np.float64, copy=True)
    cdef double[::1] x = x_arr
    cdef Py_ssize_t n = x.shape[0]
    cdef Py_ssize_t iters = max_iters
    cdef double lvl = level

    best_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] best_x = best_arr
    work = np.empty(n, dtype=np.float64)
    cdef double[::1] y = work
    grad = np.empty(n, dtype=np.float64)
    cdef double[::1] g = grad

    cdef double best_val = -INFINITY
    cdef double val, nw, gn2, acc
    cdef Py_ssize_t it, i, k

    _project_inplace(&x[0], n)
    _renormalize_inplace(&x[0], n)
    for i in range(n):
        best_x[i] = x[i]

    for it in range(iters):
        for i in range(n):
            acc = 0.0
            for k in range(n):
                acc += Cm[i, k] * x[k]
            y[i] = acc
        nw = 0.0
        for i in range(n - 1):
            nw += y[i] * y[i]
        nw = sqrt(nw)
        val = y[n - 1] - nw
        if val > best_val:
            best_val = val
            for i in range(n):
                best_x[i] = x[i]
        if best_val >= lvl:
            break
        if nw < _TINY:
            nw = _TINY
        for i in range(n):
            acc = Cm[n - 1, i]
            for k in range(n - 1):
                acc -= (y[k] / nw) * Cm[k, i]
            g[i] = acc
        gn2 = 0.0
        for i in range(n):
            gn2 += g[i] * g[i]
        if gn2 <= _TINY:
            break
        for i in range(n):
            x[i] += ((lvl - val) / gn2) * g[i]
        _project_inplace(&x[0], n)
        _renormalize_inplace(&x[0], n)

    return best_val, best_arr
