"""Scalar golden-section search with absolute-tolerance termination.

The objectives refined here (cap-arc margins, extreme eigenvalue curves)
are piecewise smooth with maxima that can sit at kinks, so the bracket must
shrink to an absolute width ~1e-12 — below the sqrt(eps)*|x| floor that
smooth-function minimizers impose.
"""

import math

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_MAX_ITERS = 200


def golden_max(f, lo, hi, xatol=1e-12):
    """Maximize a unimodal f on [lo, hi]; returns (argmax, max)."""
    a, b = float(lo), float(hi)
    if not b > a:
        return a, f(a)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(_MAX_ITERS):
        if (b - a) <= xatol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def golden_min(f, lo, hi, xatol=1e-12):
    """Minimize a unimodal f on [lo, hi]; returns (argmin, min)."""
    x, v = golden_max(lambda t: -f(t), lo, hi, xatol)
    return x, -v
