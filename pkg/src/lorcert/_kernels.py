"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; the pure numpy
fallback is always available.  ``LORCERT_PURE_PYTHON=1`` in the environment
forces the fallback at import time; ``set_backend`` switches at runtime
(used by the benchmark and the parity tests).
"""

import os

import numpy as np

from . import _purekernels

_BACKENDS = {"pure": _purekernels}
try:
    from . import _fastkernels

    _BACKENDS["ext"] = _fastkernels
except ImportError:  # extension not built
    _fastkernels = None

if os.environ.get("LORCERT_PURE_PYTHON"):
    _active = _BACKENDS["pure"]
else:
    _active = _BACKENDS.get("ext", _BACKENDS["pure"])


def available_backends():
    return sorted(_BACKENDS)


def backend_name():
    return _active.BACKEND


def set_backend(name):
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {available_backends()}")
    _active = _BACKENDS[name]


def get_backend(name):
    """Direct access to one backend module (benchmark/parity use)."""
    return _BACKENDS[name]


def project_cone(x):
    return _active.project_cone(np.ascontiguousarray(x, dtype=np.float64))


def ascent(C, X0, max_iters, step_init, stop_value, stall_window):
    return _active.ascent(
        np.ascontiguousarray(C, dtype=np.float64),
        np.ascontiguousarray(X0, dtype=np.float64),
        int(max_iters),
        float(step_init),
        float(stop_value),
        int(stall_window),
    )


def polish(C, x0, level, max_iters):
    return _active.polish(
        np.ascontiguousarray(C, dtype=np.float64),
        np.ascontiguousarray(x0, dtype=np.float64),
        float(level),
        int(max_iters),
    )
