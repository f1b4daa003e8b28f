import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_orthogonal(n, rng):
    """Haar-distributed orthogonal matrix via sign-fixed QR."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def cone_sample(n, rng, count=1):
    """Quick in-cone samples for tests that just need cone members."""
    t = 1.0 - rng.random(count)
    dirs = rng.standard_normal((count, n - 1))
    norms = np.linalg.norm(dirs, axis=1)
    norms[norms == 0] = 1.0
    dirs /= norms[:, None]
    radii = t * rng.random(count) ** (1.0 / (n - 1))
    out = np.column_stack([dirs * radii[:, None], t])
    return out[0] if count == 1 else out
