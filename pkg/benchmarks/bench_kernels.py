"""Compare the compiled kernels against the pure numpy fallback.

Times the hot kernels (projection, multi-start ascent, polishing) in
isolation, then the end-to-end decision throughput per backend.

Run:  python benchmarks/bench_kernels.py [--matrices 200] [--repeats 3]
"""

import argparse
import time

import numpy as np

from lorcert import _kernels
from lorcert.engine import DecideOptions, decide


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_project(backend, repeats):
    rng = np.random.default_rng(0)
    xs = rng.standard_normal((20_000, 4))
    mod = _kernels.get_backend(backend)

    def body():
        for x in xs:
            mod.project_cone(x)

    sec = _time(body, repeats)
    return len(xs) / sec


def bench_ascent(backend, repeats):
    rng = np.random.default_rng(1)
    mats = rng.standard_normal((50, 4, 4))
    starts = rng.standard_normal((16, 4))
    mod = _kernels.get_backend(backend)

    def body():
        for C in mats:
            mod.ascent(np.ascontiguousarray(C), starts, 2000, 0.5, np.inf, 250)

    sec = _time(body, repeats)
    return len(mats) / sec


def bench_polish(backend, repeats):
    rng = np.random.default_rng(2)
    mats = rng.standard_normal((200, 4, 4))
    x0 = np.array([0.1, 0.2, 0.1, 0.9])
    mod = _kernels.get_backend(backend)

    def body():
        for C in mats:
            # unreachable finite level: the Polyak step interpolates toward
            # it, so it must not be infinite
            mod.polish(np.ascontiguousarray(C), x0, 1e6, 400)

    sec = _time(body, repeats)
    return len(mats) / sec


def bench_decide(backend, matrices, repeats):
    rng = np.random.default_rng(3)
    mats = [rng.standard_normal((n, n)) for n in (3, 4) for _ in range(matrices // 2)]
    opts = DecideOptions()
    original = _kernels.backend_name()
    _kernels.set_backend(backend)
    try:
        sec = _time(lambda: [decide(A, opts) for A in mats], repeats)
    finally:
        _kernels.set_backend(original)
    return len(mats) / sec


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--matrices", type=int, default=200)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = _kernels.available_backends()
    print(f"backends available: {backends} (active: {_kernels.backend_name()})")
    rows = []
    for backend in backends:
        rows.append(
            (
                backend,
                bench_project(backend, args.repeats),
                bench_ascent(backend, args.repeats),
                bench_polish(backend, args.repeats),
                bench_decide(backend, args.matrices, args.repeats),
            )
        )
    header = f"{'backend':<8} {'project/s':>12} {'ascent/s':>12} {'polish/s':>12} {'decide/s':>12}"
    print(header)
    print("-" * len(header))
    for name, proj, asc, pol, dec in rows:
        print(f"{name:<8} {proj:>12.0f} {asc:>12.1f} {pol:>12.1f} {dec:>12.1f}")
    if len(rows) == 2:
        by_name = {r[0]: r for r in rows}
        if "ext" in by_name and "pure" in by_name:
            for metric, idx in (("ascent", 2), ("polish", 3), ("decide", 4)):
                ratio = by_name["ext"][idx] / by_name["pure"][idx]
                print(f"ext/pure speedup on {metric}: {ratio:.1f}x")


if __name__ == "__main__":
    main()
