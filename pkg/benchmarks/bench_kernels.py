"""Compare the compiled and numpy/pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from forcedrank import kernels
from forcedrank.harness import run_scenario
from forcedrank.kernels import python_kernels
from forcedrank.org import Scenario


def _flags(n, k):
    ranks = np.arange(n)
    return (ranks < k).astype(np.uint8), (ranks >= n - k).astype(np.uint8)


def cases():
    rng = np.random.default_rng(0)
    v = rng.standard_normal((142, 7))
    k = rng.random((142, 7))
    yield "team_extremes 142x7", lambda m: m.team_extremes(v, k, 1)
    v9 = rng.standard_normal((110, 9))
    k9 = rng.random((110, 9))
    yield "team_extremes 110x9", lambda m: m.team_extremes(v9, k9, 1)
    b, t = _flags(12, 2)
    yield "partitions N=12 size 3", lambda m: m.partition_correct_sums(b, t, 3, 1)
    yield "partitions N=12 size 2", lambda m: m.partition_correct_sums(b, t, 2, 1)
    yield "baseline scenario, 100 reps", _end_to_end


def _end_to_end(module):
    # classify looks the kernel up on the package at call time
    saved = kernels.team_extremes
    kernels.team_extremes = module.team_extremes
    try:
        s = run_scenario(Scenario(), 0)
    finally:
        kernels.team_extremes = saved
    return [np.array([s.terminations.error_rate.mean, s.promotions.error_rate.mean])]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    compiled = kernels.compiled_kernels
    print(f"selected backend: {kernels.BACKEND}")
    print(f"{'case':<26}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, fn in cases():
        py = min(timeit.repeat(lambda: fn(python_kernels), number=1, repeat=args.repeat)) * 1e3
        if compiled is None:
            print(f"{name:<26}{py:>14.3f}{'n/a':>14}{'':>10}")
            continue
        if not all(np.array_equal(a, b) for a, b in zip(fn(compiled), fn(python_kernels))):
            raise SystemExit(f"{name}: backends disagree")
        cy = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<26}{py:>14.3f}{cy:>14.3f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
