"""Compiled kernels vs the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints the best wall time per case for each backend and the speedup.
"""
import argparse
import sys
import timeit

import numpy as np

from nctorus import _fallback

try:
    from nctorus import _kernels
except ImportError:
    _kernels = None


def _skew(rng, n):
    u = np.triu(rng.uniform(-1, 1, (n, n)), 1)
    return u - u.T


def _elem(rng, n, terms, bound):
    return rng.integers(-bound, bound + 1, (terms, n)), rng.normal(size=terms) + 1j * rng.normal(size=terms)


def cases(rng):
    for n, terms in [(2, 10), (2, 100), (3, 50), (4, 30)]:
        am, ac = _elem(rng, n, terms, 10)
        bm, bc = _elem(rng, n, terms, 10)
        B = _skew(rng, n)
        yield f"convolve n={n} {terms}x{terms}", lambda k, a=(am, ac, bm, bc, B): k.convolve(*a, _fallback.TWISTED)
    for n, radius, terms in [(2, 20, 10), (2, 60, 5), (3, 10, 10)]:
        am, ac = _elem(rng, n, terms, 3)
        B = _skew(rng, n)
        yield f"window n={n} R={radius} {terms} terms", lambda k, a=(am, ac, B, radius): k.window_triplets(*a)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _kernels is None:
        print("compiled kernels not built; only the fallback is available", file=sys.stderr)
        return 1
    rng = np.random.default_rng(0)
    print(f"{'case':32s} {'cython [ms]':>12s} {'numpy [ms]':>12s} {'speedup':>8s}")
    for name, fn in cases(rng):
        t_c = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat)) * 1e3
        t_p = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:32s} {t_c:12.3f} {t_p:12.3f} {t_p / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
