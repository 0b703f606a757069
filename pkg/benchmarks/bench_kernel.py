"""Compare the compiled kernel against the pure-Python fallback.

Usage: python benchmarks/bench_kernel.py [--terms N] [--repeat R]
"""

import argparse
import random
import time

from gmpy2 import mpq

from lvcert import _kernel_py

try:
    from lvcert import _kernel_cy
except ImportError:
    _kernel_cy = None


def rand_terms(rng, nterms, nvars=2, max_expo=8, num_max=999):
    out = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, max_expo) for _ in range(nvars))
        out[e] = mpq(rng.randint(-num_max, num_max) or 1,
                     rng.randint(1, num_max))
    return out


def bench(kernel, pairs, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for a, b in pairs:
            kernel.add_terms(a, b, 1)
    t_add = time.perf_counter() - t0
    t0 = time.perf_counter()
    for _ in range(repeat):
        for a, b in pairs:
            kernel.mul_terms(a, b)
    t_mul = time.perf_counter() - t0
    return t_add, t_mul


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--terms", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=20)
    ap.add_argument("--pairs", type=int, default=10)
    args = ap.parse_args()

    rng = random.Random(0)
    pairs = [(rand_terms(rng, args.terms), rand_terms(rng, args.terms))
             for _ in range(args.pairs)]

    py_add, py_mul = bench(_kernel_py, pairs, args.repeat)
    print("pure python : add %8.3f ms/op   mul %8.3f ms/op"
          % (1000 * py_add / (args.repeat * args.pairs),
             1000 * py_mul / (args.repeat * args.pairs)))
    if _kernel_cy is None:
        print("compiled    : not available (install built the fallback only)")
        return
    cy_add, cy_mul = bench(_kernel_cy, pairs, args.repeat)
    print("compiled    : add %8.3f ms/op   mul %8.3f ms/op"
          % (1000 * cy_add / (args.repeat * args.pairs),
             1000 * cy_mul / (args.repeat * args.pairs)))
    print("speedup     : add %.2fx   mul %.2fx"
          % (py_add / cy_add, py_mul / cy_mul))

    # agreement spot check
    for a, b in pairs[:3]:
        assert _kernel_py.add_terms(a, b, -1) == _kernel_cy.add_terms(a, b, -1)
        assert _kernel_py.mul_terms(a, b) == _kernel_cy.mul_terms(a, b)
    print("agreement   : ok")


if __name__ == "__main__":
    main()
