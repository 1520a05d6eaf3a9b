"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The numba timings exclude the first (compiling) call. Each row also checks
that both backends return the same answer.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from unitroot import _kernels as K
from unitroot.catalog import cubic
from unitroot.extract import FiberSolver, unit_table
from unitroot.laurent import parse_laurent


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def conv_case(size, q, seed=0):
    rng = np.random.default_rng(seed)
    ia = np.sort(rng.choice(4 * size, size=size, replace=False)).astype(np.int64)
    ib = np.sort(rng.choice(4 * size, size=size, replace=False)).astype(np.int64)
    va = rng.integers(0, q, size=size)
    vb = rng.integers(0, q, size=size)
    n = 8 * size

    def run(kernel):
        return lambda: kernel(ia, va, ib, vb, np.zeros(n, dtype=np.int64), q)

    return run


def multinomial_case(f, p, s, M):
    # central coefficient of f^(p^s - 1); f must have free exponents so the fiber is large
    n = p**s - 1
    solver = FiberSolver(f)
    ks = solver.solutions(n, (0,) * f.d)
    q = p**M
    table = unit_table(p, q)
    coeffs = [c % q for c in solver.coeffs]

    def run(kernel):
        return lambda: kernel(n, ks, coeffs, p, M, table)

    return run, len(ks)


def torus_case(f, p):
    exps, coeffs = f.arrays()
    cm = [int(c) % p for c in coeffs]

    def run(kernel):
        return lambda: kernel(exps, cm, p)

    return run


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not K.numba_available():
        print("numba is not installed; only the numpy backend can be timed")

    cases = []
    for size in (200, 2000):
        cases.append((f"conv_mod {size}x{size} mod 7^6", conv_case(size, 7**6), K.conv_mod_numpy, K.conv_mod_numba))
    square = parse_laurent("t1 + t2 + t1^-1 + t2^-1 + 2*t1*t2^-1", 2)
    for p, s, M in ((7, 3, 3), (11, 3, 3), (5, 5, 4)):
        run, count = multinomial_case(square, p, s, M)
        cases.append((f"multinomial_sum {count} rows p={p} s={s} M={M}", run, K.multinomial_sum_numpy, K.multinomial_sum_numba))
    for p in (101, 401):
        cases.append((f"torus_zeros cubic p={p}", torus_case(cubic(), p), K.torus_zeros_numpy, K.torus_zeros_numba))
    cases.append(("unit_prefix 3^12", lambda k: (lambda: k(3, 3**12)), K.unit_prefix_numpy, K.unit_prefix_numba))

    print(f"{'case':<46}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}  agree")
    for name, run, np_kernel, nb_kernel in cases:
        t_np, r_np = best_of(run(np_kernel), args.repeat)
        if K.numba_available():
            run(nb_kernel)()  # compile
            t_nb, r_nb = best_of(run(nb_kernel), args.repeat)
            agree = bool(np.array_equal(np.asarray(r_np), np.asarray(r_nb)))
            print(f"{name:<46}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}  {agree}")
        else:
            print(f"{name:<46}{t_np:>12.4f}{'-':>12}{'-':>10}  -")


if __name__ == "__main__":
    main()
