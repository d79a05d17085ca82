#!/usr/bin/env python3
"""Benchmark the numba kernels against the vectorized numpy fallbacks.

Times the two hot paths on sweep-sized workloads:

* the steady-state root scan (one call per sweep point), and
* the batched tridiagonal eigensolver (one call per lattice depth).

Run from the repository root:

    python benchmarks/bench_kernels.py [--repeat N]

The first numba call includes JIT compilation; it is timed separately.
"""

import argparse
import math
import time

import numpy as np

from optomott import _kernels as K


def time_fn(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_roots(repeat):
    finesse = math.pi * math.sqrt(0.99) / 0.01
    gamma = 4.0 * finesse**2 / math.pi**2
    phi0 = -0.005 * math.pi
    beta = 0.1 * math.pi
    y_max = math.pi / beta
    n_scan = math.ceil(20 * finesse)
    drives = np.linspace(1e-3, 0.12, 400)

    def run(fn):
        def body():
            for d in drives:
                fn(gamma, phi0, beta, float(d), y_max, n_scan)

        return body

    # compile outside the timed region, then time a full sweep per call
    t0 = time.perf_counter()
    K._steady_roots_numba(gamma, phi0, beta, 0.07, y_max, n_scan)
    compile_s = time.perf_counter() - t0
    t_nb = time_fn(run(K._steady_roots_numba), repeat)
    t_np = time_fn(run(K._steady_roots_numpy), repeat)
    print(f"steady-state roots, 400-point sweep ({n_scan}-sample scans):")
    print(f"  numba  : {t_nb * 1e3:9.2f} ms   (first-call compile {compile_s:.2f} s)")
    print(f"  numpy  : {t_np * 1e3:9.2f} ms")
    print(f"  speedup: {t_np / t_nb:9.2f} x")


def bench_tridiag(repeat):
    m_pw = 16
    n_q = 64
    m = np.arange(-m_pw, m_pw + 1)
    qk = np.arange(1, n_q + 1) * (2.0 / n_q) - 1.0
    depths = np.linspace(2.0, 26.0, 50)
    v0 = K._start_vector(2 * m_pw + 1)
    va = K._start_vector(2 * m_pw + 1, variant=1)

    def run(fn):
        def body():
            for s in depths:
                diag = (qk[:, None] + 2.0 * m[None, :]) ** 2 + s / 2.0
                off = np.full((n_q, 2 * m_pw), -s / 4.0)
                fn(diag, off, 3, v0, va)

        return body

    diag = (qk[:, None] + 2.0 * m[None, :]) ** 2 + 1.0
    off = np.full((n_q, 2 * m_pw), -0.5)
    t0 = time.perf_counter()
    K._tridiag_lowest_numba(diag, off, 3, v0, va)
    compile_s = time.perf_counter() - t0
    t_nb = time_fn(run(K._tridiag_lowest_numba), repeat)
    t_np = time_fn(run(K._tridiag_lowest_numpy), repeat)
    print(f"tridiagonal eigensolver, 50 depths x {n_q} matrices of order {2 * m_pw + 1}:")
    print(f"  numba  : {t_nb * 1e3:9.2f} ms   (first-call compile {compile_s:.2f} s)")
    print(f"  numpy  : {t_np * 1e3:9.2f} ms")
    print(f"  speedup: {t_np / t_nb:9.2f} x")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timing repetitions (best is reported)")
    args = parser.parse_args()
    print(f"active backend: {K.backend()}")
    bench_roots(args.repeat)
    bench_tridiag(args.repeat)


if __name__ == "__main__":
    main()
