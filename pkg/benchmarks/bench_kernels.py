#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the circulant eigenvalue evaluation and the Kuramoto rhs/RK4
kernels on both paths and prints the speedups.  Run from the repository
root:

    PYTHONPATH=src python3 benchmarks/bench_kernels.py
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

try:
    from circjoin import _kernels
except ImportError:  # running from a checkout without installation
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))
    from circjoin import _kernels


def best_of(fn, args, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def row(label, numpy_fn, numba_fn, args, repeats):
    t_np = best_of(numpy_fn, args, repeats)
    if numba_fn is None:
        print(f"{label:<34} {t_np * 1e3:>10.3f} ms {'-':>12} {'-':>9}")
        return
    numba_fn(*args)  # compile outside the timed region
    t_nb = best_of(numba_fn, args, repeats)
    print(
        f"{label:<34} {t_np * 1e3:>10.3f} ms {t_nb * 1e3:>9.3f} ms "
        f"{t_np / t_nb:>8.1f}x"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[256, 1024, 2048],
                        help="circulant sizes k to benchmark")
    parser.add_argument("--oscillators", type=int, nargs="+", default=[64, 256, 512],
                        help="network sizes N for the Kuramoto kernels")
    parser.add_argument("--steps", type=int, default=200,
                        help="RK4 steps per trajectory benchmark")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    have = _kernels.HAVE_NUMBA
    print(f"numba available: {have}   (active path: "
          f"{'numba' if _kernels.USING_NUMBA else 'numpy'})")
    print(f"{'kernel':<34} {'numpy':>13} {'numba':>12} {'speedup':>9}")

    rng = np.random.default_rng(0)
    for k in args.sizes:
        c = rng.normal(size=k) + 1j * rng.normal(size=k)
        powers = np.exp(2j * np.pi * np.arange(k) / k)
        row(
            f"circulant eigenvalues k={k}",
            _kernels.circulant_eigenvalues_numpy,
            _kernels.circulant_eigenvalues_numba if have else None,
            (c, powers),
            args.repeats,
        )
    for n in args.oscillators:
        theta = rng.uniform(-np.pi, np.pi, n)
        adj = rng.uniform(0.0, 1.0, (n, n))
        np.fill_diagonal(adj, 0.0)
        omega = np.zeros(n)
        row(
            f"kuramoto rhs N={n}",
            _kernels.kuramoto_rhs_numpy,
            _kernels.kuramoto_rhs_numba if have else None,
            (theta, adj, omega, 0.5),
            args.repeats,
        )
        row(
            f"rk4 trajectory N={n} steps={args.steps}",
            _kernels.rk4_trajectory_numpy,
            _kernels.rk4_trajectory_numba if have else None,
            (theta, adj, omega, 0.5, 0.01, args.steps),
            max(1, args.repeats // 2),
        )


if __name__ == "__main__":
    main()
