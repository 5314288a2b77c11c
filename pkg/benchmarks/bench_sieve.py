#!/usr/bin/env python3
"""Benchmark the compiled sieve kernel against the pure-Python fallback.

Usage: python benchmarks/bench_sieve.py [--limits 100000,1000000,...]

Both kernels produce identical smallest-prime-factor tables (asserted
here on the smallest limit); the table construction is the one hot loop
in this package, since every sweep is otherwise bound by exact
bigint/Fraction arithmetic.
"""

import argparse
import statistics
import time

from submult import _spfsieve_py
from submult.core import kernel_backend

try:
    from submult import _spfsieve
except ImportError:
    _spfsieve = None


def best_of(fn, limit, repeats=3):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(limit)
        times.append(time.perf_counter() - t0)
    return min(times), statistics.mean(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--limits", default="100000,1000000,5000000,20000000")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    limits = [int(x) for x in args.limits.split(",")]

    print(f"active backend: {kernel_backend()}")
    if _spfsieve is None:
        print("compiled kernel not built; timing the pure-Python kernel only")
    else:
        check = limits[0]
        assert (_spfsieve.spf_sieve(check) == _spfsieve_py.spf_sieve(check)).all()

    header = f"{'limit':>12} {'python (s)':>12}"
    if _spfsieve is not None:
        header += f" {'compiled (s)':>13} {'speedup':>9}"
    print(header)
    for limit in limits:
        py_best, _ = best_of(_spfsieve_py.spf_sieve, limit, args.repeats)
        line = f"{limit:>12} {py_best:>12.4f}"
        if _spfsieve is not None:
            c_best, _ = best_of(_spfsieve.spf_sieve, limit, args.repeats)
            line += f" {c_best:>13.4f} {py_best / c_best:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
