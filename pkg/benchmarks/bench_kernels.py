#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Workloads are the two hot paths: orbit labelling over k-tuple spaces
(drives transitivity degrees and orbit relations) and membership-gated
gathers (drives the definable-closure fixpoint).

Usage:
    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --degrees 8 10 12 --arity 5
    python benchmarks/bench_kernels.py --output results.json
"""

import argparse
import json
import time

import numpy as np

from fixlat import _kernels
from fixlat.group import PermutationGroup


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_tuple_orbits(degrees, arity):
    print(f"\nTUPLE ORBIT LABELLING (arity {arity})")
    header = f"{'n':>4} {'space':>10} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    rows = []
    for n in degrees:
        G = PermutationGroup.symmetric(n)
        perms = np.array([g.images for g in G.generators], dtype=np.int64)
        size = n**arity

        def run_numpy():
            images = _kernels._numpy_tuple_images(perms, arity)
            _kernels._numpy_min_labels(images)

        if _kernels._HAVE_NUMBA:
            def run_numba():
                images = _kernels._numba_tuple_images(perms, arity)
                _kernels._numba_min_labels(images)

            run_numba()  # warm the JIT
            t_numba = _time(run_numba)
        else:
            t_numba = float("inf")
        t_numpy = _time(run_numpy)
        speedup = t_numpy / t_numba if t_numba > 0 else 0.0
        print(f"{n:>4} {size:>10} {t_numba:>12.4f} {t_numpy:>12.4f} {speedup:>8.1f}x")
        rows.append({"degree": n, "arity": arity, "space": size,
                     "numba_s": t_numba, "numpy_s": t_numpy, "speedup": speedup})
    return rows


def bench_gather(sizes, width=3):
    print(f"\nMEMBERSHIP-GATED GATHER (width {width})")
    header = f"{'rows':>10} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    rng = np.random.default_rng(0)
    rows = []
    for m in sizes:
        params = rng.integers(0, 64, size=(m, width), dtype=np.int64)
        values = rng.integers(0, 64, size=m, dtype=np.int64)
        member = rng.random(64) < 0.5

        def run_numpy():
            for _ in range(10):
                _kernels._numpy_gather_candidates(params, values, member)

        if _kernels._HAVE_NUMBA:
            def run_numba():
                for _ in range(10):
                    _kernels._numba_gather_candidates(params, values, member)

            run_numba()
            t_numba = _time(run_numba)
        else:
            t_numba = float("inf")
        t_numpy = _time(run_numpy)
        speedup = t_numpy / t_numba if t_numba > 0 else 0.0
        print(f"{m:>10} {t_numba:>12.4f} {t_numpy:>12.4f} {speedup:>8.1f}x")
        rows.append({"rows": m, "numba_s": t_numba, "numpy_s": t_numpy,
                     "speedup": speedup})
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--degrees", type=int, nargs="+", default=[6, 7, 8])
    parser.add_argument("--arity", type=int, default=5)
    parser.add_argument("--gather-sizes", type=int, nargs="+",
                        default=[10_000, 100_000, 1_000_000])
    parser.add_argument("--output", help="write results as JSON")
    args = parser.parse_args()

    print("numba available:", _kernels._HAVE_NUMBA)
    print("active backend: ", _kernels.backend_name())
    results = {
        "numba_available": _kernels._HAVE_NUMBA,
        "tuple_orbits": bench_tuple_orbits(args.degrees, args.arity),
        "gather": bench_gather(args.gather_sizes),
    }
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(results, fh, indent=2)
        print(f"\nresults written to {args.output}")


if __name__ == "__main__":
    main()
