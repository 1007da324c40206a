#!/usr/bin/env python3
"""Benchmark the hot kernels: numba-jitted vs pure-Python fallback.

The fallback is selected by the environment variable SUSYOSC_DISABLE_NUMBA=1
at import time, so the comparison relaunches this script in a subprocess
with the flag set and merges the two timing tables.

Usage:
    python benchmarks/bench_kernels.py [--repeats 5] [--no-compare]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from susyosc import _kernels

GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(24)


def cases():
    xs_seed = np.linspace(-8.0, 8.0, 2001)
    xs_sigma = np.logspace(-2, 1.5, 20)
    cs = np.maximum(1.0, np.cbrt(xs_sigma))
    xs_herm = np.linspace(-10.0, 10.0, 100_001)
    xs_0f2 = np.linspace(0.0, 30.0, 10_001)
    return {
        "seed_log_series(2001 pts)": lambda: _kernels.seed_log_series(-0.3, xs_seed, True),
        "mellin_density(20 pts)": lambda: _kernels.mellin_density(
            xs_sigma, -0.5, cs, GL_NODES, GL_WEIGHTS, 1e-18, 120
        ),
        "hermite_array(n=20, 1e5 pts)": lambda: _kernels.hermite_array(20, xs_herm),
        "hyp0f2_real_array(1e4 pts)": lambda: _kernels.hyp0f2_real_array(0.5, 1.5, xs_0f2),
    }


def run_benchmarks(repeats):
    results = {}
    for name, fn in cases().items():
        fn()  # warm up (JIT compile on the numba path)
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t0)
        results[name] = min(times)
    return results


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--no-compare", action="store_true", help="time only the current mode")
    parser.add_argument("--json", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args(argv)

    mode = "numba" if _kernels.USING_NUMBA else "python"
    results = run_benchmarks(args.repeats)

    if args.json:
        print(json.dumps(results))
        return 0

    print(f"kernel timings, best of {args.repeats} (mode = {mode})")
    if args.no_compare or not _kernels.USING_NUMBA:
        for name, t in results.items():
            print(f"  {name:32s} {t * 1e3:10.3f} ms")
        return 0

    env = dict(os.environ, SUSYOSC_DISABLE_NUMBA="1")
    proc = subprocess.run(
        [sys.executable, __file__, "--repeats", str(args.repeats), "--json"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    fallback = json.loads(proc.stdout)
    print(f"  {'kernel':32s} {'numba':>10s} {'python':>12s} {'speedup':>9s}")
    for name, t in results.items():
        ft = fallback[name]
        print(f"  {name:32s} {t * 1e3:8.3f} ms {ft * 1e3:9.3f} ms {ft / t:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
