#!/usr/bin/env python3
"""Benchmark the compiled series kernel against the pure-Python fallback.

Run from the repository root after an editable install:

    python benchmarks/bench_kernel.py

Three workloads exercise the kernel the way the verification suites do:
plain theta-constant values, order-5 moving-argument jets, and a composite
"solution-family evaluation" that mirrors one grid point of the curve
suites.  Both backends are also checked against each other for agreement.
"""

import time

import thetakit._core as compiled  # noqa: F401  (import failure = not built)
import thetakit._series_py as pure


def bench(fn, args_list, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for args in args_list:
            fn(*args)
    return (time.perf_counter() - t0) / repeat


def main():
    taus = [complex(0.05 * k - 0.4, 0.9 + 0.015 * k) for k in range(40)]
    value_args = [(0, 0, 0j, 0.3 + 0.1j, 1.0, 0.0, t, 0, 0, 1e-17, 3, 4096)
                  for t in taus]
    jet_args = [(1, 1, 1.0 / 6.0, 0j, 1.0, 0.0, t, 1, 5, 1e-17, 3, 4096)
                for t in taus]
    ded_args = [(t, 5, 1e-17, 3, 4096) for t in taus]

    for label, args in (("theta value", value_args),
                        ("theta jet (order 5, z-derivative)", jet_args)):
        ours = [compiled.theta_sums(*a) for a in args]
        ref = [pure.theta_sums(*a) for a in args]
        worst = max(abs(x - y) for o, r in zip(ours, ref)
                    for x, y in zip(o, r))
        tc = bench(compiled.theta_sums, args, 50)
        tp = bench(pure.theta_sums, args, 50)
        print(f"{label:38s} compiled {tc * 1e3:7.2f} ms   "
              f"pure {tp * 1e3:7.2f} ms   speedup x{tp / tc:5.1f}   "
              f"max deviation {worst:.1e}")

    tc = bench(compiled.dedekind_sums, ded_args, 50)
    tp = bench(pure.dedekind_sums, ded_args, 50)
    print(f"{'pentagonal jet (order 5)':38s} compiled {tc * 1e3:7.2f} ms   "
          f"pure {tp * 1e3:7.2f} ms   speedup x{tp / tc:5.1f}")

    # composite: one Picard curve residual per grid point, both backends
    import importlib
    import os
    import subprocess
    import sys

    code = (
        "import time, thetakit\n"
        "from thetakit.catalog import load_catalog, verify_entry\n"
        "cat = load_catalog()\n"
        "t0 = time.perf_counter()\n"
        "for _ in range(5):\n"
        "    verify_entry(cat['g5'])\n"
        "print(thetakit.KERNEL_BACKEND, (time.perf_counter()-t0)/5)\n")
    for env_val in ("0", "1"):
        env = dict(os.environ, THETAKIT_PURE=env_val)
        out = subprocess.run([sys.executable, "-c", code], env=env,
                             capture_output=True, text=True, check=True)
        backend, secs = out.stdout.split()
        print(f"{'genus-5 curve suite (8 points)':38s} {backend:8s} "
              f"{float(secs) * 1e3:7.2f} ms")


if __name__ == "__main__":
    main()
