"""Compare the numba kernels with their numpy fallbacks.

    python benchmarks/bench_kernels.py [--sizes 20 60 120] [--repeat 5]

A second section times a whole workload (the oracle cross-check on the
corpus) in a subprocess with and without GENTLE_LAB_DISABLE_NUMBA=1.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from gentle_lab import _kernels as K


def best_of(fn, arg, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(arg)
        times.append(time.perf_counter() - t)
    return min(times)


def inputs(n, rng):
    # module matrices are sparse with entries in {-1, 0, 1}
    sparse = np.where(rng.random((n, n)) < 3.0 / n, rng.choice([-1, 1], size=(n, n)), 0)
    dense = rng.integers(-3, 4, size=(n, n))
    adj = rng.random((n, n)) < 2.0 / n
    W = np.where(rng.random((n, n)) < 3.0 / n, rng.choice([-1, 1], size=(n, n)), K.INF_WEIGHT).astype(np.int64)
    return {"rref": sparse, "rref_dense": dense, "bool_closure": adj, "minplus": W}


def kernel_table(sizes, repeat):
    rng = np.random.default_rng(0)
    pairs = {
        "rref": (K.rref_int, K.rref_int_numpy),
        # dense entries soon leave the int64 window and the numba path bails out
        "rref_dense": (K.rref_int, K.rref_int_numpy),
        "bool_closure": (K.bool_closure, K.bool_closure_numpy),
        "minplus": (K.minplus_closure, K.minplus_closure_numpy),
    }
    if not K.USE_NUMBA:
        print("numba disabled; both columns run the numpy path")
    # compile once outside the timings
    warm = inputs(4, rng)
    for name, (fast, _) in pairs.items():
        fast(warm[name])
    print(f"{'kernel':<14}{'n':>6}{'numba ms':>12}{'numpy ms':>12}{'ratio':>9}")
    for n in sizes:
        data = inputs(n, rng)
        for name, (fast, slow) in pairs.items():
            arg = data[name]
            if name.startswith("rref"):
                slow_arg = arg.astype(object)
            else:
                slow_arg = arg
            tf = best_of(fast, arg, repeat)
            ts = best_of(slow, slow_arg, repeat)
            print(f"{name:<14}{n:>6}{tf * 1e3:>12.3f}{ts * 1e3:>12.3f}{ts / tf:>9.1f}")


WORKLOAD = """
import time
from gentle_lab.corpus import NAMES, load
from gentle_lab.generator import random_sample
from gentle_lab.strings_bands import enumerate_strings
from gentle_lab.replinalg import resolve_pd, resolve_id, string_module
from gentle_lab.derived_cat import homotopy_band_exists
t = time.perf_counter()
for bq in [load(x) for x in NAMES] + random_sample(20, seed=3):
    homotopy_band_exists(bq)
    for s in enumerate_strings(bq, 6):
        M = string_module(bq, s)
        resolve_pd(bq, M, 16)
        resolve_id(bq, M, 16)
print(time.perf_counter() - t)
"""


def workload(repeat):
    out = {}
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, GENTLE_LAB_DISABLE_NUMBA=flag)
        runs = []
        for _ in range(repeat):
            res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True,
                                 check=True)
            runs.append(float(res.stdout.strip()))
        out[label] = min(runs)
    print(f"\noracle workload: numba {out['numba']:.2f}s  numpy {out['numpy']:.2f}s  "
          f"ratio {out['numpy'] / out['numba']:.2f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 30, 60, 120])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-workload", action="store_true")
    args = ap.parse_args()
    kernel_table(args.sizes, args.repeat)
    if not args.skip_workload:
        workload(min(args.repeat, 3))


if __name__ == "__main__":
    main()
