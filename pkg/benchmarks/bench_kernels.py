"""Throughput comparison of the compiled and pure-numpy path kernels.

Run twice, once per backend:

    FRACSTABLE_BACKEND=numba  python3 benchmarks/bench_kernels.py
    FRACSTABLE_BACKEND=numpy  python3 benchmarks/bench_kernels.py

or let the script spawn both via --both.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np


def run_bench(n_paths=4096, n_steps=4096, repeats=5):
    from fracstable._kernels import BACKEND, reflected_terminal, walk_laplace

    rng = np.random.default_rng(12345)
    inc = rng.standard_normal((n_paths, n_steps))

    reflected_terminal(inc[:8], True)   # warm-up / JIT compile
    walk_laplace(inc[:8], 0.5)

    best_r = min(_timed(lambda: reflected_terminal(inc, True))
                 for _ in range(repeats))
    best_w = min(_timed(lambda: walk_laplace(inc, 0.5))
                 for _ in range(repeats))
    cells = n_paths * n_steps
    print("backend=%s  paths=%d steps=%d" % (BACKEND, n_paths, n_steps))
    print("  reflected_terminal: %7.1f ms  (%6.1f M increments/s)"
          % (best_r * 1e3, cells / best_r / 1e6))
    print("  walk_laplace      : %7.1f ms  (%6.1f M increments/s)"
          % (best_w * 1e3, cells / best_w / 1e6))


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--paths", type=int, default=4096)
    ap.add_argument("--steps", type=int, default=4096)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--both", action="store_true",
                    help="run both backends in subprocesses")
    args = ap.parse_args()
    if args.both:
        for be in ("numba", "numpy"):
            env = dict(os.environ, FRACSTABLE_BACKEND=be)
            subprocess.run([sys.executable, __file__,
                            "--paths", str(args.paths),
                            "--steps", str(args.steps),
                            "--repeats", str(args.repeats)], env=env,
                           check=True)
    else:
        run_bench(args.paths, args.steps, args.repeats)


if __name__ == "__main__":
    main()
