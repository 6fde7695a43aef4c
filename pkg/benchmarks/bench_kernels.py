"""Benchmark the compiled kernels against the pure-Python fallback.

Micro-benchmarks call both implementations directly on identical inputs and
check that the results agree (they must -- both are exact).  The end-to-end
section runs a word-evaluation workload in subprocesses so each side goes
through the normal ``periplectic.kernels`` import-time dispatch
(``PERIPLECTIC_PURE=1`` selects the fallback).

Usage:  python3 benchmarks/bench_kernels.py [--repeat N] [--seed S] [--json]
"""

import argparse
import copy
import json
import os
import random
import subprocess
import sys
import time
from fractions import Fraction

from periplectic import _kernels_py

try:
    from periplectic import _kernels
except ImportError:
    _kernels = None


def _timeit(fn, args_factory, repeat):
    best = None
    for _ in range(repeat):
        args = args_factory()
        t0 = time.perf_counter()
        out = fn(*args)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def _rand_fraction(rng):
    num = rng.choice([-3, -2, -1, 1, 2, 3, 5])
    den = rng.choice([1, 1, 1, 2, 3, 4])
    return Fraction(num, den)


def make_workloads(seed):
    rng = random.Random(seed)

    dim = 4096
    cols = {}
    for j in range(dim):
        if rng.random() < 0.9:
            fan = rng.randint(1, 18)
            cols[j] = [(rng.randrange(dim), rng.choice([-2, -1, 1, 2]))
                       for _ in range(fan)]
    vec = {j: rng.choice([-1, 1, 2]) for j in rng.sample(range(dim), dim // 2)}

    acc_proto = {i: _rand_fraction(rng) for i in rng.sample(range(40000), 20000)}
    src = {i: _rand_fraction(rng) for i in rng.sample(range(40000), 20000)}

    n = 400
    a_rows = [{j: rng.choice([-1, 1]) for j in rng.sample(range(n), n // 20)}
              for _ in range(n)]
    b_rows = [{j: rng.choice([-1, 1, 2]) for j in rng.sample(range(n), n // 20)}
              for _ in range(n)]

    bar_rows = [[rng.randint(-9, 9) for _ in range(160)] for _ in range(120)]

    # echelon set whose rows chain into each other, so one reduction cascades
    ncols = 2000
    pivot_cols = sorted(rng.sample(range(ncols), 800))
    pivots = {}
    for pos, j in enumerate(pivot_cols):
        row = {j: Fraction(1)}
        later = pivot_cols[pos + 1:]
        for k in rng.sample(later, min(40, len(later))):
            row[k] = _rand_fraction(rng)
        pivots[j] = row
    red_row = {j: _rand_fraction(rng)
               for j in rng.sample(pivot_cols[:200], 100)}

    return {
        "apply_columns": lambda: (cols, dict(vec)),
        "combine_scaled": lambda: (dict(acc_proto), src, Fraction(3, 2)),
        "matmul_dicts": lambda: (a_rows, b_rows),
        "bareiss_rank": lambda: (copy.deepcopy(bar_rows), 160),
        "reduce_against": lambda: (pivots, dict(red_row)),
    }


def run_micro(repeat, seed):
    results = []
    for name, factory in make_workloads(seed).items():
        py_fn = getattr(_kernels_py, name)
        t_py, out_py = _timeit(py_fn, factory, repeat)
        row = {"kernel": name, "python_s": t_py}
        if _kernels is not None:
            cy_fn = getattr(_kernels, name)
            t_cy, out_cy = _timeit(cy_fn, factory, repeat)
            if out_cy != out_py:
                raise AssertionError(f"{name}: implementations disagree")
            row["cython_s"] = t_cy
            row["speedup"] = t_py / t_cy if t_cy else float("inf")
        results.append(row)
    return results


END_TO_END = r"""
import random, time
from periplectic import kernels
from periplectic.tensoraction import TensorSpaceSpec, S, E, Y, evaluate_word
from periplectic.affine import normalize, tensor_image
alphabet = [S(1), E(1), Y(1), Y(2)]
rng = random.Random(7)
words = [[rng.choice(alphabet) for _ in range(rng.randint(1, 5))]
         for _ in range(40)]
spec = TensorSpaceSpec(3, 2, 2)
t0 = time.perf_counter()
for w in words:
    assert tensor_image(normalize(w, 2), spec) == evaluate_word(w, spec)
print(f"{kernels.IMPLEMENTATION} {time.perf_counter() - t0:.3f}")
"""


def run_end_to_end():
    out = []
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("PERIPLECTIC_PURE", None)
        if pure:
            env["PERIPLECTIC_PURE"] = "1"
        proc = subprocess.run([sys.executable, "-c", END_TO_END],
                              capture_output=True, text=True, env=env)
        if proc.returncode != 0:
            raise RuntimeError(proc.stderr)
        impl, secs = proc.stdout.split()
        out.append({"implementation": impl, "seconds": float(secs)})
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="repetitions per micro-benchmark (best is reported)")
    ap.add_argument("--seed", type=int, default=20260825)
    ap.add_argument("--json", action="store_true", dest="as_json")
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args(argv)

    if _kernels is None:
        print("note: compiled kernels not importable; timing fallback only",
              file=sys.stderr)

    micro = run_micro(args.repeat, args.seed)
    e2e = None if args.skip_end_to_end else run_end_to_end()

    if args.as_json:
        print(json.dumps({"micro": micro, "end_to_end": e2e}, indent=2))
        return

    width = max(len(r["kernel"]) for r in micro)
    print(f"{'kernel':<{width}}  {'python':>9}  {'cython':>9}  speedup")
    for r in micro:
        cy = f"{r['cython_s']:9.4f}" if "cython_s" in r else "      n/a"
        sp = f"{r['speedup']:6.1f}x" if "speedup" in r else "    n/a"
        print(f"{r['kernel']:<{width}}  {r['python_s']:9.4f}  {cy}  {sp}")
    if e2e:
        print()
        print("end-to-end (normalize + both evaluation routes, 40 words):")
        for row in e2e:
            print(f"  {row['implementation']:<8} {row['seconds']:.3f}s")


if __name__ == "__main__":
    main()
