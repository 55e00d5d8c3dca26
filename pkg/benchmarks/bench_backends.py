"""Benchmark the compiled kernels against the NumPy fallback.

Kernel-level timings run both implementations in-process; the end-to-end
comparison re-runs the worked-example evaluation in a subprocess with
MIXEDPARSEVAL_PURE=1 so backend selection happens at import time, exactly
as a user would see it.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import math
import os
import subprocess
import sys
import time

import numpy as np

from mixedparseval import _kernels_py
from mixedparseval.expr import compile_ast, parse

try:
    from mixedparseval import _kernels_cy
except ImportError:
    _kernels_cy = None


def best_of(repeat, fn, *args):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def fmt(seconds):
    return f"{seconds * 1e3:9.3f} ms"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if _kernels_cy is None:
        print("compiled backend not available; only timing the fallback")
    backends = [("pure-python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))

    xs = np.linspace(-30.0, 30.0, 200_000)
    prog = compile_ast(parse("sech(2*x)*cos(3*x) + exp(-x^2/4)/(1+x^2)"))
    product = ("product", ("family", _kernels_py.FAM_LOGISTIC, 0.0),
               ("family", _kernels_py.FAM_LOG_COS_SQUARED, 0.0))

    rows = [
        ("eval_family sech, 200k pts",
         lambda k: k.eval_family(k.FAM_SECH, 1.0, xs)),
        ("eval_program 7-op expr, 200k pts",
         lambda k: k.eval_program(prog.codes, prog.consts, xs)),
        ("eval_integrand f*g product, 200k pts",
         lambda k: k.eval_integrand(product, xs)),
        ("logistic_direct k<=500000",
         lambda k: k.logistic_direct(3.0, 500_000)),
        ("logistic_series omega=4096",
         lambda k: k.logistic_series(4096.0, 3088, 40)),
    ]

    print(f"{'kernel benchmark':40s}" + "".join(f"{name:>16s}" for name, _ in backends))
    speed = {}
    for label, runner in rows:
        cells = []
        for name, mod in backends:
            t = best_of(args.repeat, runner, mod)
            speed[(label, name)] = t
            cells.append(fmt(t))
        print(f"{label:40s}" + "".join(f"{c:>16s}" for c in cells))
    if _kernels_cy is not None:
        print()
        for label, _ in rows:
            ratio = speed[(label, "pure-python")] / speed[(label, "cython")]
            print(f"{label:40s} speedup x{ratio:.1f}")

    print("\nend-to-end: evaluate_mixed(logistic-tail, log-cos-squared, 1e-10)",
          flush=True)
    snippet = (
        "import time, mixedparseval as mp;"
        "f = mp.make_decaying('logistic-tail');"
        "g = mp.make_periodic('log-cos-squared');"
        "t0 = time.perf_counter();"
        "r = mp.evaluate_mixed(f, g, 1e-10, with_oracle=True);"
        "print(f'  {mp.backend_name():12s} {(time.perf_counter()-t0)*1e3:9.3f} ms"
        "   value={r.value.real:.12f}')"
    )
    for env_val in ("", "1"):
        env = dict(os.environ)
        if env_val:
            env["MIXEDPARSEVAL_PURE"] = env_val
        else:
            env.pop("MIXEDPARSEVAL_PURE", None)
        subprocess.run([sys.executable, "-c", snippet], env=env, check=True)


if __name__ == "__main__":
    main()
