"""Compare the compiled and pure-Python finite-field kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Times ``rref_inplace`` on random square matrices and ``batch_rank`` on a
stack of small matrices (the shapes the automorphism and subrepresentation
scans produce), and an end-to-end Hall product, under each backend.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from hallforge import _backend


def kernel_timings(name, repeat):
    k = _backend.load(name)
    rng = np.random.default_rng(0)
    rows = []
    for p, n in [(2, 16), (3, 16), (2, 48), (5, 48)]:
        mats = [rng.integers(0, p, size=(n, n)).astype(np.int64) for _ in range(repeat)]
        t = timeit.timeit(lambda: [k.rref_inplace(m.copy(), p) for m in mats], number=1) / repeat
        rows.append((f"rref {n}x{n} p={p}", t))
    for p, count, n in [(2, 4096, 4), (3, 4096, 6)]:
        stack = rng.integers(0, p, size=(count, n, n)).astype(np.int64)
        t = timeit.timeit(lambda: k.batch_rank(stack.copy(), p), number=repeat) / repeat
        rows.append((f"batch_rank {count}x{n}x{n} p={p}", t))
    return rows


END_TO_END = (
    "import time; from hallforge.catalog import Catalog; from hallforge.quiver import linear_quiver; "
    "from hallforge import verify as V; t=time.perf_counter(); "
    "V.check_dual_algorithm(Catalog(linear_quiver(2), 3), (2, 2)); print(time.perf_counter()-t)"
)


def end_to_end(pure):
    env = dict(os.environ)
    env["HALLFORGE_PURE_PYTHON"] = "1" if pure else "0"
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    try:
        _backend.load("cython")
        names = ["cython", "python"]
    except ImportError:
        print("compiled kernels not built; timing the Python backend only")
        names = ["python"]
    results = {name: kernel_timings(name, args.repeat) for name in names}
    print(f"{'kernel':<32}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for i, (label, _) in enumerate(results[names[0]]):
        times = [results[n][i][1] for n in names]
        line = f"{label:<32}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            line += f"{times[1] / times[0]:>11.1f}x"
        print(line)
    times = [end_to_end(pure=(n == "python")) for n in names]
    print(f"{'dual-algorithm check A2 q=3':<32}" + "".join(f"{t:>11.2f}s" for t in times))


if __name__ == "__main__":
    main()
