"""Compare the compiled and pure-Python weighting-sum kernels.

Usage: python benchmarks/bench_weightsum.py [--repeat N]
"""
import argparse
import time

from tautring import dr
from tautring._weightsum_py import weighting_sums as py_sums

try:
    from tautring._weightsum import weighting_sums as cy_sums
except ImportError:
    cy_sums = None

# (name, nverts, edges_u, edges_v, residues, r, patterns)
CASES = [
    ("theta graph, r=40", 2, [0, 0, 0], [1, 1, 1], [3, -3], 40,
     [[1, 1, 1], [2, 1, 1], [1, 2, 2], [3, 1, 1]]),
    ("two loops + bridge, r=60", 2, [0, 0, 1], [0, 1, 1], [1, -1], 60,
     [[1, 1, 1], [2, 2, 1], [1, 1, 3]]),
    ("K4 skeleton, r=20", 4, [0, 0, 0, 1, 1, 2], [1, 2, 3, 2, 3, 3], [2, -1, 0, -1], 20,
     [[1] * 6, [2, 1, 1, 1, 1, 1]]),
]


def timeit(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':28s} {'python [s]':>11s} {'cython [s]':>11s} {'speedup':>8s}")
    for name, *kargs in CASES:
        tp, rp = timeit(py_sums, kargs, args.repeat)
        if cy_sums is None:
            print(f"{name:28s} {tp:11.4f} {'n/a':>11s} {'n/a':>8s}")
            continue
        tc, rc = timeit(cy_sums, kargs, args.repeat)
        assert rp == rc, name
        print(f"{name:28s} {tp:11.4f} {tc:11.4f} {tp / tc:8.1f}x")

    # end to end: a genus-2 DR cycle with three markings with either kernel
    for label, fn in (("python", py_sums), ("cython", cy_sums)):
        if fn is None:
            continue
        dr.weighting_sums = fn
        dr._dr_terms.cache_clear()
        t = time.perf_counter()
        dr.DR_cycle(2, (3, 2, -5))
        print(f"DR_cycle(2, (3,2,-5)) with {label} kernel: {time.perf_counter() - t:.2f} s")


if __name__ == "__main__":
    main()
