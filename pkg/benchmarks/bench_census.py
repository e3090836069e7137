"""Time the compiled census kernel against the pure-Python one.

    python benchmarks/bench_census.py            # default family rows
    python benchmarks/bench_census.py --quick    # small rows only
"""

import argparse
import time

from qborel import kernels
from qborel.census import FamilySpec, enumerate_structures, family_quiver, kernel_input
from qborel.quiver import enumerate_basis

ROWS = [(1, 1, 1), (2, 1, 1), (1, 2, 2), (2, 2, 1), (1, 3, 2), (3, 2, 1), (1, 4, 2), (4, 2, 1)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def kernel_only(fn, A):
    n = len(A.vertices)
    inp = kernel_input(A)
    return lambda: [fn(n, *inp, first) for first in range(n)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="only rows with at most 6 vertices")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    if kernels.compiled_census_chunk is None:
        print("compiled kernel unavailable; only the Python kernel will be timed")
    rows = [r for r in ROWS if not args.quick or sum(r) + 1 <= 6]
    print("end to end is enumerate_structures; kernel is the per-order loop alone")
    print(f"{'quiver':<12}{'orders':>8}{'classes':>9}{'python s':>11}{'compiled s':>12}{'speedup':>9}"
          f"{'kernel py':>11}{'kernel c':>10}{'speedup':>9}")
    for row in rows:
        A = enumerate_basis(family_quiver(FamilySpec(*row)))
        n = len(A.vertices)
        orders = 1
        for k in range(2, n + 1):
            orders *= k
        t_py, c_py = best_of(lambda: enumerate_structures(A, threads=args.threads, backend="python"), args.repeat)
        if kernels.compiled_census_chunk is not None:
            t_c, c_c = best_of(lambda: enumerate_structures(A, threads=args.threads, backend="compiled"), args.repeat)
            assert [k.digest for k in c_c.classes] == [k.digest for k in c_py.classes]
            speed = f"{t_py / t_c:8.1f}x"
            tc = f"{t_c:12.3f}"
        else:
            speed, tc = f"{'-':>9}", f"{'-':>12}"
        k_py, _ = best_of(kernel_only(kernels.python_census_chunk, A), args.repeat)
        if kernels.compiled_census_chunk is not None:
            k_c, _ = best_of(kernel_only(kernels.compiled_census_chunk, A), args.repeat)
            ks = f"{k_c:10.4f}{k_py / k_c:8.1f}x"
        else:
            ks = f"{'-':>10}{'-':>9}"
        label = "Q(%d,%d,%d)" % row
        print(f"{label:<12}{orders:>8}{c_py.num_classes:>9}{t_py:>11.3f}{tc}{speed}{k_py:>11.3f}{ks}")


if __name__ == "__main__":
    main()
