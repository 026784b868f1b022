"""Compare the compiled and pure-Python integration kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--max-n 10]

Workload: integrate every hat of the default C_c family against the dyadic
sawtooth measures (2**(n+1) density pieces), which is the hot loop of a
classification run.
"""

import argparse
import timeit

from measurekit import TestFamily, kernels
from measurekit.corpus import example_3_8, example_3_10


def workload(backend, measures, family):
    for mu in measures:
        starts = [a for a, _, _ in mu.density]
        ends = [b for _, b, _ in mu.density]
        values = [v for *_, v in mu.density]
        backend.cumulative_masses(starts, ends, values)
        for f in family.functions:
            backend.density_poly_integral(starts, ends, values, f.breakpoints, f.pieces,
                                          f.left_tail, f.right_tail)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--max-n", type=int, default=10)
    args = parser.parse_args()

    family = TestFamily.cc()
    print(f"{'n':>3} {'pieces':>7} " + " ".join(f"{name:>12}" for name in sorted(kernels.BACKENDS))
          + ("  speedup" if len(kernels.BACKENDS) > 1 else ""))
    for n in range(4, args.max_n + 1, 2):
        measures = [example_3_8(n), example_3_10(n)]
        times = {}
        for name, backend in sorted(kernels.BACKENDS.items()):
            t = timeit.Timer(lambda: workload(backend, measures, family))
            times[name] = min(t.repeat(repeat=args.repeat, number=1))
        pieces = sum(len(m.density) for m in measures)
        row = f"{n:>3} {pieces:>7} " + " ".join(f"{times[k] * 1e3:>10.2f}ms" for k in sorted(times))
        if "compiled" in times:
            row += f"  {times['python'] / times['compiled']:>6.2f}x"
        print(row)
    if "compiled" not in kernels.BACKENDS:
        print("compiled extension not available; only the Python backend was timed")


if __name__ == "__main__":
    main()
