"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from commkernel import _pykernels, kernels
from commkernel.graphs import flower_loop, flower_tail
from commkernel.scalars import MERSENNE_61


def eulerian_cases():
    for name, G, a in [("loop alpha=5", flower_loop(5, 0), 0),
                       ("loop alpha=6", flower_loop(6, 1), 1),
                       ("tail 4+3", flower_tail(4, 3), 7)]:
        src = [u for _, u, _ in G.edges()]
        tar = [v for _, _, v in G.edges()]
        yield name, (G.n, src, tar, a)


def rank_cases():
    rng = np.random.default_rng(0)
    for size in (20, 60, 120):
        rows = [[int(x) for x in rng.integers(0, MERSENNE_61, size)] for _ in range(size)]
        yield f"rank {size}x{size} mod 2^61-1", (rows, MERSENNE_61)


def bench(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if kernels._compiled is None:
        print("compiled extension not available; only the fallback can be timed")
    print(f"{'case':<28}{'python (ms)':>12}{'compiled (ms)':>14}{'speedup':>10}")
    pairs = [(kernels._compiled and kernels._compiled.signed_eulerian_count,
              _pykernels.signed_eulerian_count, eulerian_cases()),
             (kernels._compiled and kernels._compiled.rank_mod_p,
              _pykernels.rank_mod_p, rank_cases())]
    for fast, slow, cases in pairs:
        for name, case in cases:
            t_py = bench(slow, case, args.repeat)
            if fast:
                assert fast(*case) == slow(*case)
                t_c = bench(fast, case, args.repeat)
                print(f"{name:<28}{t_py * 1e3:>12.3f}{t_c * 1e3:>14.3f}{t_py / t_c:>9.1f}x")
            else:
                print(f"{name:<28}{t_py * 1e3:>12.3f}{'-':>14}{'-':>10}")


if __name__ == "__main__":
    main()
