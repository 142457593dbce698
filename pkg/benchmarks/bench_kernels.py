"""Time the numba kernels against their numpy counterparts.

    python benchmarks/bench_kernels.py --nvars 5 --degree 12 --gens 40
"""

import argparse
import time

import numpy as np

from macaulay import _kernels as k


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--nvars", type=int, default=5)
    parser.add_argument("--degree", type=int, default=12)
    parser.add_argument("--gens", type=int, default=40)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    gens = rng.integers(0, 4, size=(args.gens, args.nvars), dtype=np.int64)
    monos = k.monomials_of_degree_numpy(args.nvars, args.degree)
    print(f"backend in use: {k.BACKEND}; {monos.shape[0]} monomials, {args.gens} generators")

    cases = [
        ("monomials_of_degree",
         lambda: k.monomials_of_degree_numpy(args.nvars, args.degree),
         lambda: k.monomials_of_degree(args.nvars, args.degree)),
        ("divisible_mask",
         lambda: k.divisible_mask_numpy(gens, monos),
         lambda: k.divisible_mask(gens, monos)),
        ("minimal_rows",
         lambda: k.minimal_rows_numpy(gens),
         lambda: k.minimal_rows(gens)),
    ]
    print(f"{'kernel':<22}{'numpy (ms)':>12}{k.BACKEND + ' (ms)':>14}{'speedup':>10}")
    for name, ref, fast in cases:
        if not np.array_equal(ref(), fast()):  # also warms up the JIT
            raise SystemExit(f"{name}: backends disagree")
        t_ref = best_of(ref, args.repeat)
        t_fast = best_of(fast, args.repeat)
        print(f"{name:<22}{t_ref * 1e3:>12.2f}{t_fast * 1e3:>14.2f}{t_ref / t_fast:>9.1f}x")


if __name__ == "__main__":
    main()
