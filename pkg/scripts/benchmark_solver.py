"""Hensel solver versus brute force on random instances.

    python3 scripts/benchmark_solver.py --p 13 --e 3 --n 100
"""

import argparse
import random
import time

from dlambert.solver import DwpInstance, brute_force, solve_all


def timed(fn, insts, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        for inst in insts:
            fn(inst)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=13)
    ap.add_argument("--e", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1013)
    args = ap.parse_args()

    print(f"{'p^e':>10}{'hensel ms':>12}{'brute ms':>12}{'speedup':>10}")
    for e in args.e:
        rng = random.Random(args.seed)
        q = args.p**e
        insts = []
        while len(insts) < args.n:
            g, c = rng.randrange(1, args.p), rng.randrange(1, q)
            if c % args.p:
                insts.append(DwpInstance.of(args.p, e, g, c))
        h = timed(solve_all, insts, args.reps)
        b = timed(brute_force, insts, max(1, args.reps // 2))
        print(f"{f'{args.p}^{e}':>10}{h * 1e3:>12.2f}{b * 1e3:>12.1f}{b / h:>9.1f}x")


if __name__ == "__main__":
    main()
