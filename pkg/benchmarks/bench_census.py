#!/usr/bin/env python3
"""Compare the compiled census kernel against the pure-Python reference.

Usage:
    python benchmarks/bench_census.py [--cases t:n,t:n,...] [--repeat N]

Both engines enumerate every tree; the table equality check at the end is
part of the benchmark run.
"""
import argparse
import time

from arbor import treebank
from arbor.counting import total_trees


def run(engine, t, n, repeat):
    best = float("inf")
    table = None
    for _ in range(repeat):
        start = time.perf_counter()
        table = treebank.census(t, n, engine=engine)
        best = min(best, time.perf_counter() - start)
    return best, table


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--cases",
        default="2:12,3:9,4:7",
        help="comma-separated t:n pairs (e.g. 3:11 for a heavier run)",
    )
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    cases = []
    for item in args.cases.split(","):
        t_text, n_text = item.split(":")
        cases.append((int(t_text), int(n_text)))

    if not treebank.HAVE_SPEEDUPS:
        print("compiled kernel not built; timing the pure engine only")
    print(f"{'t':>3} {'n':>3} {'trees':>12} {'pure (s)':>10} "
          f"{'compiled (s)':>13} {'speedup':>8}")
    for t, n in cases:
        total = total_trees(t, n)
        pure_time, pure_table = run("pure", t, n, args.repeat)
        if treebank.HAVE_SPEEDUPS:
            fast_time, fast_table = run("compiled", t, n, args.repeat)
            if fast_table != pure_table:
                raise SystemExit(f"engines disagree at t={t} n={n}")
            print(f"{t:>3} {n:>3} {total:>12} {pure_time:>10.4f} "
                  f"{fast_time:>13.4f} {pure_time / fast_time:>8.1f}")
        else:
            print(f"{t:>3} {n:>3} {total:>12} {pure_time:>10.4f} "
                  f"{'-':>13} {'-':>8}")


if __name__ == "__main__":
    main()
