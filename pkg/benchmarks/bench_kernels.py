"""Compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import timeit

from episturmian import _pure
from episturmian.directive import dbonacci_directive, standard_prefix

try:
    from episturmian import _kernels
except ImportError:
    _kernels = None


def cases():
    fib = standard_prefix(dbonacci_directive(2), 20000).letters
    trib = standard_prefix(dbonacci_directive(3), 10000).letters
    rng = random.Random(0)
    noise = tuple(rng.randrange(3) for _ in range(5000))
    yield "max_repetition fibonacci n=20000", "max_repetition", (fib,)
    yield "max_repetition tribonacci n=10000", "max_repetition", (trib,)
    yield "max_repetition random n=5000", "max_repetition", (noise,)
    yield "dfs_max d=3 N=10", "dfs_max", (3, 10, 10**9)
    yield "dfs_max d=4 N=10", "dfs_max", (4, 10, 10**9)
    yield "dfs_max d=5 N=9", "dfs_max", (5, 9, 10**9)


def best_time(fn, args, repeat: int) -> float:
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rows = []
    for label, name, fargs in cases():
        pure = best_time(getattr(_pure, name), fargs, args.repeat)
        if _kernels is not None:
            compiled = best_time(getattr(_kernels, name), fargs, args.repeat)
            same = getattr(_kernels, name)(*fargs) == getattr(_pure, name)(*fargs)
        else:
            compiled, same = None, None
        rows.append({"case": label, "pure_s": pure, "compiled_s": compiled, "agree": same})
    if args.json:
        json.dump(rows, sys.stdout, indent=2)
        print()
        return 0
    print(f"{'case':38s} {'pure (s)':>10s} {'compiled (s)':>13s} {'speedup':>8s}  agree")
    for r in rows:
        c = r["compiled_s"]
        speed = f"{r['pure_s'] / c:7.1f}x" if c else "      -"
        cs = f"{c:13.4f}" if c is not None else f"{'-':>13s}"
        print(f"{r['case']:38s} {r['pure_s']:10.4f} {cs} {speed}  {r['agree']}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
