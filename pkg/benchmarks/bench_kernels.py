"""Compare the compiled and pure-Python GF(2) kernels.

    python3 benchmarks/bench_kernels.py [--size 400] [--max-s 6] [--max-t 30]
"""

import argparse
import random
import timeit

from hopalg import kernels
from hopalg.resolution import ext_chart, resolve


def random_rows(n, ncols, seed):
    rng = random.Random(seed)
    return [rng.getrandbits(ncols) for _ in range(n)]


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:<28} {best * 1e3:9.2f} ms")
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=400)
    ap.add_argument("--max-s", type=int, default=6)
    ap.add_argument("--max-t", type=int, default=30)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rows = random_rows(args.size, args.size, 1)
    tall = random_rows(2 * args.size, args.size, 2)
    results = {}
    charts = {}
    for name in kernels.available():
        print(f"backend {name}")
        with kernels.using(name):
            results[name] = (
                bench(f"rref {args.size}x{args.size}", lambda: kernels.rref(rows, args.size), args.repeat),
                bench(f"left_kernel {2 * args.size}x{args.size}", lambda: kernels.left_kernel(tall, args.size), args.repeat),
                bench(f"resolve s<={args.max_s} t<={args.max_t}", lambda: resolve(None, args.max_s, args.max_t), 1),
            )
            charts[name] = ext_chart(resolve(None, args.max_s, args.max_t))
    if len(results) == 2:
        print("speedup compiled / python")
        for i, what in enumerate(["rref", "left_kernel", "resolve"]):
            print(f"  {what:<28} {results['python'][i] / results['compiled'][i]:9.1f}x")
        assert charts["python"] == charts["compiled"], "backends disagree"
        print("charts identical")


if __name__ == "__main__":
    main()
