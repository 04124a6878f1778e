"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import time

from densorbit import kernels
from densorbit.analysis import _gap_tables
from densorbit.construction import orders, test_schedule


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--t", type=int, default=20, help="prefix length for the brute-force count")
    parser.add_argument("--digits", type=int, default=1_000_000)
    args = parser.parse_args()

    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled extension not built; only the pure backend is timed")

    prof = orders(test_schedule(4, [2, 1]), 4)
    ones, gaps = _gap_tables(prof, args.t)
    rng = random.Random(0)
    digits = format(rng.getrandbits(args.digits), "b").zfill(args.digits).encode()

    cases = [
        (f"count_admissible t={args.t}", lambda b: b.count_admissible(args.t, ones, gaps)),
        (f"match_starts '000' in {args.digits} digits", lambda b: len(b.match_starts(digits, b"000", len(digits)))),
    ]
    print(f"{'kernel':<42} {'backend':<8} {'seconds':>10} {'result':>10}")
    for label, fn in cases:
        timings = {}
        for name, backend in backends.items():
            secs, result = best_of(lambda: fn(backend), args.repeat)
            timings[name] = secs
            print(f"{label:<42} {name:<8} {secs:>10.4f} {result:>10}")
        if len(timings) == 2:
            print(f"{'':<42} speedup  {timings['python'] / timings['cython']:>10.1f}x")


if __name__ == "__main__":
    main()
