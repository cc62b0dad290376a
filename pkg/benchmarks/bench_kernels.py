"""Time the compiled kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py [--repeat 5]

Each workload is checked for identical results across backends before it
is timed.
"""

import argparse
import random
import timeit

from bb84z import _backend


def workloads():
    rnd = random.Random(0)
    basis16 = [rnd.randrange(1 << 40) for _ in range(16)]
    v40 = rnd.randrange(1 << 40)
    gens14 = [rnd.randrange(1, 1 << 30) for _ in range(14)]
    # parity columns of a random 12 x 24 check matrix
    cols = [rnd.randrange(1 << 12) for _ in range(24)]
    return {
        "span_min_weight (k=16, n=40)": lambda k: k.span_min_weight(v40, basis16),
        "min_nonzero_span_weight (k=14)": lambda k: k.min_nonzero_span_weight(gens14),
        "coset_leaders (n=24, r=12)": lambda k: k.coset_leaders(cols, 24, 12),
        "split_event_count (L=20, n=10)": lambda k: k.split_event_count(0b10110011100011110000, 20, 10, 6, 3),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = _backend.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python backend is available")
    names = sorted(backends)
    print(f"{'workload':34}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, job in workloads().items():
        results = {n: job(backends[n]) for n in names}
        if len(set(map(repr, results.values()))) != 1:
            raise SystemExit(f"backends disagree on {label}")
        times = {}
        for n in names:
            number = 1
            timer = timeit.Timer(lambda: job(backends[n]))
            while timer.timeit(number) < 0.05:
                number *= 2
            times[n] = min(timer.repeat(args.repeat, number)) / number
        row = f"{label:34}" + "".join(f"{times[n] * 1e3:>10.3f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
