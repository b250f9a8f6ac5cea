#!/usr/bin/env python3
"""Throughput comparison of the Monte Carlo trial kernels.

Both backends implement the same chunk contract (identical streams,
identical results); this script measures how fast each one turns
Gaussian draws into accumulated trial statistics.  The dominant cost in
either backend is the inverse-CDF transform, so the headline number is
draws per second (trials times society size over wall time).

Usage:
    python3 benchmarks/bench_backends.py [--trials N] [--repeat K]
"""

import argparse
import time
from fractions import Fraction

from alphavote.backend import available_backends, get_backend
from alphavote.model import VotingRule

# (label, egoists, group sizes): small, mid and large societies
SOCIETIES = [
    ("n=60   l=55  g=5", 55, (5,)),
    ("n=1000 l=950 g=50", 950, (50,)),
    ("n=1000 l=854 g=50,96", 854, (50, 96)),
]


def _kernel_args(trials, egoists, sizes, mu=-0.8, sigma=30.0):
    g1 = sizes[0] if len(sizes) > 0 else 0
    g2 = sizes[1] if len(sizes) > 1 else 0
    n = egoists + g1 + g2
    v_star = VotingRule(alpha=Fraction(1, 2)).min_votes(n)
    return (12345, 0, trials, g1, g2, egoists, mu, sigma, v_star,
            0, 0.0, 0, 0, 0.0, 0), n


def _time_one(kernel, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        kernel.trial_partials(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=20000,
                        help="trials per measurement (default 20000)")
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions, best time kept (default 3)")
    opts = parser.parse_args()

    names = available_backends()
    print(f"backends: {', '.join(names)}")
    print(f"{opts.trials} trials per point, best of {opts.repeat}\n")
    header = f"{'society':<22}" + "".join(f"{name:>16}" for name in names)
    if len(names) > 1:
        header += f"{'ratio':>9}"
    print(header)
    print("-" * len(header))

    for label, egoists, sizes in SOCIETIES:
        args, n = _kernel_args(opts.trials, egoists, sizes)
        rates = []
        for name in names:
            kernel = get_backend(name)
            kernel.trial_partials(*args[:2], 100, *args[3:])  # warm up
            elapsed = _time_one(kernel, args, opts.repeat)
            rates.append(opts.trials * n / elapsed)
        row = f"{label:<22}"
        for rate in rates:
            row += f"{rate / 1e6:>12.1f} M/s"
        if len(rates) > 1:
            row += f"{max(rates) / min(rates):>8.2f}x"
        print(row)

    print("\nrates are Gaussian draws per second (trials x society size)")


if __name__ == "__main__":
    main()
