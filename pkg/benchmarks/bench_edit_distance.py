#!/usr/bin/env python3
"""Times the compiled edit-distance kernel against the pure-Python DP.

Run after installing the package:

    python3 benchmarks/bench_edit_distance.py
"""

import random
import time

from retold import metrics

SIZES = (50, 100, 200, 400, 800)
REPEATS = 20
VOCAB = [f"w{i}" for i in range(500)]


def timed(fn, a, b):
    best = float("inf")
    result = None
    for _ in range(REPEATS):
        start = time.perf_counter()
        result = fn(a, b)
        best = min(best, time.perf_counter() - start)
    return result, best


def main():
    rng = random.Random(1)
    print(f"active backend: {metrics.BACKEND}")
    print(f"{'tokens':>8} {'pure-python':>14} {'selected':>14} {'speedup':>9}")
    for size in SIZES:
        a = [rng.choice(VOCAB) for _ in range(size)]
        b = [rng.choice(VOCAB) for _ in range(size)]
        d_py, t_py = timed(metrics._levenshtein_py, a, b)
        d_sel, t_sel = timed(metrics.levenshtein, a, b)
        assert d_py == d_sel, "backends disagree"
        speedup = t_py / t_sel if t_sel > 0 else float("inf")
        print(f"{size:>8} {t_py * 1e3:>12.3f}ms {t_sel * 1e3:>12.3f}ms {speedup:>8.1f}x")
    if metrics.BACKEND == "pure-python":
        print("note: compiled kernel not built; both columns ran the same code")


if __name__ == "__main__":
    main()
