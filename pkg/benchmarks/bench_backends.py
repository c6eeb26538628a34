"""Time each hot kernel under the numba and the numpy backend.

    python benchmarks/bench_backends.py [--scale 1.0] [--repeat 3]

The numba timings exclude compilation (one warm-up call first). The numpy
backend runs the same kernels as plain Python, except the layout step,
which has a vectorised numpy twin.
"""
from __future__ import annotations

import argparse
import random
import time

from scimap._accel import NUMBA_AVAILABLE, use_backend
from scimap.community import louvain
from scimap.corpus import damerau_levenshtein
from scimap.layout import fruchterman_reingold
from scimap.metrics import average_path_length, betweenness
from scimap.synthetic import random_network


def cases(scale: float):
    rnd = random.Random(0)
    words = ["".join(rnd.choice("abcdefgh") for _ in range(rnd.randint(10, 60))) for _ in range(int(400 * scale))]
    pairs = list(zip(words, reversed(words)))
    net = random_network(int(300 * scale), int(1500 * scale), seed=1)
    return {
        "edit distance": lambda: [damerau_levenshtein(a, b) for a, b in pairs],
        "betweenness": lambda: betweenness(net, workers=1),
        "weighted betweenness": lambda: betweenness(net, weighted=True, workers=1),
        "average path length": lambda: average_path_length(net),
        "louvain": lambda: louvain(net, seed=3),
        "layout (50 iterations)": lambda: fruchterman_reingold(net, iterations=50, seed=3),
    }


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--scale", type=float, default=1.0, help="problem size multiplier")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not NUMBA_AVAILABLE:
        raise SystemExit("numba is not installed; nothing to compare")
    work = cases(args.scale)
    print(f"{'kernel':<24}{'numba s':>10}{'numpy s':>10}{'speed-up':>10}")
    for name, fn in work.items():
        with use_backend("numba"):
            fn()
            fast = best_of(fn, args.repeat)
        with use_backend("numpy"):
            slow = best_of(fn, 1)
        print(f"{name:<24}{fast:>10.4f}{slow:>10.4f}{slow / fast:>9.1f}x")


if __name__ == "__main__":
    main()
