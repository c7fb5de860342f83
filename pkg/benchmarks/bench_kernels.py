"""Side-by-side timing of the two kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--n 6] [--chains 2000]
       [--steps 50] [--repeat 3]

Benchmarks the successor-table build, the batched chain runner, graph
eccentricities and one distribution step on the antichain of the given
size (the largest state space for that n). The jit backend is warmed up
once before timing so compilation cost is excluded; the first-call cost
is reported separately.
"""

import argparse
import time

import numpy as np

from posetshuffle import antichain, enumerate_extensions
from posetshuffle import _kernels_numpy as k_numpy

try:
    from posetshuffle import _kernels_numba as k_numba
except ImportError:
    k_numba = None


def best_of(repeat, fn, *args):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--chains", type=int, default=2000)
    ap.add_argument("--steps", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    p = antichain(args.n)
    ext = enumerate_extensions(p)
    words = np.asarray(ext.words, dtype=np.int32)
    less = p.less
    m = len(ext)
    print(f"antichain({args.n}): {m} states")

    rng = np.random.default_rng(0)
    draws = rng.integers(0, args.n, size=(args.chains, args.steps, 2),
                         dtype=np.int32)
    start = words[0].copy()
    v = np.full(m, 1.0 / m)

    backends = [("numpy", k_numpy)]
    if k_numba is None:
        print("numba backend unavailable; timing numpy only")
    else:
        t0 = time.perf_counter()
        small = np.asarray([[1, 2], [2, 1]], dtype=np.int32)
        none = np.zeros((2, 2), dtype=bool)
        k_numba.move_table(small, none)
        k_numba.run_chains(small[0].copy(), none,
                           np.zeros((1, 1, 2), np.int32))
        k_numba.eccentricities(k_numba.move_table(small, none))
        k_numba.step_distribution(np.array([0.5, 0.5]),
                                  k_numba.move_table(small, none))
        print(f"numba warm-up (compile or cache load): "
              f"{time.perf_counter() - t0:.2f}s")
        backends.append(("numba", k_numba))

    rows = []
    for name, mod in backends:
        succ = mod.move_table(words, less)
        rows.append(
            (
                name,
                best_of(args.repeat, mod.move_table, words, less),
                best_of(args.repeat, mod.run_chains, start, less, draws),
                best_of(args.repeat, mod.eccentricities, succ),
                best_of(args.repeat, mod.step_distribution, v, succ),
            )
        )

    header = f"{'backend':<8} {'move_table':>12} {'run_chains':>12} " \
             f"{'eccentricities':>15} {'step':>10}"
    print(header)
    for name, t1, t2, t3, t4 in rows:
        print(f"{name:<8} {t1:>11.4f}s {t2:>11.4f}s {t3:>14.4f}s {t4:>9.5f}s")
    if len(rows) == 2:
        print(
            "speedup (numpy/numba): "
            + ", ".join(
                f"{a}x{rows[0][i] / rows[1][i]:.1f}"
                for i, a in ((1, " table "), (2, " chains "),
                             (3, " ecc "), (4, " step "))
            )
        )


if __name__ == "__main__":
    main()
