"""Compare the numba and numpy kernel backends on BS_n.

    python3 benchmarks/bench_kernels.py --n 7 8 --repeat 3

Each kernel runs once untimed (numba compile / cache load), then the best
of ``--repeat`` runs is reported. Results of both backends are checked for
equality before timing is printed.
"""

import argparse
import time

import numpy as np

from bsstar import kernels
from bsstar.decycle import construct
from bsstar.graph import build


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_n(n, repeat):
    g = build(n)
    gi, gj = g.gen_i, g.gen_j
    alive = ~construct(n).removed_mask(g)
    cases = {
        "neighbor_table": lambda b: b.neighbor_table(n, gi, gj),
        "bfs_table": lambda b: b.bfs_table(g.table, 0, -1),
        "bfs_implicit": lambda b: b.bfs_implicit(n, gi, gj, 0, -1),
        "is_forest_table": lambda b: b.is_forest_table(g.table, alive),
        "is_forest_implicit": lambda b: b.is_forest_implicit(n, gi, gj, alive),
    }
    rows = []
    for name, call in cases.items():
        ref = call(kernels.numpy_backend)
        got = call(kernels.numba_backend)
        assert np.array_equal(np.asarray(ref), np.asarray(got)), name
        t_np = best_of(lambda: call(kernels.numpy_backend), repeat)
        t_nb = best_of(lambda: call(kernels.numba_backend), repeat)
        rows.append((n, name, t_np, t_nb))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=[6, 7, 8])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.numba_backend is None:
        ap.error("numba backend unavailable (BSSTAR_NUMBA=0 or numba not installed)")

    print(f"{'n':>2}  {'kernel':<20}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for n in args.n:
        for n_, name, t_np, t_nb in bench_n(n, args.repeat):
            print(f"{n_:>2}  {name:<20}{t_np:>10.4f}{t_nb:>10.4f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
