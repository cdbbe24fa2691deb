"""Compare the numba kernels with the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Each row
times one kernel on the same inputs under both backends after a warm-up
call, so JIT compilation is not counted.
"""

import argparse
import time

import numpy as np

from hdgames import _accel, kernels
from hdgames.games import GameArena, TwoDimGame, EVE, ADAM
from hdgames.randgen import random_parity_game
from hdgames.solvers import check_good, solve_2d_enum, solve_parity_recursive
from hdgames.zielonka import containment_condition


def _big_2d(rng, n, out):
    owner = [EVE if rng.random() < 0.5 else ADAM for _ in range(n)]
    edges = sorted({(v, int(w)) for v in range(n) for w in rng.integers(0, n, size=out)})
    m = len(edges)
    p1 = rng.integers(0, 6, size=m).tolist()
    p2 = rng.integers(0, 6, size=m).tolist()
    return TwoDimGame(GameArena(n, owner, 0, edges), p1, p2, 5, 5)


def _cases(rng):
    pg = random_parity_game(rng, 2000, 9, 4)
    while pg.arena.vertex_count < 1500:
        pg = random_parity_game(rng, 2000, 9, 4)
    big = _big_2d(rng, 800, 3)
    small = _big_2d(rng, 9, 2)
    ztab = containment_condition(3).table
    arr = pg.arena.arrays
    everything = np.ones(arr.n, dtype=np.bool_)
    target = np.zeros(arr.n, dtype=np.bool_)
    target[::7] = True
    return [
        ("attractor", lambda b: kernels.attractor(
            arr, everything, target, 0, np.full(arr.n, -1, dtype=np.int64), b)),
        ("recursive parity solver", lambda b: solve_parity_recursive(pg, b)),
        ("any_bad_cycle (check_good)", lambda b: check_good(big, b)),
        ("search_positional", lambda b: solve_2d_enum(small, backend=b)),
        ("maximal_flipped_submasks", lambda b: kernels.maximal_flipped_submasks(
            ztab, (1 << len(ztab).bit_length() - 1) - 1, b)),
    ]


def _time(fn, backend, repeat):
    fn(backend)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not _accel.USE_NUMBA:
        raise SystemExit("numba is disabled (HDGAMES_BACKEND=numpy?); nothing to compare")
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':32s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, fn in _cases(rng):
        nb = _time(fn, "numba", args.repeat)
        np_ = _time(fn, "numpy", args.repeat)
        print(f"{name:32s} {nb * 1e3:10.2f} {np_ * 1e3:10.2f} {np_ / nb:8.1f}x")


if __name__ == "__main__":
    main()
