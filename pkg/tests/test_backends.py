"""The numba kernels and the numpy fallback must give the same answers."""

import numpy as np
import pytest

from hdgames import _accel, kernels
from hdgames.games import EVE
from hdgames.randgen import random_2d_game, random_parity_game
from hdgames.solvers import (check_good, solve_2d_enum, solve_2d_muller, solve_parity_brute,
                             solve_parity_recursive, verify_parity_strategy)
from hdgames.zielonka import MullerCondition, build_zielonka

pytestmark = pytest.mark.skipif(not _accel.USE_NUMBA, reason="numba backend disabled")


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.maximal_flipped_submasks(np.zeros(2, dtype=np.bool_), 1, backend="cuda")


def test_parity_solvers_agree():
    rng = np.random.default_rng(80)
    for _ in range(100):
        g = random_parity_game(rng, 7, 5)
        a = solve_parity_recursive(g, backend="numba")
        b = solve_parity_recursive(g, backend="numpy")
        assert a.regions == b.regions
        assert solve_parity_brute(g, backend="numba") == solve_parity_brute(g, backend="numpy")
        for p in (EVE, EVE.opponent):
            region = [v for v, w in enumerate(b.regions) if w == p]
            if region:
                # each backend accepts the other's certificate
                assert verify_parity_strategy(g, p, b.strategies[p], region, backend="numba")
                assert verify_parity_strategy(g, p, a.strategies[p], region, backend="numpy")


def test_two_dim_solvers_agree():
    rng = np.random.default_rng(81)
    for _ in range(100):
        g = random_2d_game(rng, 6, 3, 3)
        assert solve_2d_enum(g, backend="numba")[0] == solve_2d_enum(g, backend="numpy")[0]
        assert solve_2d_muller(g, backend="numba") == solve_2d_muller(g, backend="numpy")
        assert check_good(g, backend="numba") == check_good(g, backend="numpy")


def test_lattice_kernel_agrees():
    rng = np.random.default_rng(82)
    for _ in range(60):
        n = int(rng.integers(1, 8))
        table = rng.random(1 << n) < 0.5
        table[0] = False
        full = (1 << n) - 1
        assert (kernels.maximal_flipped_submasks(table, full, backend="numba")
                == kernels.maximal_flipped_submasks(table, full, backend="numpy"))


def test_zielonka_trees_agree():
    rng = np.random.default_rng(83)
    for _ in range(30):
        n = int(rng.integers(1, 6))
        family = {m for m in range(1, 1 << n) if rng.random() < 0.5}
        cond = MullerCondition(tuple(range(n)), family=family)
        a = build_zielonka(cond, method="lattice", backend="numba")
        b = build_zielonka(cond, method="lattice", backend="numpy")
        assert [x.label for x in a.nodes()] == [x.label for x in b.nodes()]
