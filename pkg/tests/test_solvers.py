import numpy as np
import pytest

from hdgames.errors import ResourceLimitError, ValidationError
from hdgames.games import ADAM, EVE, GameArena, ParityGame, PositionalStrategy, TwoDimGame
from hdgames.randgen import random_2d_game, random_parity_game
from hdgames.solvers import (check_good, solve_2d_enum, solve_2d_muller, solve_parity_brute,
                             solve_parity_recursive, verify_eve_strategy,
                             verify_parity_strategy)


def ploop(owner, prio):
    return ParityGame(GameArena(1, [owner], 0, [(0, 0)]), [prio], prio)


def loop2(owner, p1, p2):
    return TwoDimGame(GameArena(1, [owner], 0, [(0, 0)]), [p1], [p2], p1, p2)


class TestParity:
    def test_self_loops(self):
        assert solve_parity_recursive(ploop(EVE, 2)).winner == EVE
        assert solve_parity_recursive(ploop(EVE, 1)).winner == ADAM
        assert solve_parity_brute(ploop(EVE, 0)) == EVE

    def test_two_cycle(self):
        g = ParityGame(GameArena(2, [EVE, ADAM], 0, [(0, 1), (1, 0)]), [1, 2], 2)
        assert solve_parity_brute(g) == EVE
        assert solve_parity_recursive(g).winner == EVE

    def test_choice_matters(self):
        # Eve at 0 can loop on 1 or move to 1 which loops on 2
        g = ParityGame(GameArena(2, [EVE, ADAM], 0, [(0, 0), (0, 1), (1, 1)]), [1, 0, 2], 2)
        res = solve_parity_recursive(g)
        assert res.winner == EVE
        assert res.strategies[EVE].choice[0] == 1

    def test_agreement_and_certificates(self):
        rng = np.random.default_rng(30)
        for _ in range(200):
            g = random_parity_game(rng, 6, 5)
            res = solve_parity_recursive(g)
            assert res.winner == solve_parity_brute(g)
            assert res.winner == res.regions[g.arena.initial]
            for p in (EVE, ADAM):
                region = [v for v, w in enumerate(res.regions) if w == p]
                if region:
                    assert verify_parity_strategy(g, p, res.strategies[p], region)

    def test_brute_limit(self):
        arena = GameArena(12, [EVE] * 12, 0, [(v, w) for v in range(12) for w in range(12)])
        g = ParityGame(arena, [0] * len(arena.edges), 0)
        with pytest.raises(ResourceLimitError, match="instance too large for brute oracle"):
            solve_parity_brute(g)
        assert solve_parity_brute(g, limit=10**13) == EVE


class TestTwoDim:
    def test_verify_examples(self):
        s = PositionalStrategy({0: 0})
        assert verify_eve_strategy(loop2(EVE, 0, 0), s)
        assert not verify_eve_strategy(loop2(EVE, 2, 1), s)

    def test_verify_rejects_bad_strategies(self):
        with pytest.raises(ValidationError, match="strategy incomplete"):
            verify_eve_strategy(loop2(EVE, 0, 0), PositionalStrategy({}))
        g = TwoDimGame(GameArena(2, [EVE, EVE], 0, [(0, 1), (1, 0)]), [0, 0], [0, 0], 0, 0)
        with pytest.raises(ValidationError, match="wrong arena"):
            verify_eve_strategy(g, PositionalStrategy({0: 1, 1: 1}))

    def test_enum_examples(self):
        winner, witness = solve_2d_enum(loop2(EVE, 0, 0))
        assert winner == EVE and witness.choice == {0: 0}
        assert solve_2d_enum(loop2(ADAM, 2, 1)) == (ADAM, None)

    def test_muller_examples(self):
        assert solve_2d_muller(loop2(EVE, 0, 0)) == EVE
        assert solve_2d_muller(loop2(ADAM, 2, 1)) == ADAM

    def test_enum_matches_muller_and_witness_verifies(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            g = random_2d_game(rng, 6, 3, 3)
            winner, witness = solve_2d_enum(g)
            assert winner == solve_2d_muller(g)
            if winner == EVE:
                assert verify_eve_strategy(g, witness)


class TestGood:
    def test_examples(self):
        assert not check_good(loop2(ADAM, 1, 0))
        assert check_good(loop2(ADAM, 2, 2))

    def test_unreachable_cycle_ignored(self):
        arena = GameArena(2, [ADAM, ADAM], 0, [(0, 0), (1, 1)])
        g = TwoDimGame(arena, [2, 1], [2, 0], 2, 2)
        assert check_good(g)

    def test_against_brute_cycles(self):
        """Brute force over simple cycles of small graphs."""
        rng = np.random.default_rng(32)
        for _ in range(100):
            g = random_2d_game(rng, 4, 3, 3, max_out=2)
            assert check_good(g) == _good_brute(g)


def _good_brute(g):
    # every reachable strongly connected edge subset is a union of cycles; on
    # 4 vertices enumerating edge subsets that form closed walks is cheap
    import itertools

    a = g.arena
    reach = {a.initial}
    todo = [a.initial]
    while todo:
        v = todo.pop()
        for e in a.out_edges(v):
            w = a.edges[e][1]
            if w not in reach:
                reach.add(w)
                todo.append(w)
    edges = [e for e, (s, _) in enumerate(a.edges) if s in reach]
    for k in range(1, len(edges) + 1):
        for sub in itertools.combinations(edges, k):
            if not _strongly_connected(a, sub):
                continue
            m1 = max(g.priority1[e] for e in sub)
            m2 = max(g.priority2[e] for e in sub)
            if m2 % 2 == 0 and m1 % 2 == 1:
                return False
    return True


def _strongly_connected(a, sub):
    verts = {a.edges[e][0] for e in sub} | {a.edges[e][1] for e in sub}
    outdeg = {v: 0 for v in verts}
    for e in sub:
        outdeg[a.edges[e][0]] += 1
    if min(outdeg.values()) == 0:
        return False
    start = next(iter(verts))
    for forward in (True, False):
        seen, todo = {start}, [start]
        while todo:
            v = todo.pop()
            for e in sub:
                s, d = a.edges[e] if forward else a.edges[e][::-1]
                if s == v and d not in seen:
                    seen.add(d)
                    todo.append(d)
        if seen != verts:
            return False
    return True
