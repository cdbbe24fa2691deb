import itertools

import numpy as np
import pytest

from hdgames.automata import UPWord, is_complete, is_deterministic, member_up
from hdgames.games import ADAM, EVE, GameArena, MullerGame
from hdgames.randgen import random_2d_game
from hdgames.solvers import solve_2d_enum, solve_parity_recursive, two_dim_as_muller
from hdgames.zielonka import (MullerCondition, build_zielonka, check_tree,
                              containment_condition, implication_condition,
                              muller_game_to_parity, muller_product, token2_condition,
                              tree_to_dpa, zielonka_shape)


def mask_of(cond, colors):
    return sum(1 << cond.colors.index(c) for c in colors)


def label_set(cond, node):
    return {c for i, c in enumerate(cond.colors) if node.label >> i & 1}


def rows(p1s, d2):
    return {(p1, p2) for p1 in p1s for p2 in range(d2 + 1)}


class TestContainmentTrees:
    def test_z0_single_node(self):
        cond = containment_condition(0)
        t = build_zielonka(cond)
        assert t.root.is_leaf and t.root.in_family
        assert label_set(cond, t.root) == rows((1, 2), 0)
        assert zielonka_shape(t) == (1, 0)

    def test_z1(self):
        cond = containment_condition(1)
        t = build_zielonka(cond)
        assert not t.root.in_family
        kids = [label_set(cond, c) for c in t.root.children]
        assert sorted(map(sorted, kids)) == sorted(map(sorted, [rows((1, 2), 0), rows((1,), 1)]))
        assert zielonka_shape(t) == (2, 1)

    def test_z2_single_child(self):
        cond = containment_condition(2)
        t = build_zielonka(cond)
        assert t.root.in_family and len(t.root.children) == 1
        assert label_set(cond, t.root.children[0]) == rows((1, 2), 1)

    @pytest.mark.parametrize("d2", range(11))
    def test_height_and_lattice_agreement(self, d2):
        cond = containment_condition(d2)
        fast = check_tree(build_zielonka(cond))
        assert fast.height == d2
        slow = build_zielonka(cond, method="lattice")
        assert _shape_labels(fast.root) == _shape_labels(slow.root)
        # constructed leaf count (the closed form is in the project notes)
        assert len(fast.leaves) == (d2 + 1) // 2 + 1

    def test_membership_examples(self):
        c0, c1 = containment_condition(0), containment_condition(1)
        assert mask_of(c0, [(2, 0)]) in c0
        assert mask_of(c1, [(2, 1)]) not in c1
        assert mask_of(c1, [(1, 1)]) in c1


def _shape_labels(node):
    return (node.label, node.in_family, tuple(_shape_labels(c) for c in node.children))


class TestConditions:
    def test_implication_examples(self):
        c = implication_condition([(0, 0)])
        assert 1 in c
        assert 1 not in implication_condition([(2, 1)])
        c = implication_condition([(1, 0), (2, 2)])
        assert 0b11 in c

    def test_token2_examples(self):
        assert 1 in token2_condition([(2, 1, 1)])
        assert 1 not in token2_condition([(1, 2, 1)])
        assert 1 in token2_condition([(2, 2, 2)])

    def test_empty_set_never_in_family(self):
        assert 0 not in containment_condition(2)

    def test_table_matches_membership(self):
        cond = containment_condition(2)
        assert all(cond.table[m] == (m in cond) for m in range(1 << cond.size))

    def test_family_validation(self):
        with pytest.raises(ValueError):
            MullerCondition(("x",), family={0b10})
        with pytest.raises(ValueError):
            MullerCondition(("x", "x"), family=set())

    def test_threshold_route_needs_rule(self):
        with pytest.raises(ValueError):
            build_zielonka(MullerCondition(("x",), family={1}), method="thresholds")


def _random_family_condition(rng, n):
    family = {m for m in range(1, 1 << n) if rng.random() < 0.5}
    return MullerCondition(tuple(range(n)), family=family)


def _random_rule_condition(rng, k):
    colors = set()
    while len(colors) < k:
        colors.add((int(rng.integers(0, 4)), int(rng.integers(0, 4))))
    return implication_condition(sorted(colors))


def test_routes_agree_on_random_rule_conditions():
    rng = np.random.default_rng(20)
    for _ in range(60):
        cond = _random_rule_condition(rng, int(rng.integers(1, 9)))
        a = check_tree(build_zielonka(cond, method="thresholds"))
        b = check_tree(build_zielonka(cond, method="lattice"))
        assert _shape_labels(a.root) == _shape_labels(b.root)


def test_lattice_route_on_explicit_families():
    """Maximal flipped children checked against a naive subset scan."""
    rng = np.random.default_rng(21)
    for _ in range(40):
        n = int(rng.integers(1, 6))
        cond = _random_family_condition(rng, n)
        tree = check_tree(build_zielonka(cond))
        for node in tree.nodes():
            subs = [m for m in range(1, node.label) if m & node.label == m
                    and (m in cond) != node.in_family]
            maximal = sorted(m for m in subs if not any(o != m and o & m == m for o in subs))
            assert [c.label for c in node.children] == maximal


def _all_words(k, max_len):
    for lu in range(max_len + 1):
        for u in itertools.product(range(k), repeat=lu):
            for lv in range(1, max_len + 1):
                for v in itertools.product(range(k), repeat=lv):
                    yield UPWord(u, v)


def _check_dpa(cond, words):
    tree = build_zielonka(cond)
    leaves, height = zielonka_shape(tree)
    dpa = tree_to_dpa(tree)
    assert dpa.state_count == leaves
    assert len(dpa.priorities) <= height + 1
    assert is_deterministic(dpa) and is_complete(dpa)
    for w in words:
        inf = 0
        for x in w.period:
            inf |= 1 << x
        assert member_up(dpa, w) == (inf in cond), w


class TestDpa:
    def test_z1_size(self):
        dpa = tree_to_dpa(build_zielonka(containment_condition(1)))
        assert dpa.state_count == 2 and len(dpa.priorities) <= 2

    @pytest.mark.parametrize("d2", range(5))
    def test_containment_semantics(self, d2):
        cond = containment_condition(d2)
        rng = np.random.default_rng(d2)
        words = [UPWord(tuple(rng.integers(0, cond.size, size=rng.integers(0, 4)).tolist()),
                        tuple(rng.integers(0, cond.size, size=rng.integers(1, 4)).tolist()))
                 for _ in range(200)]
        _check_dpa(cond, words)

    def test_explicit_families_exhaustive_words(self):
        rng = np.random.default_rng(22)
        for _ in range(25):
            cond = _random_family_condition(rng, int(rng.integers(1, 4)))
            _check_dpa(cond, list(_all_words(cond.size, 2)))


def _single_loop(in_family):
    cond = MullerCondition(("x",), family={1} if in_family else set())
    return MullerGame(GameArena(1, [EVE], 0, [(0, 0)]), (0,), cond)


class TestProduct:
    def test_single_loop(self):
        assert solve_parity_recursive(muller_game_to_parity(_single_loop(True))).winner == EVE
        assert solve_parity_recursive(muller_game_to_parity(_single_loop(False))).winner == ADAM

    def test_size_bound_and_winner(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            g = random_2d_game(rng, 6, 3, 3)
            mg = two_dim_as_muller(g)
            pg, tree, stats = muller_product(mg)
            assert stats.vertices <= g.arena.vertex_count * len(tree.leaves)
            assert stats.priorities <= tree.height + 1
            assert solve_parity_recursive(pg).winner == solve_2d_enum(g)[0]
