"""Winners, positional strategies and cycle-based certificate checks."""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ResourceLimitError, ValidationError
from .games import (ADAM, EVE, GameArena, GraphArrays, MullerGame, Player,
                    PositionalStrategy, validate_game)
from .zielonka import implication_condition, muller_product

#: default cap on the number of positional Eve strategies tried by brute force
BRUTE_LIMIT = 10**6


@dataclass(frozen=True)
class ParityResult:
    winner: Player
    regions: tuple  # winner per vertex
    strategies: dict  # Player -> PositionalStrategy on that player's region


def _pairs(a, b, parity_a, parity_b):
    va = sorted({x for x in a if x % 2 == parity_a})
    vb = sorted({y for y in b if y % 2 == parity_b})
    return [(x, y) for x in va for y in vb]


# ------------------------------------------------------------ recursive solver

def _split(g):
    """Edge-priority game -> vertex-priority game with one vertex per edge."""
    a = g.arena
    n, m = a.vertex_count, len(a.edges)
    src = [s for s, _ in a.edges] + [n + e for e in range(m)]
    dst = [n + e for e in range(m)] + [d for _, d in a.edges]
    owner = [int(o) for o in a.owner] + [int(EVE)] * m
    prio = np.zeros(n + m, dtype=np.int64)
    prio[n:] = g.priority
    return GraphArrays(n + m, owner, src, dst), prio


def _zielonka_solve(G, prio, mask, strategy, backend):
    if not mask.any():
        return [mask.copy(), mask.copy()]
    top = int(prio[mask].max())
    i = top % 2
    target = mask & (prio == top)
    attr = kernels.attractor(G, mask, target, i, strategy, backend)
    sub = _zielonka_solve(G, prio, mask & ~attr, strategy, backend)
    if not sub[1 - i].any():
        for v in np.flatnonzero(target & (G.owner == i)):
            for k in range(G.succ_ptr[v], G.succ_ptr[v + 1]):
                e = G.succ_edge[k]
                if mask[G.dst[e]]:
                    strategy[v] = e
                    break
        out = [None, None]
        out[i] = mask.copy()
        out[1 - i] = np.zeros_like(mask)
        return out
    back = kernels.attractor(G, mask, sub[1 - i], 1 - i, strategy, backend)
    rest = _zielonka_solve(G, prio, mask & ~back, strategy, backend)
    out = [None, None]
    out[i] = rest[i]
    out[1 - i] = rest[1 - i] | back
    return out


def solve_parity_recursive(g, backend=None):
    """Classical recursive (attractor-based) parity game solver.

    Edges are first subdivided so that priorities sit on vertices; the
    returned regions and strategies refer to the original game.
    """
    validate_game(g)
    G, prio = _split(g)
    n = g.arena.vertex_count
    strategy = np.full(G.n, -1, dtype=np.int64)
    mask = np.ones(G.n, dtype=np.bool_)
    won = _zielonka_solve(G, prio, mask, strategy, backend)
    regions = tuple(EVE if won[0][v] else ADAM for v in range(n))
    strategies = {}
    for p in (EVE, ADAM):
        choice = {v: int(strategy[v]) for v in range(n)
                  if g.arena.owner[v] == p and regions[v] == p}
        strategies[p] = PositionalStrategy(choice)
    return ParityResult(regions[g.arena.initial], regions, strategies)


def verify_parity_strategy(g, player, strategy, region=None, backend=None):
    """Does ``strategy`` win for ``player`` from every vertex of ``region``?

    The region must be closed under the strategy and under every opponent
    move, and the restricted graph must hold no cycle whose top priority
    has the opponent's parity.
    """
    arena = g.arena
    if region is None:
        region = [v for v in range(arena.vertex_count)]
    inside = np.zeros(arena.vertex_count, dtype=np.bool_)
    inside[list(region)] = True
    edge_on = strategy.edge_mask(arena, player)
    for e, (s, d) in enumerate(arena.edges):
        if inside[s] and edge_on[e] and not inside[d]:
            return False
    for v in region:
        if arena.owner[v] == player and v not in strategy.choice:
            return False
    pr = np.array(g.priority, dtype=np.int64)
    pairs = [(p, 0) for p in sorted(set(g.priority)) if p % 2 != player % 2]
    zeros = np.zeros_like(pr)
    return not kernels.any_bad_cycle(arena.arrays, pr, zeros, pairs, None,
                                     edge_on, backend, vmask=inside)


# ------------------------------------------------------------- brute oracles

def strategy_count(arena):
    return math.prod(len(arena.out_edges(v)) for v in arena.eve_vertices())


def _check_limit(arena, limit):
    count = strategy_count(arena)
    if count > limit:
        raise ResourceLimitError(
            f"instance too large for brute oracle: {count} positional strategies > {limit}")
    return count


def solve_parity_brute(g, limit=BRUTE_LIMIT, backend=None):
    """Winner by trying every positional Eve strategy (parity games are
    positionally determined, so this is exact)."""
    validate_game(g)
    count = _check_limit(g.arena, limit)
    pr = np.array(g.priority, dtype=np.int64)
    pairs = [(p, 0) for p in sorted(set(g.priority)) if p % 2 == 1]
    found, _ = kernels.search_positional(g.arena.arrays, pr, np.zeros_like(pr), pairs,
                                         g.arena.initial, count, backend)
    return EVE if found else ADAM


def _strategy_from_digits(arena, digits):
    return PositionalStrategy({v: arena.out_edges(v)[int(k)]
                               for v, k in zip(arena.eve_vertices(), digits)})


def _check_strategy(arena, s):
    for v in arena.eve_vertices():
        if v not in s.choice:
            raise ValidationError(f"strategy incomplete: no choice at Eve vertex {v}")
        e = s.choice[v]
        if not 0 <= e < len(arena.edges) or arena.edges[e][0] != v:
            raise ValidationError(f"wrong arena: edge {e} does not leave vertex {v}")


def verify_eve_strategy(g, s, backend=None):
    """True iff no cycle reachable under ``s`` has an even priority1 maximum
    together with an odd priority2 maximum."""
    _check_strategy(g.arena, s)
    p1 = np.array(g.priority1, dtype=np.int64)
    p2 = np.array(g.priority2, dtype=np.int64)
    pairs = _pairs(g.priority1, g.priority2, 0, 1)
    edge_on = s.edge_mask(g.arena, EVE)
    return not kernels.any_bad_cycle(g.arena.arrays, p1, p2, pairs, g.arena.initial,
                                     edge_on, backend)


def solve_2d_enum(g, limit=BRUTE_LIMIT, backend=None):
    """(winner, witness) by exhausting positional Eve strategies."""
    validate_game(g)
    count = _check_limit(g.arena, limit)
    p1 = np.array(g.priority1, dtype=np.int64)
    p2 = np.array(g.priority2, dtype=np.int64)
    pairs = _pairs(g.priority1, g.priority2, 0, 1)
    found, digits = kernels.search_positional(g.arena.arrays, p1, p2, pairs,
                                              g.arena.initial, count, backend)
    if not found:
        return ADAM, None
    return EVE, _strategy_from_digits(g.arena, digits)


def two_dim_as_muller(g):
    pairs = sorted(set(zip(g.priority1, g.priority2)))
    index = {c: i for i, c in enumerate(pairs)}
    color = tuple(index[c] for c in zip(g.priority1, g.priority2))
    return MullerGame(g.arena, color, implication_condition(pairs), name=g.name)


def solve_2d_muller(g, backend=None):
    """Winner through the Zielonka-tree product and the recursive solver."""
    validate_game(g)
    pg, _, _ = muller_product(two_dim_as_muller(g), backend)
    return solve_parity_recursive(pg, backend).winner


def solve_2d(g, method="enum", limit=BRUTE_LIMIT, backend=None):
    if method == "enum":
        return solve_2d_enum(g, limit, backend)[0]
    if method == "muller":
        return solve_2d_muller(g, backend)
    raise ValueError(f"unknown method {method!r}")


def solve_muller(g, backend=None):
    pg, _, _ = muller_product(g, backend)
    return solve_parity_recursive(pg, backend).winner


def check_good(g, backend=None):
    """No reachable play satisfies priority2 while violating priority1."""
    validate_game(g)
    p1 = np.array(g.priority1, dtype=np.int64)
    p2 = np.array(g.priority2, dtype=np.int64)
    pairs = _pairs(g.priority2, g.priority1, 0, 1)
    return not kernels.any_bad_cycle(g.arena.arrays, p2, p1, pairs, g.arena.initial,
                                     None, backend)
