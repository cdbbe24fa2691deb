"""Random instances for property tests, acceptance runs and benchmarks.

Every generator takes a ``numpy.random.Generator`` so runs are reproducible.
"""

import itertools

import numpy as np

from .automata import ParityAutomaton, UPWord
from .games import GameArena, ParityGame, TwoDimGame
from .hardness import DnfFormula


def random_automaton(rng, n_states=3, max_prio=4, n_symbols=2, deterministic=False,
                     density=0.5, name="A"):
    """Automaton with states and priorities drawn up to the given bounds.

    Deterministic automata get exactly one transition per (state, letter);
    otherwise each possible (state, letter, target) is kept with probability
    ``density``, so the result may be incomplete.
    """
    alphabet = tuple("abcdefgh"[:n_symbols])
    trans = set()
    for q in range(n_states):
        for s in range(n_symbols):
            if deterministic:
                trans.add((q, s, int(rng.integers(n_states)), int(rng.integers(max_prio + 1))))
                continue
            for t in range(n_states):
                if rng.random() < density:
                    trans.add((q, s, t, int(rng.integers(max_prio + 1))))
    trans = tuple(sorted(trans))
    top = max((t[3] for t in trans), default=0)
    return ParityAutomaton(alphabet, n_states, 0, trans, top, name=name)


def _random_arena(rng, n, max_out):
    owner = rng.integers(0, 2, size=n).tolist()
    edges = []
    for v in range(n):
        k = int(rng.integers(1, max_out + 1))
        for w in rng.choice(n, size=min(k, n), replace=False):
            edges.append((v, int(w)))
    return GameArena(n, owner, 0, edges)


def random_parity_game(rng, max_vertices=6, max_prio=5, max_out=3):
    n = int(rng.integers(1, max_vertices + 1))
    arena = _random_arena(rng, n, max_out)
    pr = rng.integers(0, max_prio + 1, size=len(arena.edges)).tolist()
    return ParityGame(arena, pr, max(pr), name="random")


def random_2d_game(rng, max_vertices=6, d1=3, d2=3, max_out=3):
    n = int(rng.integers(1, max_vertices + 1))
    arena = _random_arena(rng, n, max_out)
    m = len(arena.edges)
    p1 = rng.integers(0, d1 + 1, size=m).tolist()
    p2 = rng.integers(0, d2 + 1, size=m).tolist()
    return TwoDimGame(arena, p1, p2, max(p1), max(p2), name="random2d")


def random_dnf(rng, max_vars=3, max_terms=4, max_term_size=3):
    m = int(rng.integers(1, max_vars + 1))
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        size = int(rng.integers(1, min(max_term_size, m) + 1))
        vars_ = rng.choice(np.arange(1, m + 1), size=size, replace=False)
        signs = rng.choice([-1, 1], size=size)
        terms.append(tuple(int(v * s) for v, s in zip(vars_, signs)))
    return DnfFormula(m, terms)


def all_dnfs(max_vars=2, max_terms=2):
    """Every formula with up to ``max_vars`` variables and ``max_terms`` terms,
    terms being nonempty sets of literals over distinct variables."""
    out = []
    for m in range(1, max_vars + 1):
        terms = []
        for size in range(1, m + 1):
            for vs in itertools.combinations(range(1, m + 1), size):
                for signs in itertools.product((1, -1), repeat=size):
                    terms.append(tuple(v * s for v, s in zip(vs, signs)))
        for k in range(1, max_terms + 1):
            for combo in itertools.combinations(terms, k):
                out.append(DnfFormula(m, combo))
    return out


def all_upwords(n_symbols, max_prefix, max_period):
    for lu in range(max_prefix + 1):
        for u in itertools.product(range(n_symbols), repeat=lu):
            for lv in range(1, max_period + 1):
                for v in itertools.product(range(n_symbols), repeat=lv):
                    yield UPWord(u, v)

