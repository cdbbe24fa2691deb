"""Simulation games, history-determinism via a deterministic equivalent, and
one- and two-token games.

All products are explored from their initial position only, so every
position in a built arena is reachable.  Automata are completed with a
rejecting sink first, which keeps every play infinite.
"""

from collections import deque

import numpy as np

from .automata import UPWord, complete, is_deterministic, member_up, validate
from .errors import ValidationError
from .games import ADAM, EVE, GameArena, MullerGame, TwoDimGame
from .solvers import solve_2d, solve_muller
from .zielonka import token2_condition


def _explore(start, expand):
    """Breadth-first product construction.

    ``expand(pos)`` returns ``(owner, [(next_pos, label), ...])``.  Returns
    the arena, the edge labels and the position list (index = vertex id).
    """
    ids = {start: 0}
    positions = [start]
    owners, edges, labels = [], [], []
    todo = deque([start])
    while todo:
        pos = todo.popleft()
        owner, moves = expand(pos)
        owners.append(owner)
        v = ids[pos]
        for nxt, label in moves:
            if nxt not in ids:
                ids[nxt] = len(positions)
                positions.append(nxt)
                todo.append(nxt)
            edges.append((v, ids[nxt]))
            labels.append(label)
    return GameArena(len(positions), owners, 0, edges), labels, positions


def _same_alphabet(a, b):
    if tuple(a.alphabet) != tuple(b.alphabet):
        raise ValidationError("alphabet mismatch")


def _sim_parts(a, b):
    validate(a)
    validate(b)
    _same_alphabet(a, b)
    a, b = complete(a), complete(b)
    sa, sb = a.successors, b.successors
    nsym = len(a.alphabet)

    def expand(pos):
        if len(pos) == 2:  # (p, q): Adam picks a letter and a transition of b
            p, q = pos
            return ADAM, [((p2, q, s, c1), (0, 0))
                          for s in range(nsym) for p2, c1 in sb[p][s]]
        p2, q, s, c1 = pos  # Eve answers with a transition of a
        return EVE, [((p2, q2), (c1, c2)) for q2, c2 in sa[q][s]]

    arena, labels, positions = _explore((b.initial, a.initial), expand)
    game = TwoDimGame(arena, [l[0] for l in labels], [l[1] for l in labels],
                      b.max_priority, a.max_priority, name=f"sim_{a.name}_{b.name}")
    return game, positions


def build_sim_game(a, b):
    """2-D game that Eve wins iff ``a`` simulates ``b``.

    Adam moves on ``b``, Eve answers on ``a``; the round-closing Eve edge
    carries both priorities and Adam's edge is padded with (0, 0).
    """
    return _sim_parts(a, b)[0]


def check_simulation(a, b, method="muller", backend=None):
    return solve_2d(build_sim_game(a, b), method, backend=backend) == EVE


def random_upwords(alphabet_size, count, rng, max_prefix=3, max_period=3):
    words = []
    for _ in range(count):
        u = rng.integers(0, alphabet_size, size=rng.integers(0, max_prefix + 1))
        v = rng.integers(0, alphabet_size, size=rng.integers(1, max_period + 1))
        words.append(UPWord(tuple(int(x) for x in u), tuple(int(x) for x in v)))
    return words


def check_hd_with_det(h, det, sample=0, seed=0, method="muller", backend=None):
    """History-determinism of ``h`` given a language-equivalent deterministic
    automaton ``det``: ``h`` is HD iff it simulates ``det``.

    The equivalence is the caller's claim; ``sample`` random ultimately
    periodic words are used to spot-check it.
    """
    validate(h)
    validate(det)
    if not is_deterministic(det):
        raise ValidationError("det is nondeterministic")
    _same_alphabet(h, det)
    rng = np.random.default_rng(seed)
    for w in random_upwords(len(h.alphabet), sample, rng):
        if member_up(h, w) != member_up(det, w):
            u = " ".join(h.alphabet[s] for s in w.prefix) or "ε"
            v = " ".join(h.alphabet[s] for s in w.period)
            raise ValidationError(f"language mismatch witnessed by uv^ω = ({u})({v})^ω")
    return check_simulation(h, det, method, backend)


def _token_parts(a, k):
    if k not in (1, 2):
        raise ValidationError(f"k must be 1 or 2, got {k}")
    validate(a)
    a = complete(a)
    succ = a.successors
    nsym = len(a.alphabet)
    pad = (0,) * (k + 1)

    def expand(pos):
        tag = pos[0]
        if tag == "round":  # Adam picks the letter
            return ADAM, [(("eve", pos[1], pos[2:], s), pad) for s in range(nsym)]
        if tag == "eve":  # Eve moves her token
            _, qe, qa, s = pos
            return EVE, [(("adam", qe2, qa, s, ce), pad) for qe2, ce in succ[qe][s]]
        _, qe2, qa, s, ce = pos  # Adam moves his k tokens
        moves = []
        if k == 1:
            for q1, c1 in succ[qa[0]][s]:
                moves.append((("round", qe2, q1), (c1, ce)))
        else:
            for q1, c1 in succ[qa[0]][s]:
                for q2, c2 in succ[qa[1]][s]:
                    moves.append((("round", qe2, q1, q2), (ce, c1, c2)))
        return ADAM, moves

    start = ("round", a.initial) + (a.initial,) * k
    arena, labels, positions = _explore(start, expand)
    if k == 1:
        game = TwoDimGame(arena, [l[0] for l in labels], [l[1] for l in labels],
                          a.max_priority, a.max_priority, name=f"token1_{a.name}")
    else:
        colors = sorted(set(labels))
        index = {c: i for i, c in enumerate(colors)}
        game = MullerGame(arena, tuple(index[l] for l in labels), token2_condition(colors),
                          name=f"token2_{a.name}")
    return game, positions


def build_token_game(a, k):
    """k-token game of ``a``.  k=1 gives a 2-D game with (Adam's priority,
    Eve's priority) on the round-closing edge; k=2 a Muller game whose
    colors are (Eve, token 1, token 2) priority triples."""
    return _token_parts(a, k)[0]


def solve_token(a, k, method="muller", backend=None):
    game = build_token_game(a, k)
    if k == 1:
        return solve_2d(game, method, backend=backend)
    return solve_muller(game, backend)
