"""Instance generators for the two hardness reductions.

``dnf_to_game`` turns a formula into a good 2-D parity game that Eve wins
iff the formula is satisfiable, reading each term as a clause (a
satisfying assignment has to make some literal of every term true).
``game_to_automata`` turns a bipartite 2-D game into a deterministic
automaton D and a nondeterministic H such that H simulates D iff Eve wins.
"""

from dataclasses import dataclass

import numpy as np

from .automata import ParityAutomaton, _int, _tokens
from .errors import ParseError, ValidationError
from .games import ADAM, EVE, GameArena, TwoDimGame, is_bipartite, validate_game

DOLLAR = "$"


@dataclass(frozen=True)
class DnfFormula:
    var_count: int
    terms: tuple  # tuple of tuples of signed variable indices

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(tuple(t) for t in self.terms))
        validate_dnf(self)

    def canonical(self):
        return DnfFormula(self.var_count, tuple(tuple(sorted(t, key=lambda l: (abs(l), l < 0)))
                                                for t in self.terms))


def validate_dnf(f):
    if f.var_count < 1:
        raise ValidationError("need at least one variable")
    if not f.terms:
        raise ValidationError("need at least one term")
    for t in f.terms:
        if not t:
            raise ValidationError("empty term")
        if len(set(t)) != len(t):
            raise ValidationError(f"duplicate literal in term {t}")
        for lit in t:
            if lit == 0 or abs(lit) > f.var_count:
                raise ValidationError(f"variable index {lit} outside 1..{f.var_count}")


def parse_dnf(text):
    m = None
    terms = []
    ended = False
    for lineno, parts in _tokens(text):
        if ended:
            raise ParseError("content after 'end'", lineno)
        key, args = parts[0], parts[1:]
        if key == "dnf":
            if len(args) != 1:
                raise ParseError("expected 'dnf <M>'", lineno)
            m = _int(args[0], lineno)
        elif m is None:
            raise ParseError("file must start with 'dnf <M>'", lineno)
        elif key == "term":
            if not args:
                raise ParseError("empty term", lineno)
            terms.append(tuple(_int(x, lineno) for x in args))
        elif key == "end":
            ended = True
        else:
            raise ParseError(f"unexpected line {' '.join(parts)!r}", lineno)
    if not ended:
        raise ParseError("missing 'end'")
    try:
        return DnfFormula(m, terms)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def emit_dnf(f):
    f = f.canonical()
    lines = [f"dnf {f.var_count}"]
    lines += ["term " + " ".join(str(l) for l in t) for t in f.terms]
    lines.append("end")
    return "\n".join(lines) + "\n"


def brute_sat(f, chunk=1 << 16):
    """Is there an assignment making some literal of every term true?"""
    if f.var_count > 24:
        raise ValidationError(f"too many variables for brute force: {f.var_count} > 24")
    total = 1 << f.var_count
    for lo in range(0, total, chunk):
        assign = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        ok = np.ones(assign.shape, dtype=bool)
        for t in f.terms:
            hit = np.zeros(assign.shape, dtype=bool)
            for lit in t:
                bit = (assign >> (abs(lit) - 1)) & 1
                hit |= (bit == 1) if lit > 0 else (bit == 0)
            ok &= hit
        if ok.any():
            return True
    return False


def literal_vertex(lit):
    """Vertex id of literal ``lit``: x_j -> 2(j-1), not x_j -> 2(j-1)+1."""
    return 2 * (abs(lit) - 1) + (1 if lit < 0 else 0)


def literal_priorities(lit):
    j = abs(lit)
    return (2 * j + 2, 2 * j) if lit > 0 else (2 * j + 1, 2 * j + 1)


def dnf_to_game(f, pad_singletons=True):
    """Literals are Adam vertices (x_1 initial), terms are Eve vertices.

    With ``pad_singletons`` a one-literal term gets its edge twice.  The
    parallel copy changes no winner, but it gives Eve a real choice at that
    vertex, which H needs to be able to fall back into its copy of D;
    without it H may be deterministic and still fail to simulate D.
    """
    m, n_terms = f.var_count, len(f.terms)
    owner = [ADAM] * (2 * m) + [EVE] * n_terms
    edges, p1, p2 = [], [], []
    for lv in range(2 * m):
        for i in range(n_terms):
            edges.append((lv, 2 * m + i))
            p1.append(0)
            p2.append(0)
    for i, term in enumerate(f.terms):
        lits = sorted(term, key=literal_vertex)
        if pad_singletons and len(lits) == 1:
            lits = lits * 2
        for lit in lits:
            c1, c2 = literal_priorities(lit)
            edges.append((2 * m + i, literal_vertex(lit)))
            p1.append(c1)
            p2.append(c2)
    arena = GameArena(2 * m + n_terms, owner, 0, edges)
    return TwoDimGame(arena, p1, p2, 2 * m + 2, 2 * m + 1, name="dnf")


@dataclass(frozen=True)
class AutomataPair:
    d: ParityAutomaton
    h: ParityAutomaton
    d_state: dict  # game-side names -> state ids, for inspection
    h_state: dict


def game_to_automata_named(g):
    """``game_to_automata`` plus the state naming maps."""
    validate_game(g)
    arena = g.arena
    if not is_bipartite(arena):
        raise ValidationError("not bipartite")
    if arena.owner[arena.initial] != ADAM:
        raise ValidationError("initial vertex not Adam-owned")
    m = len(arena.edges)
    alphabet = tuple(f"e{i}" for i in range(m)) + (DOLLAR,)
    dollar = m

    dstate = {}
    for v, o in enumerate(arena.owner):
        if o == ADAM:
            dstate[("D", v)] = len(dstate)
        else:
            dstate[("$", v)] = len(dstate)
            dstate[("D", v)] = len(dstate)
    dtrans = []
    for e, (u, v) in enumerate(arena.edges):
        if arena.owner[u] == ADAM:
            dtrans.append((dstate[("D", u)], e, dstate[("$", v)], g.priority1[e]))
        else:
            dtrans.append((dstate[("D", u)], e, dstate[("D", v)], g.priority1[e]))
    for v, o in enumerate(arena.owner):
        if o == EVE:
            dtrans.append((dstate[("$", v)], dollar, dstate[("D", v)], 0))

    # H keeps D's state ids and appends its own states after them
    hstate = dict(dstate)
    for v in range(arena.vertex_count):
        hstate[("H", v)] = len(hstate)
    for e, (u, _) in enumerate(arena.edges):
        if arena.owner[u] == EVE:
            hstate[("H", u, e)] = len(hstate)
    htrans = list(dtrans)
    for e, (u, v) in enumerate(arena.edges):
        if arena.owner[u] == ADAM:
            htrans.append((hstate[("H", u)], e, hstate[("H", v)], g.priority2[e]))
        else:
            htrans.append((hstate[("H", u)], dollar, hstate[("H", u, e)], 0))
            for f in arena.out_edges(u):
                w = arena.edges[f][1]
                target = hstate[("H", w)] if f == e else hstate[("D", w)]
                htrans.append((hstate[("H", u, e)], f, target, g.priority2[f]))

    d = ParityAutomaton(alphabet, len(dstate), dstate[("D", arena.initial)], tuple(sorted(dtrans)),
                        max((t[3] for t in dtrans), default=0), name="D")
    h = ParityAutomaton(alphabet, len(hstate), hstate[("H", arena.initial)], tuple(sorted(htrans)),
                        max((t[3] for t in htrans), default=0), name="H")
    return AutomataPair(d, h, dstate, hstate)


def game_to_automata(g):
    """(D, H) over the edge letters plus ``$``; H simulates D iff Eve wins ``g``."""
    pair = game_to_automata_named(g)
    return pair.d, pair.h
